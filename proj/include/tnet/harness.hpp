#pragma once

#include "tnet/engine.hpp"
#include "tnet/ingest.hpp"
#include "tnet/interventions.hpp"
#include "tnet/network.hpp"
#include "tnet/stats.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tnet::harness {

/// Random temporal networks from the Markov edge generator. Iteration i runs
/// on pool network i mod poolSize; pool members are seeded from `seed`, so
/// scenarios sharing a source share their networks.
struct GeneratedSource {
    std::size_t nodeCount = 200;
    std::size_t windowCount = 500;
    /// Fraction of pairs meeting at least once per window.
    double windowDensity = 0.15;
    double pVanish = 0.2;
    std::size_t stepsPerWindow = 288;
    std::uint64_t burnIn = 2000;
    std::size_t poolSize = 10;
    std::uint64_t seed = 1;
};

/// Synthetic campus proximity scans pushed through the ingest pipeline.
struct SyntheticCnsSource {
    ingest::SyntheticCnsConfig cns;
    ingest::IngestConfig ingest;
};

/// A proximity scan CSV on disk.
struct ScanFileSource {
    std::filesystem::path path;
    ingest::IngestConfig ingest;
};

/// A network directory in the canonical events format.
struct CanonicalDirSource {
    std::filesystem::path dir;
};

using NetworkSource = std::variant<GeneratedSource, SyntheticCnsSource, ScanFileSource, CanonicalDirSource>;

enum class PodMode {
    /// Partition one network and drop inter-pod events.
    Filter,
    /// Build the pods from independent smaller generated networks.
    Regenerate,
};

struct SpatialPods {
    std::size_t k = 2;
    PodMode mode = PodMode::Filter;
};

struct Dilate {
    std::size_t k = 2;
    interventions::BoundaryRule rule = interventions::BoundaryRule::Split;
};

struct Alternate {
    PodMode mode = PodMode::Filter;
};

struct Attendance {
    double fraction = 0.5;
};

using Intervention = std::variant<SpatialPods, Dilate, Alternate, Attendance>;

/// dMin values start, start + step, ... up to end (seconds).
struct SweepSpec {
    Seconds start = 300;
    Seconds end = 7200;
    Seconds step = 300;

    void validate() const;
    std::vector<Seconds> values() const;
};

struct Scenario {
    std::string name;
    std::string description;
    NetworkSource source;
    /// Applied in order to the source network of every iteration.
    std::vector<Intervention> interventions;
    engine::PathogenParams pathogen;
    std::optional<SweepSpec> sweep;
    engine::SeedSpec seeds;
    std::size_t iterations = 200;
    std::uint64_t masterSeed = 1;

    void validate() const;
};

/// Canonical JSON rendering of a scenario and its FNV-1a hash.
std::string scenario_json(const Scenario& s);
std::uint64_t scenario_hash(const Scenario& s);

/// Base networks shared across scenarios in one process. Thread-safe.
class NetworkCache {
public:
    /// Pool member `index` of a generated source resized to `nodeCount` nodes.
    std::shared_ptr<const TemporalNetwork> generated(const GeneratedSource& src, std::size_t nodeCount,
                                                     std::size_t index);
    /// The single network behind a non-generated source.
    std::shared_ptr<const TemporalNetwork> fixed(const NetworkSource& src);
    void clear();

private:
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const TemporalNetwork>> entries_;
};

/// The network iteration `iteration` of a scenario runs on, after every
/// intervention. A pure function of (scenario, iteration).
std::shared_ptr<const TemporalNetwork> iteration_network(const Scenario& s, std::size_t iteration,
                                                         NetworkCache& cache);

/// Materialize every base network the scenario's iterations will request.
void warm_cache(const Scenario& s, NetworkCache& cache);

/// Seed of the engine run of iteration i; also shared by every sweep cell.
std::uint64_t iteration_seed(const Scenario& s, std::size_t iteration);

struct Aggregate {
    std::size_t nodeCount = 0;
    std::size_t windowCount = 0;
    std::size_t iterations = 0;
    /// Per window, mean and 95% half-width of S, E, I, R over iterations.
    std::vector<std::array<double, 4>> mean;
    std::vector<std::array<double, 4>> ci95;
    /// Final infected fraction of every iteration, in iteration order.
    std::vector<double> finals;
    double meanFinal = 0;
    double seFinal = 0;
};

struct SweepCell {
    Seconds dMin = 0;
    std::vector<double> finals;
    stats::BoxStats box;
};

struct SweepResult {
    std::vector<SweepCell> cells;
};

struct RunConfig {
    /// OpenMP threads; <= 0 uses the OpenMP default, 1 runs serially.
    int workers = 0;
    NetworkCache* cache = nullptr;
};

/// Monte Carlo over `iterations` runs. Results are identical for any worker
/// count: integer count sums make the reduction order-free.
Aggregate run_scenario(const Scenario& s, const RunConfig& config = {});

/// One run_scenario per dMin value. Every cell sees the same networks and
/// exposure uniforms (common random numbers).
SweepResult run_sweep(const Scenario& s, const RunConfig& config = {});

enum class Scale { Desk, Full };

/// Knobs shared by the built-in experiments.
struct ScaleKnobs {
    std::size_t nodeCount = 200;
    std::size_t windowCount = 500;
    std::size_t iterations = 200;
    std::size_t cnsParticipants = 200;
    std::size_t cnsDays = 28;

    static ScaleKnobs of(Scale scale);
};

std::vector<Scenario> builtin_scenarios(const ScaleKnobs& knobs = {});
std::optional<Scenario> find_scenario(const std::string& name, const ScaleKnobs& knobs = {});

void write_curves(const std::filesystem::path& file, const Aggregate& a);
void write_finals(const std::filesystem::path& file, const std::vector<double>& finals);
void write_sweep(const std::filesystem::path& file, const SweepResult& r);
/// meta.json: scenario, derived seeds, code version, scenario hash, summary.
void write_meta(const std::filesystem::path& file, const Scenario& s, const Aggregate* a, const SweepResult* r);

/// Engine run file: a `# {json}` header line echoing parameters and seeds,
/// then `window,S,E,I,R,new_exposures`.
void write_run(std::ostream& out, const engine::RunResult& r, const engine::PathogenParams& params,
               const engine::SeedSpec& seeds, std::uint64_t runSeed);
/// `window,node,n_infectious_contacts,total_duration_sec`
void write_exposure_log(std::ostream& out, const engine::RunResult& r);

std::string version();

} // namespace tnet::harness
