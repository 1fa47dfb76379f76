#pragma once

#include "tnet/network.hpp"
#include "tnet/rng.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace tnet::engine {

/// How exposure probability is computed at window end.
enum class ExposureMode {
    /// Every infectious contact counts as a maximal exposure:
    /// P = 1 - (1 - pMax)^n, n = distinct infectious neighbours in the window.
    Uniform,
    /// Duration weighted: each interaction k with an infectious node
    /// contributes term_k = min(d_k / dMax, 1) pMax if d_k >= dMin, else
    /// pEpsilon, and P = 1 - prod_k (1 - term_k).
    Weighted,
};

struct PathogenParams {
    double pMax = 0.2;
    Seconds dMin = 300;
    Seconds dMax = 3600;
    double pEpsilon = 0.001;
    int latencyWindows = 1;
    int infectiousWindows = 4;
    ExposureMode mode = ExposureMode::Weighted;

    void validate() const;
};

/// P(S -> E) when every one of n contacts is a maximal exposure.
double exposure_probability_uniform(std::size_t nInfectiousContacts, double pMax);

/// Contribution of one interaction of length d. Sub-threshold interactions
/// (d < dMin) get the epsilon probability instead of a duration.
struct EffectiveDuration {
    bool belowThreshold = false;
    Seconds duration = 0; // meaningful only when !belowThreshold

    /// The per-interaction infection probability this term stands for.
    double term(const PathogenParams& params) const;
};

EffectiveDuration effective_duration(Seconds d, const PathogenParams& params);

/// P(S -> E) for a window in which the node had the given interactions with
/// infectious nodes.
double exposure_probability_weighted(std::span<const Seconds> durations, const PathogenParams& params);

enum class Compartment : std::uint8_t { Susceptible, Exposed, Infectious, Removed };

struct NodeState {
    Compartment state = Compartment::Susceptible;
    /// Windows remaining in the current state; non-zero only while Exposed or
    /// Infectious.
    int clock = 0;

    friend bool operator==(const NodeState&, const NodeState&) = default;
};

struct Exposure {
    std::size_t window = 0;
    NodeId node = 0;
    /// Distinct infectious nodes met in the window.
    std::vector<NodeId> causes;
    std::size_t interactions = 0;
    Seconds totalDuration = 0;

    friend bool operator==(const Exposure&, const Exposure&) = default;
};

using Counts = std::array<std::size_t, 4>; // S, E, I, R

struct EpidemicState {
    std::vector<NodeState> nodes;
    std::size_t window = 0;
    std::vector<Exposure> newExposures;
    /// Record Exposure entries (cause sets) in newExposures.
    bool logExposures = true;

    explicit EpidemicState(std::size_t nodeCount) : nodes(nodeCount) {}

    Counts counts() const;
    /// Put node into Infectious with a full infectious clock.
    void infect(NodeId node, const PathogenParams& params);
};

/// Per-run source of exposure uniforms. The draw for (window, node) is a pure
/// function of the run seed, so the same node-window gets the same uniform
/// under every parameter set (common random numbers) and the result does not
/// depend on how many nodes were evaluated before it.
class DrawSource {
public:
    explicit DrawSource(std::uint64_t runSeed) : seed_(runSeed) {}

    double exposure_uniform(std::size_t window, NodeId node) const noexcept
    {
        return to_unit(derive_seed(seed_, window, node));
    }

    /// Independent stream for seed placement.
    SplitMix64 placement_stream() const noexcept { return SplitMix64(derive_seed(seed_, 0x5eed5eedULL)); }

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

/// Evaluate window `state.window` and advance by one window.
///
/// Phase order is fixed: (1) every Susceptible node that interacted with nodes
/// Infectious at window start is exposed with the mode's probability
/// (inversion: exposed iff u < P); new exposures get clock = latencyWindows;
/// (2) clocks are decremented for all Exposed and Infectious nodes, including
/// those exposed in phase 1; Exposed at 0 become Infectious with
/// clock = infectiousWindows, Infectious at 0 become Removed; (3) window
/// advances. Throws std::out_of_range("timeline exhausted") past the last
/// window and std::invalid_argument in weighted mode on a network without
/// durations. Returns the number of new exposures.
std::size_t step(const TemporalNetwork& net, const PathogenParams& params, EpidemicState& state,
                 const DrawSource& draws);

struct SeedSpec {
    std::size_t count = 1;
    std::vector<std::size_t> placementWindows{0};
    /// Fixed patients zero; when non-empty it replaces the random choice and
    /// `count` is ignored.
    std::vector<NodeId> nodes;

    void validate(std::size_t nodeCount) const;
};

struct Placement {
    NodeId node = 0;
    std::size_t window = 0;
};

/// Choose `count` distinct nodes uniformly at random, each with a placement
/// window drawn uniformly from placementWindows.
std::vector<Placement> place_seeds(const SeedSpec& seeds, std::size_t nodeCount, SplitMix64& rng);

struct RunResult {
    std::size_t nodeCount = 0;
    /// Counts after each window, for every window of the timeline. Windows after
    /// the epidemic died out repeat the final state.
    std::vector<Counts> counts;
    std::vector<std::size_t> newExposures;
    std::size_t windowsSimulated = 0;
    std::vector<Placement> seeds;
    std::vector<Exposure> exposures;
    std::vector<NodeState> finalStates;

    /// (n - S_final) / n
    double final_infected_fraction() const;
    std::vector<double> cumulative_infected_fraction() const;
};

struct RunOptions {
    bool logExposures = false;
    bool stopWhenExtinct = true;
};

/// Seed, then step to the end of the timeline or until no node is Exposed or
/// Infectious and every seed has been placed.
RunResult run(const TemporalNetwork& net, const PathogenParams& params, const SeedSpec& seeds,
              std::uint64_t runSeed, const RunOptions& options = {});

const char* to_string(ExposureMode mode);
const char* to_string(Compartment c);

} // namespace tnet::engine
