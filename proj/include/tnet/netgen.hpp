#pragma once

#include "tnet/network.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace tnet::netgen {

/// Per-pair two-state Markov chain, one transition per step.
///
/// The chain's stationary occupancy is pAppear / (pAppear + pVanish). With
/// stepsPerWindow > 1 the fraction of pairs that meet at least once in a
/// window (what density_series measures) is larger than that occupancy; see
/// window_density().
struct MarkovEdgeParams {
    double pAppear = 0;
    double pVanish = 0;
    std::size_t stepsPerWindow = 288;
    /// Stationary per-step occupancy of the chain.
    double targetDensity = 0;

    double stationary_occupancy() const;
    /// Probability that a pair is on for at least one step of a window, under
    /// the stationary chain: 1 - (1 - pi) (1 - pAppear)^(S - 1).
    double window_density() const;
    void validate() const;
};

/// pAppear = d pVanish / (1 - d), giving stationary occupancy d per step.
/// Throws std::invalid_argument("infeasible parameters") when pAppear >= 1.
MarkovEdgeParams from_target_density(double targetDensity, double pVanish, std::size_t stepsPerWindow);

/// Solve for pAppear so that window_density() equals `windowDensity` given
/// pVanish and the step resolution. Identical to from_target_density when
/// stepsPerWindow == 1.
MarkovEdgeParams from_window_density(double windowDensity, double pVanish, std::size_t stepsPerWindow);

struct GenSpec {
    std::size_t nodeCount = 0;
    std::size_t windowCount = 1;
    MarkovEdgeParams params;
    std::uint64_t seed = 0;
    /// Steps simulated and discarded before window 0.
    std::uint64_t burnIn = 0;
    Seconds windowLength = 86400;
    /// Memory guard on the expected number of emitted events.
    double maxExpectedEvents = 2e8;

    Seconds step_duration() const { return windowLength / static_cast<double>(params.stepsPerWindow); }
    void validate() const;
};

/// Expected number of ContactEvents (on-runs clipped to windows) of a spec.
double expected_event_count(const GenSpec& spec);

/// Diagnostics from the instrumented path.
struct GenerationStats {
    /// On-steps inside [0, S L) counted from the raw chain runs, before any
    /// splitting at window boundaries.
    std::uint64_t onSteps = 0;
    std::uint64_t transitions = 0;
};

/// Events produced by one pair's chain, tagged by window.
struct PairEvent {
    std::uint32_t window = 0;
    ContactEvent event;
};

/// Index of unordered pair (u, v), u < v, in row-major upper-triangle order.
std::uint64_t pair_index(NodeId u, NodeId v, std::size_t nodeCount) noexcept;

/// Run one pair's chain and append its window-clipped on-runs to `out`.
/// Deterministic in (spec.seed, pair index).
void simulate_pair(const GenSpec& spec, NodeId u, NodeId v, std::vector<PairEvent>& out,
                   GenerationStats* stats = nullptr);

/// Parallel generator (OpenMP over node rows). `threads` <= 0 uses the OpenMP
/// default. Output is byte-identical to generate_serial for any thread count.
TemporalNetwork generate(const GenSpec& spec, int threads = 0, GenerationStats* stats = nullptr);

/// Serial reference generator.
TemporalNetwork generate_serial(const GenSpec& spec, GenerationStats* stats = nullptr);

struct KsResult {
    double statistic = 0;
    double pValue = 1;
};

/// Survival function of the asymptotic Kolmogorov distribution,
/// Q(lambda) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);

/// Two-sample Kolmogorov-Smirnov test on sorted samples. The p-value uses the
/// asymptotic distribution at lambda = sqrt(n_eff) D with n_eff = nm / (n + m).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct PairRejection {
    std::size_t first = 0;
    std::size_t second = 0;
    KsResult ks;
};

struct HomogeneityReport {
    std::size_t pairsTested = 0;
    double alpha = 0.05;
    std::vector<PairRejection> rejections;
    std::vector<KsResult> all; // row-major over pairs (i < j)
};

/// Pooled per-window degree sequence of a network, sorted.
std::vector<double> pooled_degrees(const TemporalNetwork& net);

/// KS test between every pair of networks on their pooled degree sequences.
HomogeneityReport validate_homogeneity(std::span<const TemporalNetwork> nets, double alpha = 0.05);

} // namespace tnet::netgen
