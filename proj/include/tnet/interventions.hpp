#pragma once

#include "tnet/network.hpp"
#include "tnet/rng.hpp"

#include <cstdint>
#include <vector>

namespace tnet::interventions {

/// Partition of the node universe into pods.
struct PodAssignment {
    std::size_t podCount = 1;
    std::vector<std::uint32_t> pod; // node -> pod index

    std::vector<std::size_t> sizes() const;
};

/// Uniformly random partition into k pods whose sizes differ by at most one.
PodAssignment balanced_random_pods(std::size_t nodeCount, std::size_t k, SplitMix64& rng);

/// Contiguous blocks: nodes [0, s0) in pod 0, [s0, s0 + s1) in pod 1, ...
PodAssignment block_pods(std::span<const std::size_t> sizes);

/// One network per pod, each keeping only that pod's internal events. Node ids
/// are preserved (every output spans the full universe; out-of-pod nodes are
/// simply inactive). k = 1 returns the input unchanged.
std::vector<TemporalNetwork> spatial_pods(const TemporalNetwork& net, const PodAssignment& pods);
std::vector<TemporalNetwork> spatial_pods(const TemporalNetwork& net, std::size_t k, SplitMix64& rng);

/// Keep only intra-pod events (the union of spatial_pods' outputs).
TemporalNetwork intra_pod_events(const TemporalNetwork& net, const PodAssignment& pods);

/// What to do with events crossing a sub-window boundary under dilation.
enum class BoundaryRule {
    /// Cut at the boundary into pieces; total duration is preserved.
    Split,
    /// Keep the event whole in the sub-window where it starts, moved earlier so
    /// it ends at that sub-window's end (duration capped at the sub-window
    /// length). For sensitivity analysis only.
    AssignToStart,
};

/// Window tau of length W becomes windows k tau .. k tau + k - 1 of length W/k.
/// Events keep their absolute time order. Throws for k <= 1.
TemporalNetwork temporal_dilation(const TemporalNetwork& net, std::size_t k,
                                  BoundaryRule rule = BoundaryRule::Split);

/// Window tau keeps only the events internal to pod (tau mod 2). `pods` must
/// have podCount == 2.
TemporalNetwork alternating_pods(const TemporalNetwork& net, const PodAssignment& pods);
/// Balanced random 2-partition, then alternate.
TemporalNetwork alternating_pods(const TemporalNetwork& net, SplitMix64& rng);

/// Every window an independent uniform subset of floor(fraction n) nodes
/// attends; only events with both endpoints attending survive.
TemporalNetwork random_attendance(const TemporalNetwork& net, double fraction, SplitMix64& rng);

} // namespace tnet::interventions
