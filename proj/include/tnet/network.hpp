#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tnet {

using NodeId = std::uint32_t;

/// Durations and offsets are seconds.
using Seconds = double;

/// One undirected interaction inside a window. Weight is the meeting duration.
struct ContactEvent {
    NodeId u = 0;
    NodeId v = 0;
    Seconds offset = 0;   // from window start
    Seconds duration = 0; // > 0

    friend bool operator==(const ContactEvent&, const ContactEvent&) = default;
};

/// Ordering used inside a snapshot: (u, v, offset, duration).
bool canonical_less(const ContactEvent& a, const ContactEvent& b) noexcept;

struct SnapshotGraph {
    std::size_t index = 0;
    Seconds windowLength = 0;
    std::vector<ContactEvent> events;

    friend bool operator==(const SnapshotGraph&, const SnapshotGraph&) = default;
};

/// Swap endpoints so u < v and sort events canonically. Idempotent.
void canonicalize(SnapshotGraph& g);

/// Ordered sequence of snapshot graphs over a fixed node universe [0, nodeCount).
///
/// Construction canonicalizes every window and validates the invariants
/// (contiguous indices, endpoints in range, no self loops, positive durations,
/// events inside their window). Immutable afterwards, so one instance can be
/// shared read-only across simulation workers.
class TemporalNetwork {
public:
    /// `weighted` records whether event durations carry meaning (true for
    /// ingested contact data, false for generated random networks).
    TemporalNetwork(std::size_t nodeCount, std::vector<SnapshotGraph> windows, bool weighted = true);

    /// Convenience: L empty windows of equal length.
    static TemporalNetwork empty(std::size_t nodeCount, std::size_t windowCount, Seconds windowLength,
                                 bool weighted = true);

    std::size_t node_count() const noexcept { return nodeCount_; }
    std::size_t window_count() const noexcept { return windows_.size(); }
    bool weighted() const noexcept { return weighted_; }

    const SnapshotGraph& window(std::size_t tau) const { return windows_.at(tau); }
    std::span<const SnapshotGraph> windows() const noexcept { return windows_; }

    std::size_t event_count() const noexcept;

    friend bool operator==(const TemporalNetwork&, const TemporalNetwork&) = default;

private:
    std::size_t nodeCount_;
    std::vector<SnapshotGraph> windows_;
    bool weighted_;
};

/// Activity of every node over consecutive groups of `groupSize` windows, and
/// the histogram of nodes by activity.
struct ActivityPotential {
    std::size_t groupSize = 1;
    std::size_t groupCount = 0;
    /// Per node: number of window groups in which it has at least one event.
    std::vector<std::size_t> perNode;
    /// histogram[a] = number of nodes with activity a; size groupCount + 1.
    std::vector<std::size_t> histogram;

    friend bool operator==(const ActivityPotential&, const ActivityPotential&) = default;
};

/// The final group may be partial. Throws std::invalid_argument("empty network")
/// for a network without windows.
ActivityPotential activity_potential(const TemporalNetwork& net, std::size_t groupSize);

/// Distinct active pairs per window over C(n, 2). Requires n >= 2.
std::vector<double> density_series(const TemporalNetwork& net);

/// Sorted distinct-neighbour counts for every node of the universe.
std::vector<std::size_t> degree_sequence(const SnapshotGraph& g, std::size_t nodeCount);

/// Per-node sum of event durations over the whole timeline.
std::vector<Seconds> total_contact_duration(const TemporalNetwork& net);

/// Events of each window, windows concatenated, with absolute start times
/// (sum of preceding window lengths + offset). Ordered by window, then canonical.
struct TimedEvent {
    Seconds start = 0;
    ContactEvent event;
};
std::vector<TimedEvent> absolute_events(const TemporalNetwork& net);

/// Merge several networks on the same universe and timeline into one
/// (event multiset union). Window lengths must agree.
TemporalNetwork merge(std::span<const TemporalNetwork> parts);

/// Node-disjoint union: part i's nodes are shifted by the sizes of parts 0..i-1.
/// All parts must have the same window count and window lengths.
TemporalNetwork disjoint_union(std::span<const TemporalNetwork> parts);

/// Collapse multiple events of the same pair in a window into one event at the
/// first offset carrying the summed duration (shifted back if it would overrun
/// the window). Lossy; off by default everywhere.
TemporalNetwork merge_pair_events(const TemporalNetwork& net);

} // namespace tnet
