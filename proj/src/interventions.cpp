#include "tnet/interventions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tnet::interventions {

std::vector<std::size_t> PodAssignment::sizes() const
{
    std::vector<std::size_t> out(podCount, 0);
    for (auto p : pod) ++out.at(p);
    return out;
}

PodAssignment balanced_random_pods(std::size_t nodeCount, std::size_t k, SplitMix64& rng)
{
    if (k == 0) throw std::invalid_argument("pod count must be positive");
    if (k > nodeCount) throw std::invalid_argument("more pods than nodes");
    std::vector<NodeId> order(nodeCount);
    std::iota(order.begin(), order.end(), NodeId{0});
    shuffle(std::span<NodeId>(order), rng);
    PodAssignment out{k, std::vector<std::uint32_t>(nodeCount)};
    for (std::size_t i = 0; i < nodeCount; ++i) out.pod[order[i]] = static_cast<std::uint32_t>(i % k);
    return out;
}

PodAssignment block_pods(std::span<const std::size_t> sizes)
{
    PodAssignment out{sizes.size(), {}};
    for (std::size_t p = 0; p < sizes.size(); ++p) out.pod.insert(out.pod.end(), sizes[p], static_cast<std::uint32_t>(p));
    return out;
}

namespace {

template <class Keep>
TemporalNetwork filter_events(const TemporalNetwork& net, Keep keep)
{
    std::vector<SnapshotGraph> windows;
    windows.reserve(net.window_count());
    for (const auto& g : net.windows()) {
        SnapshotGraph out{g.index, g.windowLength, {}};
        for (const auto& e : g.events) {
            if (keep(g.index, e)) out.events.push_back(e);
        }
        windows.push_back(std::move(out));
    }
    return TemporalNetwork(net.node_count(), std::move(windows), net.weighted());
}

void check_assignment(const TemporalNetwork& net, const PodAssignment& pods)
{
    if (pods.pod.size() != net.node_count()) throw std::invalid_argument("pod assignment does not cover the network");
    for (auto p : pods.pod) {
        if (p >= pods.podCount) throw std::invalid_argument("pod index out of range");
    }
}

} // namespace

std::vector<TemporalNetwork> spatial_pods(const TemporalNetwork& net, const PodAssignment& pods)
{
    check_assignment(net, pods);
    if (pods.podCount == 1) return {net};
    std::vector<TemporalNetwork> out;
    out.reserve(pods.podCount);
    for (std::size_t p = 0; p < pods.podCount; ++p) {
        out.push_back(filter_events(net, [&](std::size_t, const ContactEvent& e) {
            return pods.pod[e.u] == p && pods.pod[e.v] == p;
        }));
    }
    return out;
}

std::vector<TemporalNetwork> spatial_pods(const TemporalNetwork& net, std::size_t k, SplitMix64& rng)
{
    if (k > net.node_count()) throw std::invalid_argument("more pods than nodes");
    return spatial_pods(net, balanced_random_pods(net.node_count(), k, rng));
}

TemporalNetwork intra_pod_events(const TemporalNetwork& net, const PodAssignment& pods)
{
    check_assignment(net, pods);
    return filter_events(net, [&](std::size_t, const ContactEvent& e) { return pods.pod[e.u] == pods.pod[e.v]; });
}

TemporalNetwork temporal_dilation(const TemporalNetwork& net, std::size_t k, BoundaryRule rule)
{
    if (k <= 1) throw std::invalid_argument("dilation factor must be at least 2");
    std::vector<SnapshotGraph> windows;
    windows.reserve(net.window_count() * k);
    for (const auto& g : net.windows()) {
        const Seconds sub = g.windowLength / static_cast<double>(k);
        const std::size_t first = windows.size();
        for (std::size_t j = 0; j < k; ++j) windows.push_back(SnapshotGraph{first + j, sub, {}});

        for (const auto& e : g.events) {
            std::size_t j = std::min(static_cast<std::size_t>(std::floor(e.offset / sub)), k - 1);
            if (rule == BoundaryRule::AssignToStart) {
                const Seconds duration = std::min(e.duration, sub);
                const Seconds offset = std::min(e.offset - static_cast<double>(j) * sub, sub - duration);
                windows[first + j].events.push_back({e.u, e.v, offset, duration});
                continue;
            }
            Seconds start = e.offset;
            const Seconds end = e.offset + e.duration;
            while (start < end) {
                const Seconds lo = static_cast<double>(j) * sub;
                const Seconds hi = j + 1 == k ? g.windowLength : static_cast<double>(j + 1) * sub;
                if (start >= hi && j + 1 < k) {
                    ++j;
                    continue;
                }
                const Seconds stop = std::min(end, hi);
                windows[first + j].events.push_back({e.u, e.v, start - lo, stop - start});
                start = stop;
                ++j;
                if (j == k) break;
            }
        }
    }
    return TemporalNetwork(net.node_count(), std::move(windows), net.weighted());
}

TemporalNetwork alternating_pods(const TemporalNetwork& net, const PodAssignment& pods)
{
    check_assignment(net, pods);
    if (pods.podCount != 2) throw std::invalid_argument("alternation needs exactly two pods");
    return filter_events(net, [&](std::size_t tau, const ContactEvent& e) {
        const auto active = static_cast<std::uint32_t>(tau % 2);
        return pods.pod[e.u] == active && pods.pod[e.v] == active;
    });
}

TemporalNetwork alternating_pods(const TemporalNetwork& net, SplitMix64& rng)
{
    if (net.node_count() < 2) throw std::invalid_argument("alternation needs at least two nodes");
    return alternating_pods(net, balanced_random_pods(net.node_count(), 2, rng));
}

TemporalNetwork random_attendance(const TemporalNetwork& net, double fraction, SplitMix64& rng)
{
    if (!(fraction > 0 && fraction <= 1)) throw std::invalid_argument("attendance fraction must lie in (0, 1]");
    const std::size_t n = net.node_count();
    const auto attending = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));

    std::vector<NodeId> order(n);
    std::vector<char> present(n);
    std::vector<SnapshotGraph> windows;
    windows.reserve(net.window_count());
    for (const auto& g : net.windows()) {
        std::iota(order.begin(), order.end(), NodeId{0});
        for (std::size_t i = 0; i < attending; ++i) {
            const auto j = i + static_cast<std::size_t>(rng.below(n - i));
            std::swap(order[i], order[j]);
        }
        std::fill(present.begin(), present.end(), 0);
        for (std::size_t i = 0; i < attending; ++i) present[order[i]] = 1;

        SnapshotGraph out{g.index, g.windowLength, {}};
        for (const auto& e : g.events) {
            if (present[e.u] && present[e.v]) out.events.push_back(e);
        }
        windows.push_back(std::move(out));
    }
    return TemporalNetwork(n, std::move(windows), net.weighted());
}

} // namespace tnet::interventions
