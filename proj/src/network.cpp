#include "tnet/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

namespace tnet {

bool canonical_less(const ContactEvent& a, const ContactEvent& b) noexcept
{
    return std::tie(a.u, a.v, a.offset, a.duration) < std::tie(b.u, b.v, b.offset, b.duration);
}

void canonicalize(SnapshotGraph& g)
{
    for (auto& e : g.events) {
        if (e.v < e.u) std::swap(e.u, e.v);
    }
    std::sort(g.events.begin(), g.events.end(), canonical_less);
}

TemporalNetwork::TemporalNetwork(std::size_t nodeCount, std::vector<SnapshotGraph> windows, bool weighted)
    : nodeCount_(nodeCount), windows_(std::move(windows)), weighted_(weighted)
{
    if (nodeCount_ == 0) throw std::invalid_argument("node count must be positive");
    for (std::size_t tau = 0; tau < windows_.size(); ++tau) {
        auto& g = windows_[tau];
        if (g.index != tau) {
            throw std::invalid_argument("window indices must be contiguous from 0 (window " + std::to_string(tau) +
                                        " has index " + std::to_string(g.index) + ")");
        }
        if (!(g.windowLength > 0)) throw std::invalid_argument("window length must be positive");
        canonicalize(g);
        for (const auto& e : g.events) {
            if (e.u == e.v) throw std::invalid_argument("self loop in window " + std::to_string(tau));
            if (e.v >= nodeCount_) {
                throw std::invalid_argument("event endpoint " + std::to_string(e.v) + " outside node universe of " +
                                            std::to_string(nodeCount_));
            }
            if (!(e.duration > 0)) throw std::invalid_argument("event duration must be positive");
            if (e.offset < 0 || e.offset + e.duration > g.windowLength) {
                throw std::invalid_argument("event exceeds window " + std::to_string(tau));
            }
        }
    }
}

TemporalNetwork TemporalNetwork::empty(std::size_t nodeCount, std::size_t windowCount, Seconds windowLength,
                                       bool weighted)
{
    std::vector<SnapshotGraph> windows(windowCount);
    for (std::size_t tau = 0; tau < windowCount; ++tau) {
        windows[tau].index = tau;
        windows[tau].windowLength = windowLength;
    }
    return TemporalNetwork(nodeCount, std::move(windows), weighted);
}

std::size_t TemporalNetwork::event_count() const noexcept
{
    std::size_t total = 0;
    for (const auto& g : windows_) total += g.events.size();
    return total;
}

ActivityPotential activity_potential(const TemporalNetwork& net, std::size_t groupSize)
{
    if (net.window_count() == 0) throw std::invalid_argument("empty network");
    if (groupSize == 0) throw std::invalid_argument("group size must be positive");

    ActivityPotential out;
    out.groupSize = groupSize;
    out.groupCount = (net.window_count() + groupSize - 1) / groupSize;
    out.perNode.assign(net.node_count(), 0);

    // last group index in which each node was seen active
    std::vector<std::size_t> lastGroup(net.node_count(), static_cast<std::size_t>(-1));
    for (const auto& g : net.windows()) {
        const std::size_t group = g.index / groupSize;
        for (const auto& e : g.events) {
            for (NodeId x : {e.u, e.v}) {
                if (lastGroup[x] != group) {
                    lastGroup[x] = group;
                    ++out.perNode[x];
                }
            }
        }
    }
    out.histogram.assign(out.groupCount + 1, 0);
    for (auto a : out.perNode) ++out.histogram[a];
    return out;
}

std::vector<double> density_series(const TemporalNetwork& net)
{
    const std::size_t n = net.node_count();
    if (n < 2) throw std::invalid_argument("degenerate node universe");
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);

    std::vector<double> out;
    out.reserve(net.window_count());
    for (const auto& g : net.windows()) {
        // events are sorted by (u, v, ...) so equal pairs are adjacent
        std::size_t distinct = 0;
        for (std::size_t i = 0; i < g.events.size(); ++i) {
            if (i == 0 || g.events[i].u != g.events[i - 1].u || g.events[i].v != g.events[i - 1].v) ++distinct;
        }
        out.push_back(static_cast<double>(distinct) / pairs);
    }
    return out;
}

std::vector<std::size_t> degree_sequence(const SnapshotGraph& g, std::size_t nodeCount)
{
    std::vector<std::size_t> degree(nodeCount, 0);
    for (std::size_t i = 0; i < g.events.size(); ++i) {
        const auto& e = g.events[i];
        if (i > 0 && e.u == g.events[i - 1].u && e.v == g.events[i - 1].v) continue;
        ++degree.at(e.u);
        ++degree.at(e.v);
    }
    std::sort(degree.begin(), degree.end());
    return degree;
}

std::vector<Seconds> total_contact_duration(const TemporalNetwork& net)
{
    std::vector<Seconds> total(net.node_count(), 0.0);
    for (const auto& g : net.windows()) {
        for (const auto& e : g.events) {
            total[e.u] += e.duration;
            total[e.v] += e.duration;
        }
    }
    return total;
}

std::vector<TimedEvent> absolute_events(const TemporalNetwork& net)
{
    std::vector<TimedEvent> out;
    out.reserve(net.event_count());
    Seconds windowStart = 0;
    for (const auto& g : net.windows()) {
        for (const auto& e : g.events) out.push_back({windowStart + e.offset, e});
        windowStart += g.windowLength;
    }
    return out;
}

namespace {

void require_same_timeline(std::span<const TemporalNetwork> parts)
{
    if (parts.empty()) throw std::invalid_argument("no networks to combine");
    const auto& first = parts.front();
    for (const auto& p : parts) {
        if (p.window_count() != first.window_count()) throw std::invalid_argument("window counts differ");
        for (std::size_t tau = 0; tau < p.window_count(); ++tau) {
            if (p.window(tau).windowLength != first.window(tau).windowLength) {
                throw std::invalid_argument("window lengths differ");
            }
        }
    }
}

std::vector<SnapshotGraph> blank_windows(const TemporalNetwork& shape)
{
    std::vector<SnapshotGraph> windows(shape.window_count());
    for (std::size_t tau = 0; tau < windows.size(); ++tau) {
        windows[tau].index = tau;
        windows[tau].windowLength = shape.window(tau).windowLength;
    }
    return windows;
}

} // namespace

TemporalNetwork merge(std::span<const TemporalNetwork> parts)
{
    require_same_timeline(parts);
    const std::size_t n = parts.front().node_count();
    bool weighted = true;
    auto windows = blank_windows(parts.front());
    for (const auto& p : parts) {
        if (p.node_count() != n) throw std::invalid_argument("node universes differ");
        weighted = weighted && p.weighted();
        for (std::size_t tau = 0; tau < windows.size(); ++tau) {
            const auto& src = p.window(tau).events;
            windows[tau].events.insert(windows[tau].events.end(), src.begin(), src.end());
        }
    }
    return TemporalNetwork(n, std::move(windows), weighted);
}

TemporalNetwork disjoint_union(std::span<const TemporalNetwork> parts)
{
    require_same_timeline(parts);
    bool weighted = true;
    auto windows = blank_windows(parts.front());
    std::size_t shift = 0;
    for (const auto& p : parts) {
        weighted = weighted && p.weighted();
        for (std::size_t tau = 0; tau < windows.size(); ++tau) {
            for (auto e : p.window(tau).events) {
                e.u += static_cast<NodeId>(shift);
                e.v += static_cast<NodeId>(shift);
                windows[tau].events.push_back(e);
            }
        }
        shift += p.node_count();
    }
    return TemporalNetwork(shift, std::move(windows), weighted);
}

TemporalNetwork merge_pair_events(const TemporalNetwork& net)
{
    auto windows = blank_windows(net);
    for (std::size_t tau = 0; tau < windows.size(); ++tau) {
        const auto& src = net.window(tau).events;
        auto& dst = windows[tau].events;
        for (const auto& e : src) {
            if (!dst.empty() && dst.back().u == e.u && dst.back().v == e.v) {
                dst.back().duration += e.duration;
            } else {
                dst.push_back(e);
            }
        }
        // the merged event must still fit inside the window
        for (auto& e : dst) {
            e.duration = std::min(e.duration, windows[tau].windowLength);
            e.offset = std::min(e.offset, windows[tau].windowLength - e.duration);
        }
    }
    return TemporalNetwork(net.node_count(), std::move(windows), net.weighted());
}

} // namespace tnet
