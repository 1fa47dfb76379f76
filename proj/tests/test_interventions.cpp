#include "tnet/interventions.hpp"
#include "tnet/netgen.hpp"
#include "tnet/network_io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

using namespace tnet;
using namespace tnet::interventions;

namespace {

constexpr Seconds W = 86400;

TemporalNetwork fixture()
{
    return read_network(std::filesystem::path(TNET_TEST_DATA) / "cns10x28");
}

TemporalNetwork complete(std::size_t n, std::size_t L)
{
    std::vector<SnapshotGraph> windows(L);
    for (std::size_t t = 0; t < L; ++t) {
        windows[t].index = t;
        windows[t].windowLength = W;
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = u + 1; v < n; ++v) windows[t].events.push_back({u, v, 100, 600});
        }
    }
    return TemporalNetwork(n, std::move(windows));
}

TemporalNetwork generated(std::size_t n, std::size_t L, std::uint64_t seed)
{
    netgen::GenSpec spec;
    spec.nodeCount = n;
    spec.windowCount = L;
    spec.params = netgen::from_window_density(0.1, 0.2, 288);
    spec.seed = seed;
    spec.burnIn = 500;
    return netgen::generate(spec);
}

std::multiset<std::tuple<std::size_t, NodeId, NodeId, Seconds, Seconds>> event_set(const TemporalNetwork& net)
{
    std::multiset<std::tuple<std::size_t, NodeId, NodeId, Seconds, Seconds>> out;
    for (const auto& g : net.windows()) {
        for (const auto& e : g.events) out.insert({g.index, e.u, e.v, e.offset, e.duration});
    }
    return out;
}

bool subset_of(const TemporalNetwork& part, const TemporalNetwork& whole)
{
    const auto a = event_set(part);
    const auto b = event_set(whole);
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Per pair, absolute-time intervals with touching pieces coalesced.
std::map<std::pair<NodeId, NodeId>, std::vector<std::pair<Seconds, Seconds>>> coalesced(const TemporalNetwork& net)
{
    std::map<std::pair<NodeId, NodeId>, std::vector<std::pair<Seconds, Seconds>>> out;
    for (const auto& te : absolute_events(net)) {
        out[{te.event.u, te.event.v}].push_back({te.start, te.start + te.event.duration});
    }
    for (auto& [pair, v] : out) {
        std::sort(v.begin(), v.end());
        std::vector<std::pair<Seconds, Seconds>> merged;
        for (const auto& iv : v) {
            if (!merged.empty() && iv.first <= merged.back().second) {
                merged.back().second = std::max(merged.back().second, iv.second);
            } else {
                merged.push_back(iv);
            }
        }
        v = std::move(merged);
    }
    return out;
}

} // namespace

TEST(Pods, BalancedPartition)
{
    SplitMix64 rng(1);
    for (std::size_t k : {1, 2, 3, 7, 10}) {
        const auto pods = balanced_random_pods(103, k, rng);
        const auto sizes = pods.sizes();
        ASSERT_EQ(sizes.size(), k);
        EXPECT_LE(*std::max_element(sizes.begin(), sizes.end()) - *std::min_element(sizes.begin(), sizes.end()), 1u);
    }
    EXPECT_THROW(balanced_random_pods(3, 4, rng), std::invalid_argument);
    const std::vector<std::size_t> sizes{2, 3};
    const auto block = block_pods(sizes);
    EXPECT_EQ(block.pod, (std::vector<std::uint32_t>{0, 0, 1, 1, 1}));
}

TEST(SpatialPods, Examples)
{
    const auto net = complete(4, 3);
    SplitMix64 rng(2);
    const auto one = spatial_pods(net, 1, rng);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], net);

    const auto singletons = spatial_pods(net, 4, rng);
    for (const auto& p : singletons) EXPECT_EQ(p.event_count(), 0u);

    const auto two = spatial_pods(net, 2, rng);
    ASSERT_EQ(two.size(), 2u);
    std::set<std::pair<NodeId, NodeId>> pairs;
    for (const auto& p : two) {
        for (const auto& e : p.window(0).events) pairs.insert({e.u, e.v});
    }
    EXPECT_EQ(pairs.size(), 2u);
    EXPECT_THROW(spatial_pods(net, 5, rng), std::invalid_argument);
}

TEST(SpatialPods, NoInterPodEventSurvives)
{
    const auto net = generated(40, 10, 3);
    SplitMix64 rng(4);
    const auto assignment = balanced_random_pods(40, 3, rng);
    const auto parts = spatial_pods(net, assignment);
    const auto combined = merge(parts);
    EXPECT_TRUE(subset_of(combined, net));
    EXPECT_EQ(combined, intra_pod_events(net, assignment));
    for (std::size_t p = 0; p < parts.size(); ++p) {
        for (const auto& g : parts[p].windows()) {
            for (const auto& e : g.events) {
                EXPECT_EQ(assignment.pod[e.u], p);
                EXPECT_EQ(assignment.pod[e.v], p);
            }
        }
    }
}

TEST(Dilation, Examples)
{
    std::vector<SnapshotGraph> w(1);
    w[0].windowLength = W;
    w[0].events = {{0, 1, 0, W / 4}, {1, 2, W / 2 - 10, 20}};
    const TemporalNetwork net(3, std::move(w));
    const auto d = temporal_dilation(net, 2);
    ASSERT_EQ(d.window_count(), 2u);
    EXPECT_EQ(d.window(0).windowLength, W / 2);
    EXPECT_EQ(d.window(0).events,
              (std::vector<ContactEvent>{{0, 1, 0, W / 4}, {1, 2, W / 2 - 10, 10}}));
    EXPECT_EQ(d.window(1).events, (std::vector<ContactEvent>{{1, 2, 0, 10}}));

    const auto whole = temporal_dilation(net, 2, BoundaryRule::AssignToStart);
    EXPECT_EQ(whole.window(0).events,
              (std::vector<ContactEvent>{{0, 1, 0, W / 4}, {1, 2, W / 2 - 20, 20}}));
    EXPECT_TRUE(whole.window(1).events.empty());

    EXPECT_THROW(temporal_dilation(net, 1), std::invalid_argument);
    EXPECT_THROW(temporal_dilation(net, 0), std::invalid_argument);
}

TEST(Dilation, SplitsAcrossSeveralSubWindows)
{
    std::vector<SnapshotGraph> w(1);
    w[0].windowLength = W;
    w[0].events = {{0, 1, 1000, W - 2000}};
    const TemporalNetwork net(2, std::move(w));
    const auto d = temporal_dilation(net, 3);
    ASSERT_EQ(d.window_count(), 3u);
    EXPECT_EQ(d.window(0).events, (std::vector<ContactEvent>{{0, 1, 1000, W / 3 - 1000}}));
    EXPECT_EQ(d.window(1).events, (std::vector<ContactEvent>{{0, 1, 0, W / 3}}));
    EXPECT_EQ(d.window(2).events, (std::vector<ContactEvent>{{0, 1, 0, W / 3 - 1000}}));
}

TEST(Dilation, PreservesActivityAndOrder)
{
    const auto net = fixture();
    const auto base = activity_potential(net, 1);
    for (std::size_t k : {2, 3}) {
        const auto d = temporal_dilation(net, k);
        EXPECT_EQ(d.window_count(), k * net.window_count());
        EXPECT_EQ(total_contact_duration(d), total_contact_duration(net)) << k;
        const auto grouped = activity_potential(d, k);
        EXPECT_EQ(grouped.perNode, base.perNode);
        EXPECT_EQ(grouped.histogram, base.histogram);
        EXPECT_EQ(coalesced(d), coalesced(net));
    }
}

TEST(Dilation, SubWindowPairsComeFromParentWindow)
{
    const auto net = fixture();
    const std::size_t k = 3;
    const auto d = temporal_dilation(net, k);
    for (const auto& g : d.windows()) {
        std::set<std::pair<NodeId, NodeId>> parent;
        for (const auto& e : net.window(g.index / k).events) parent.insert({e.u, e.v});
        for (const auto& e : g.events) EXPECT_TRUE(parent.count({e.u, e.v}));
    }
}

TEST(Alternation, Examples)
{
    // a pod-0 pair meeting only on odd windows never survives
    std::vector<SnapshotGraph> w(4);
    for (std::size_t t = 0; t < 4; ++t) {
        w[t].index = t;
        w[t].windowLength = W;
        if (t % 2 == 1) w[t].events.push_back({0, 1, 0, 60});
    }
    const TemporalNetwork net(4, std::move(w));
    const std::vector<std::size_t> sizes{2, 2};
    EXPECT_EQ(alternating_pods(net, block_pods(sizes)).event_count(), 0u);

    // every node in pod 0, pod 1 empty: odd windows become empty
    const auto full = complete(6, 6);
    PodAssignment single{2, std::vector<std::uint32_t>(6, 0)};
    const auto alt = alternating_pods(full, single);
    for (const auto& g : alt.windows()) {
        EXPECT_EQ(g.events.size(), g.index % 2 == 0 ? 15u : 0u);
    }
    PodAssignment three{3, std::vector<std::uint32_t>(6, 0)};
    EXPECT_THROW(alternating_pods(full, three), std::invalid_argument);
}

TEST(Alternation, MatchesBruteForceRecount)
{
    const auto net = generated(100, 20, 5);
    SplitMix64 a(6), b(6);
    const auto pods = balanced_random_pods(100, 2, a);
    const auto alt = alternating_pods(net, b);
    std::size_t expected = 0;
    for (std::size_t t = 0; t < net.window_count(); ++t) {
        for (const auto& e : net.window(t).events) {
            if (pods.pod[e.u] == t % 2 && pods.pod[e.v] == t % 2) ++expected;
        }
    }
    EXPECT_GT(expected, 0u);
    EXPECT_EQ(alt.event_count(), expected);
    EXPECT_TRUE(subset_of(alt, net));
}

TEST(Attendance, Examples)
{
    const auto net = complete(100, 5);
    SplitMix64 rng(7);
    EXPECT_EQ(random_attendance(net, 1.0, rng), net);
    EXPECT_EQ(random_attendance(net, 0.015, rng).event_count(), 0u);
    const auto half = random_attendance(net, 0.5, rng);
    for (const auto& g : half.windows()) EXPECT_EQ(g.events.size(), 50u * 49u / 2u);
    EXPECT_TRUE(subset_of(half, net));
    EXPECT_THROW(random_attendance(net, 0.0, rng), std::invalid_argument);
    EXPECT_THROW(random_attendance(net, 1.5, rng), std::invalid_argument);
}

TEST(Attendance, IndependentSubsetsPerWindow)
{
    const auto net = complete(20, 50);
    SplitMix64 rng(8);
    const auto att = random_attendance(net, 0.5, rng);
    std::set<std::set<NodeId>> subsets;
    for (const auto& g : att.windows()) {
        std::set<NodeId> s;
        for (const auto& e : g.events) {
            s.insert(e.u);
            s.insert(e.v);
        }
        EXPECT_EQ(s.size(), 10u);
        subsets.insert(s);
    }
    EXPECT_GT(subsets.size(), 45u);
}
