#include "tnet/network.hpp"
#include "tnet/network_io.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <vector>

using namespace tnet;

namespace {

SnapshotGraph window(std::size_t index, std::vector<ContactEvent> events, Seconds length = 86400)
{
    return SnapshotGraph{index, length, std::move(events)};
}

TemporalNetwork fixture_10x28()
{
    return read_network(std::filesystem::path(TNET_TEST_DATA) / "cns10x28");
}

} // namespace

TEST(Network, RejectsInvalidEvents)
{
    EXPECT_THROW(TemporalNetwork(0, {}), std::invalid_argument);
    EXPECT_THROW(TemporalNetwork(3, {window(0, {{1, 1, 0, 10}})}), std::invalid_argument);
    EXPECT_THROW(TemporalNetwork(3, {window(0, {{0, 3, 0, 10}})}), std::invalid_argument);
    EXPECT_THROW(TemporalNetwork(3, {window(0, {{0, 1, 0, 0}})}), std::invalid_argument);
    EXPECT_THROW(TemporalNetwork(3, {window(0, {{0, 1, 86000, 500}})}), std::invalid_argument);
    EXPECT_THROW(TemporalNetwork(3, {window(1, {})}), std::invalid_argument);
}

TEST(Network, CanonicalizesAndIsIdempotent)
{
    SnapshotGraph g = window(0, {{2, 0, 50, 10}, {1, 0, 5, 10}, {0, 2, 10, 10}});
    canonicalize(g);
    const std::vector<ContactEvent> expected{{0, 1, 5, 10}, {0, 2, 10, 10}, {0, 2, 50, 10}};
    EXPECT_EQ(g.events, expected);
    auto again = g;
    canonicalize(again);
    EXPECT_EQ(again, g);
}

TEST(Network, ActivityPotentialSmallCases)
{
    const auto single = TemporalNetwork::empty(1, 5, 86400);
    const auto a1 = activity_potential(single, 2);
    EXPECT_EQ(a1.histogram[0], 1u);
    EXPECT_EQ(a1.groupCount, 3u);

    const TemporalNetwork pair(2, {window(0, {{0, 1, 0, 60}}), window(1, {}), window(2, {{0, 1, 0, 60}}), window(3, {})});
    const auto a = activity_potential(pair, 1);
    EXPECT_EQ(a.perNode, (std::vector<std::size_t>{2, 2}));
    EXPECT_EQ(a.histogram[2], 2u);

    EXPECT_THROW(activity_potential(TemporalNetwork(2, {}), 1), std::invalid_argument);
}

TEST(Network, ActivityPotentialMatchesRecountOnCampusFixture)
{
    // per-node activity and histograms from a brute-force recount of the fixture
    const auto net = fixture_10x28();
    ASSERT_EQ(net.node_count(), 10u);
    ASSERT_EQ(net.window_count(), 28u);
    ASSERT_EQ(net.event_count(), 122u);

    struct Expected {
        std::size_t group;
        std::vector<std::size_t> perNode;
        std::vector<std::size_t> histogram;
    };
    const std::vector<Expected> cases{
        {1,
         {14, 15, 17, 22, 17, 14, 16, 14, 17, 4},
         {0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 1, 1, 3, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0}},
        {2, {12, 12, 11, 12, 12, 9, 12, 9, 11, 3}, {0, 0, 0, 1, 0, 0, 0, 0, 0, 2, 0, 2, 5, 0, 0}},
        {3, {7, 8, 8, 9, 9, 9, 7, 6, 8, 4}, {0, 0, 0, 0, 1, 0, 1, 2, 3, 3, 0}},
        {7, {4, 4, 4, 4, 4, 4, 4, 3, 4, 2}, {0, 0, 1, 1, 8}},
    };
    for (const auto& c : cases) {
        const auto a = activity_potential(net, c.group);
        EXPECT_EQ(a.perNode, c.perNode) << "group " << c.group;
        EXPECT_EQ(a.histogram, c.histogram) << "group " << c.group;
    }
    const std::vector<Seconds> totals{92100, 75900, 104700, 123300, 105000, 123300, 87300, 49500, 75600, 18900};
    EXPECT_EQ(total_contact_duration(net), totals);
}

TEST(Network, DensitySeries)
{
    EXPECT_EQ(density_series(TemporalNetwork::empty(5, 3, 100)), (std::vector<double>{0, 0, 0}));
    std::vector<ContactEvent> k4;
    for (NodeId u = 0; u < 4; ++u) {
        for (NodeId v = u + 1; v < 4; ++v) k4.push_back({u, v, 0, 10});
    }
    k4.push_back({0, 1, 20, 10}); // repeat meetings count once
    const TemporalNetwork net(4, {window(0, k4)});
    EXPECT_EQ(density_series(net), (std::vector<double>{1.0}));
    EXPECT_THROW(density_series(TemporalNetwork::empty(1, 2, 100)), std::invalid_argument);
}

TEST(Network, DensityOfDisjointPartsOnSharedUniverse)
{
    // two node-disjoint contact sets living on one 6-node universe
    const TemporalNetwork a(6, {window(0, {{0, 1, 0, 5}, {1, 2, 0, 5}})});
    const TemporalNetwork b(6, {window(0, {{3, 4, 0, 5}})});
    const std::vector<TemporalNetwork> parts{a, b};
    const auto merged = merge(parts);
    EXPECT_DOUBLE_EQ(density_series(merged)[0], 3.0 / 15.0);
}

TEST(Network, DegreeSequence)
{
    EXPECT_EQ(degree_sequence(window(0, {}), 3), (std::vector<std::size_t>{0, 0, 0}));
    const TemporalNetwork tri(3, {window(0, {{0, 1, 0, 1}, {1, 2, 0, 1}, {0, 2, 0, 1}})});
    EXPECT_EQ(degree_sequence(tri.window(0), 3), (std::vector<std::size_t>{2, 2, 2}));
    const TemporalNetwork rep(2, {window(0, {{0, 1, 0, 1}, {0, 1, 5, 1}, {0, 1, 9, 1}})});
    EXPECT_EQ(degree_sequence(rep.window(0), 2), (std::vector<std::size_t>{1, 1}));
}

TEST(Network, DisjointUnionShiftsIds)
{
    const TemporalNetwork a(2, {window(0, {{0, 1, 0, 5}})});
    const TemporalNetwork b(3, {window(0, {{1, 2, 3, 4}})});
    const std::vector<TemporalNetwork> parts{a, b};
    const auto u = disjoint_union(parts);
    EXPECT_EQ(u.node_count(), 5u);
    const std::vector<ContactEvent> expected{{0, 1, 0, 5}, {3, 4, 3, 4}};
    EXPECT_EQ(u.window(0).events, expected);
    const TemporalNetwork c(2, {window(0, {}), window(1, {})});
    const std::vector<TemporalNetwork> bad{a, c};
    EXPECT_THROW(disjoint_union(bad), std::invalid_argument);
}

TEST(Network, AbsoluteEventsFollowWindows)
{
    const TemporalNetwork net(3, {window(0, {{0, 1, 10, 5}}, 100), window(1, {{1, 2, 3, 4}}, 50)});
    const auto events = absolute_events(net);
    ASSERT_EQ(events.size(), 2u);
    EXPECT_EQ(events[0].start, 10);
    EXPECT_EQ(events[1].start, 103);
}

TEST(Network, MergePairEventsIsLossyOption)
{
    const TemporalNetwork net(2, {window(0, {{0, 1, 10, 5}, {0, 1, 90, 8}}, 100)});
    const auto merged = merge_pair_events(net);
    ASSERT_EQ(merged.window(0).events.size(), 1u);
    EXPECT_EQ(merged.window(0).events[0].duration, 13);
    EXPECT_EQ(total_contact_duration(merged), total_contact_duration(net));
}
