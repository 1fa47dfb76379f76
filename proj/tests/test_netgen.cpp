#include "tnet/netgen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

using namespace tnet;
using namespace tnet::netgen;

namespace {

GenSpec small_spec(std::uint64_t seed = 1)
{
    GenSpec spec;
    spec.nodeCount = 30;
    spec.windowCount = 12;
    spec.params = from_window_density(0.1, 0.2, 288);
    spec.seed = seed;
    spec.burnIn = 100;
    return spec;
}

} // namespace

TEST(Netgen, TargetDensityClosedForm)
{
    const auto p = from_target_density(0.05, 0.2, 288);
    EXPECT_DOUBLE_EQ(p.pAppear, 0.05 * 0.2 / 0.95);
    EXPECT_NEAR(p.stationary_occupancy(), 0.05, 1e-15);
    EXPECT_THROW(from_target_density(0.9, 0.5, 288), std::invalid_argument);
}

TEST(Netgen, WindowDensitySolve)
{
    const auto p = from_window_density(0.05, 0.2, 288);
    EXPECT_NEAR(p.window_density(), 0.05, 1e-12);
    EXPECT_LT(p.stationary_occupancy(), 0.05);
    // one step per window: both readings coincide
    const auto a = from_window_density(0.05, 0.2, 1);
    const auto b = from_target_density(0.05, 0.2, 1);
    EXPECT_DOUBLE_EQ(a.pAppear, b.pAppear);
}

TEST(Netgen, ParameterValidation)
{
    EXPECT_THROW((MarkovEdgeParams{0, 0, 288, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((MarkovEdgeParams{1.5, 0.1, 288, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((MarkovEdgeParams{0.1, 0.1, 0, 0}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((MarkovEdgeParams{1, 1, 1, 0}.validate()));
}

TEST(Netgen, PairIndexIsDenseBijection)
{
    const std::size_t n = 17;
    std::set<std::uint64_t> seen;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) seen.insert(pair_index(u, v, n));
    }
    EXPECT_EQ(seen.size(), n * (n - 1) / 2);
    EXPECT_EQ(*seen.rbegin(), n * (n - 1) / 2 - 1);
}

TEST(Netgen, DeterministicAndParallelMatchesSerial)
{
    const auto spec = small_spec(9);
    const auto serial = generate_serial(spec);
    EXPECT_EQ(generate(spec, 1), serial);
    EXPECT_EQ(generate(spec, 4), serial);
    EXPECT_EQ(generate(spec), generate(spec));
    EXPECT_NE(generate(small_spec(10)), serial);
    EXPECT_FALSE(serial.weighted());
}

TEST(Netgen, EventsReconstructChainOnSteps)
{
    auto spec = small_spec(4);
    spec.params = from_target_density(0.3, 0.05, 12); // long runs crossing window edges
    spec.windowLength = 1200;
    GenerationStats stats;
    const auto net = generate(spec, 0, &stats);
    double onSeconds = 0;
    for (const auto& g : net.windows()) {
        for (const auto& e : g.events) onSeconds += e.duration;
    }
    EXPECT_GT(stats.onSteps, 0u);
    EXPECT_NEAR(onSeconds / spec.step_duration(), static_cast<double>(stats.onSteps), 1e-6);
    GenerationStats serialStats;
    generate_serial(spec, &serialStats);
    EXPECT_EQ(serialStats.onSteps, stats.onSteps);
    EXPECT_EQ(serialStats.transitions, stats.transitions);
}

TEST(Netgen, SingleChainOccupancyWithinThreeSigma)
{
    // one pair; the sample mean of a two-state chain has variance
    // pi (1 - pi) / T * (1 + r) / (1 - r), r = 1 - pA - pV
    GenSpec spec;
    spec.nodeCount = 2;
    spec.windowCount = 2000;
    spec.params = from_target_density(0.2, 0.1, 50);
    spec.seed = 77;
    GenerationStats stats;
    generate(spec, 1, &stats);
    const double T = 50.0 * 2000.0;
    const double pi = 0.2;
    const double r = 1 - spec.params.pAppear - spec.params.pVanish;
    const double sd = std::sqrt(pi * (1 - pi) / T * (1 + r) / (1 - r));
    EXPECT_NEAR(static_cast<double>(stats.onSteps) / T, pi, 3 * sd);
}

TEST(Netgen, MemoryGuard)
{
    GenSpec spec;
    spec.nodeCount = 5000;
    spec.windowCount = 10000;
    spec.params = from_window_density(0.5, 0.2, 288);
    EXPECT_GT(expected_event_count(spec), spec.maxExpectedEvents);
    EXPECT_THROW(generate(spec), std::length_error);
}

TEST(Netgen, ExpectedEventCountTracksOutput)
{
    GenSpec spec;
    spec.nodeCount = 60;
    spec.windowCount = 40;
    spec.params = from_window_density(0.2, 0.2, 288);
    spec.seed = 8;
    const auto net = generate(spec);
    const double expected = expected_event_count(spec);
    EXPECT_NEAR(static_cast<double>(net.event_count()), expected, 0.05 * expected);
}

TEST(Netgen, KolmogorovSurvivalReferenceValues)
{
    // scipy.special.kolmogorov
    const std::vector<std::pair<double, double>> ref{
        {0.2, 0.999999999999495},     {0.3, 0.9999906941986655},     {0.5, 0.9639452436648751},
        {0.8, 0.5441424115741981},    {1.0, 0.26999967167735456},    {1.18, 0.1234538094297657},
        {1.2, 0.11224966667072497},   {1.3581, 0.0499996304316674},  {1.6, 0.011952043239196616},
        {2.0, 0.0006709252557796953}, {3.0, 3.045995948942526e-08},
    };
    for (const auto& [x, q] : ref) EXPECT_NEAR(kolmogorov_survival(x), q, 1e-12 + 1e-9 * q) << x;
    EXPECT_EQ(kolmogorov_survival(0), 1.0);
}

TEST(Netgen, KsStatisticByHand)
{
    // ECDFs by hand: after x=3, F_a = 4/8 and F_b = 3/6 ... max gap 1/3 at x=7
    const std::vector<double> a{1, 2, 2, 3, 4, 5, 6, 7};
    const std::vector<double> b{2, 3, 3, 5, 8, 9};
    const auto r = ks_two_sample(a, b);
    EXPECT_NEAR(r.statistic, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(r.pValue, 0.8407030108704582, 1e-12);

    const auto same = ks_two_sample(a, a);
    EXPECT_EQ(same.statistic, 0.0);
    EXPECT_EQ(same.pValue, 1.0);
    const std::vector<double> far{100, 101};
    EXPECT_EQ(ks_two_sample(a, far).statistic, 1.0);
    const std::vector<double> unsorted{3, 1};
    EXPECT_THROW(ks_two_sample(unsorted, a), std::invalid_argument);
    EXPECT_THROW(ks_two_sample(std::vector<double>{}, a), std::invalid_argument);
}

TEST(Netgen, HomogeneityValidation)
{
    std::vector<TemporalNetwork> nets;
    for (std::uint64_t s = 1; s <= 4; ++s) nets.push_back(generate(small_spec(s)));
    const auto report = validate_homogeneity(nets);
    EXPECT_EQ(report.pairsTested, 6u);
    EXPECT_EQ(report.all.size(), 6u);

    EXPECT_THROW(validate_homogeneity(std::span<const TemporalNetwork>(nets.data(), 1)), std::invalid_argument);
    auto other = small_spec(5);
    other.nodeCount = 31;
    nets.push_back(generate(other));
    EXPECT_THROW(validate_homogeneity(nets), std::invalid_argument);
}

TEST(Netgen, DensityDiffersDetected)
{
    std::vector<TemporalNetwork> nets{generate(small_spec(1))};
    auto dense = small_spec(2);
    dense.params = from_window_density(0.5, 0.2, 288);
    nets.push_back(generate(dense));
    const auto report = validate_homogeneity(nets);
    EXPECT_EQ(report.rejections.size(), 1u);
}
