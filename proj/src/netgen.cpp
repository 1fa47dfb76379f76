#include "tnet/netgen.hpp"

#include "tnet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tnet::netgen {

double MarkovEdgeParams::stationary_occupancy() const
{
    return pAppear / (pAppear + pVanish);
}

double MarkovEdgeParams::window_density() const
{
    const double pi = stationary_occupancy();
    if (stepsPerWindow <= 1) return pi;
    return 1.0 - (1.0 - pi) * std::pow(1.0 - pAppear, static_cast<double>(stepsPerWindow - 1));
}

void MarkovEdgeParams::validate() const
{
    // The open interval is what from_target_density produces; the closed
    // bounds are accepted for the absorbing edge cases.
    if (!(pAppear >= 0 && pAppear <= 1)) throw std::invalid_argument("pAppear must lie in [0, 1]");
    if (!(pVanish >= 0 && pVanish <= 1)) throw std::invalid_argument("pVanish must lie in [0, 1]");
    if (pAppear + pVanish <= 0) throw std::invalid_argument("pAppear and pVanish cannot both be zero");
    if (stepsPerWindow == 0) throw std::invalid_argument("stepsPerWindow must be positive");
}

MarkovEdgeParams from_target_density(double targetDensity, double pVanish, std::size_t stepsPerWindow)
{
    if (!(targetDensity > 0 && targetDensity < 1)) throw std::invalid_argument("target density must lie in (0, 1)");
    if (!(pVanish > 0 && pVanish < 1)) throw std::invalid_argument("pVanish must lie in (0, 1)");
    if (stepsPerWindow == 0) throw std::invalid_argument("stepsPerWindow must be positive");
    const double pAppear = targetDensity * pVanish / (1.0 - targetDensity);
    if (!(pAppear < 1)) throw std::invalid_argument("infeasible parameters");
    return MarkovEdgeParams{pAppear, pVanish, stepsPerWindow, targetDensity};
}

MarkovEdgeParams from_window_density(double windowDensity, double pVanish, std::size_t stepsPerWindow)
{
    if (stepsPerWindow == 1) return from_target_density(windowDensity, pVanish, 1);
    if (!(windowDensity > 0 && windowDensity < 1)) throw std::invalid_argument("target density must lie in (0, 1)");
    if (!(pVanish > 0 && pVanish < 1)) throw std::invalid_argument("pVanish must lie in (0, 1)");
    if (stepsPerWindow == 0) throw std::invalid_argument("stepsPerWindow must be positive");

    auto density_at = [&](double pAppear) {
        return MarkovEdgeParams{pAppear, pVanish, stepsPerWindow, 0}.window_density();
    };
    // window_density is increasing in pAppear
    double lo = 0.0;
    double hi = 1.0;
    if (density_at(std::nextafter(1.0, 0.0)) < windowDensity) throw std::invalid_argument("infeasible parameters");
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (density_at(mid) < windowDensity ? lo : hi) = mid;
    }
    MarkovEdgeParams out{hi, pVanish, stepsPerWindow, 0};
    out.targetDensity = out.stationary_occupancy();
    return out;
}

void GenSpec::validate() const
{
    params.validate();
    if (nodeCount == 0) throw std::invalid_argument("nodeCount must be positive");
    if (windowCount == 0) throw std::invalid_argument("windowCount must be at least 1");
    if (!(windowLength > 0)) throw std::invalid_argument("windowLength must be positive");
    if (nodeCount > std::numeric_limits<NodeId>::max()) throw std::invalid_argument("nodeCount too large");
}

double expected_event_count(const GenSpec& spec)
{
    const double n = static_cast<double>(spec.nodeCount);
    const double pairs = 0.5 * n * (n - 1);
    const double pi = spec.params.stationary_occupancy();
    const double steps = static_cast<double>(spec.params.stepsPerWindow);
    const double runsPerWindow = pi + (steps - 1) * (1 - pi) * spec.params.pAppear;
    return pairs * static_cast<double>(spec.windowCount) * runsPerWindow;
}

std::uint64_t pair_index(NodeId u, NodeId v, std::size_t nodeCount) noexcept
{
    const std::uint64_t n = nodeCount;
    const std::uint64_t a = u;
    return a * (2 * n - a - 1) / 2 + (v - a - 1);
}

namespace {

/// Sojourn length (>= 1 steps) of a state left with per-step probability p,
/// capped at `cap`.
std::int64_t sojourn(double p, SplitMix64& rng, std::int64_t cap)
{
    if (p >= 1.0) return 1;
    if (p <= 0.0) return cap;
    const double steps = std::floor(std::log(rng.uniform_open_low()) / std::log1p(-p));
    if (steps >= static_cast<double>(cap)) return cap;
    return std::max<std::int64_t>(1, 1 + static_cast<std::int64_t>(steps));
}

void check_guard(const GenSpec& spec)
{
    spec.validate();
    const double expected = expected_event_count(spec);
    if (expected > spec.maxExpectedEvents) {
        throw std::length_error("generation would produce ~" + std::to_string(static_cast<long long>(expected)) +
                                " events, above the limit of " +
                                std::to_string(static_cast<long long>(spec.maxExpectedEvents)));
    }
}

TemporalNetwork assemble(const GenSpec& spec, const std::vector<std::vector<PairEvent>>& rows)
{
    std::vector<std::size_t> perWindow(spec.windowCount, 0);
    for (const auto& row : rows) {
        for (const auto& pe : row) ++perWindow[pe.window];
    }
    std::vector<SnapshotGraph> windows(spec.windowCount);
    for (std::size_t tau = 0; tau < spec.windowCount; ++tau) {
        windows[tau].index = tau;
        windows[tau].windowLength = spec.windowLength;
        windows[tau].events.reserve(perWindow[tau]);
    }
    // rows are in u order and each row in (v, time) order, so windows come out canonical
    for (const auto& row : rows) {
        for (const auto& pe : row) windows[pe.window].events.push_back(pe.event);
    }
    return TemporalNetwork(spec.nodeCount, std::move(windows), /*weighted=*/false);
}

} // namespace

void simulate_pair(const GenSpec& spec, NodeId u, NodeId v, std::vector<PairEvent>& out, GenerationStats* stats)
{
    const auto& p = spec.params;
    const auto S = static_cast<std::int64_t>(p.stepsPerWindow);
    const std::int64_t total = S * static_cast<std::int64_t>(spec.windowCount);
    const double W = spec.windowLength;

    SplitMix64 rng(derive_seed(spec.seed, pair_index(u, v, spec.nodeCount)));
    bool on = rng.uniform() < p.stationary_occupancy();
    std::int64_t t = -static_cast<std::int64_t>(spec.burnIn);

    while (t < total) {
        const std::int64_t len = sojourn(on ? p.pVanish : p.pAppear, rng, total - t);
        const std::int64_t end = t + len;
        if (on && end > 0) {
            std::int64_t a = std::max<std::int64_t>(t, 0);
            if (stats) stats->onSteps += static_cast<std::uint64_t>(end - a);
            while (a < end) {
                const std::int64_t w = a / S;
                const std::int64_t segEnd = std::min(end, (w + 1) * S);
                const double offset = static_cast<double>(a - w * S) * W / static_cast<double>(S);
                const double stop = static_cast<double>(segEnd - w * S) * W / static_cast<double>(S);
                out.push_back({static_cast<std::uint32_t>(w), ContactEvent{u, v, offset, stop - offset}});
                a = segEnd;
            }
        }
        t = end;
        on = !on;
        if (stats && t < total) ++stats->transitions;
    }
}

TemporalNetwork generate_serial(const GenSpec& spec, GenerationStats* stats)
{
    check_guard(spec);
    const std::size_t n = spec.nodeCount;
    std::vector<std::vector<PairEvent>> rows(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            simulate_pair(spec, static_cast<NodeId>(u), static_cast<NodeId>(v), rows[u], stats);
        }
    }
    return assemble(spec, rows);
}

TemporalNetwork generate(const GenSpec& spec, int threads, GenerationStats* stats)
{
    check_guard(spec);
    const auto n = static_cast<std::int64_t>(spec.nodeCount);
    std::vector<std::vector<PairEvent>> rows(spec.nodeCount);
    std::vector<GenerationStats> rowStats(stats ? spec.nodeCount : 0);

#ifdef _OPENMP
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
#endif
    for (std::int64_t u = 0; u < n; ++u) {
        GenerationStats* local = stats ? &rowStats[static_cast<std::size_t>(u)] : nullptr;
        for (std::int64_t v = u + 1; v < n; ++v) {
            simulate_pair(spec, static_cast<NodeId>(u), static_cast<NodeId>(v), rows[static_cast<std::size_t>(u)],
                          local);
        }
    }
    (void)threads;

    if (stats) {
        for (const auto& s : rowStats) {
            stats->onSteps += s.onSteps;
            stats->transitions += s.transitions;
        }
    }
    return assemble(spec, rows);
}

double kolmogorov_survival(double lambda)
{
    if (!(lambda > 0)) return 1.0;
    if (lambda < 1.18) {
        // Jacobi-theta form converges fast for small lambda:
        // 1 - Q = sqrt(2 pi) / lambda * sum exp(-(2k-1)^2 pi^2 / (8 lambda^2))
        const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double sum = 0;
        for (int k = 1; k <= 20; ++k) {
            const double m = 2.0 * k - 1.0;
            const double term = std::exp(-m * m * c);
            sum += term;
            if (term < 1e-300) break;
        }
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
    }
    double sum = 0;
    double sign = 1;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-300) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs two non-empty samples");
    if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end())) {
        throw std::invalid_argument("KS samples must be sorted");
    }
    const double n = static_cast<double>(a.size());
    const double m = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    const double nEff = n * m / (n + m);
    return KsResult{d, kolmogorov_survival(std::sqrt(nEff) * d)};
}

std::vector<double> pooled_degrees(const TemporalNetwork& net)
{
    std::vector<double> pooled;
    pooled.reserve(net.node_count() * net.window_count());
    for (const auto& g : net.windows()) {
        for (auto d : degree_sequence(g, net.node_count())) pooled.push_back(static_cast<double>(d));
    }
    std::sort(pooled.begin(), pooled.end());
    return pooled;
}

HomogeneityReport validate_homogeneity(std::span<const TemporalNetwork> nets, double alpha)
{
    if (nets.size() < 2) throw std::invalid_argument("homogeneity check needs at least two networks");
    for (const auto& net : nets) {
        if (net.node_count() != nets.front().node_count()) throw std::invalid_argument("node counts differ");
    }
    std::vector<std::vector<double>> samples;
    samples.reserve(nets.size());
    for (const auto& net : nets) {
        samples.push_back(pooled_degrees(net));
        if (samples.back().empty()) throw std::invalid_argument("network has no windows");
    }

    HomogeneityReport report;
    report.alpha = alpha;
    for (std::size_t i = 0; i < nets.size(); ++i) {
        for (std::size_t j = i + 1; j < nets.size(); ++j) {
            const auto ks = ks_two_sample(samples[i], samples[j]);
            report.all.push_back(ks);
            ++report.pairsTested;
            if (ks.pValue < alpha) report.rejections.push_back({i, j, ks});
        }
    }
    return report;
}

} // namespace tnet::netgen
