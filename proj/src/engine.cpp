#include "tnet/engine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tnet::engine {

void PathogenParams::validate() const
{
    if (!(pMax >= 0 && pMax <= 1)) throw std::invalid_argument("pMax must lie in [0, 1]");
    if (!(pEpsilon >= 0 && pEpsilon <= 1)) throw std::invalid_argument("pEpsilon must lie in [0, 1]");
    // pEpsilon only enters the weighted form; pMax = pEpsilon = 0 is the
    // degenerate no-transmission pathogen
    if (mode == ExposureMode::Weighted && pEpsilon >= pMax && !(pMax == 0 && pEpsilon == 0)) {
        throw std::invalid_argument("pEpsilon must be below pMax");
    }
    if (!(dMin >= 0)) throw std::invalid_argument("dMin must be non-negative");
    if (!(dMax > 0)) throw std::invalid_argument("dMax must be positive");
    if (dMin > dMax) throw std::invalid_argument("dMin must not exceed dMax");
    if (latencyWindows < 1) throw std::invalid_argument("latencyWindows must be at least 1");
    if (infectiousWindows < 1) throw std::invalid_argument("infectiousWindows must be at least 1");
}

double exposure_probability_uniform(std::size_t nInfectiousContacts, double pMax)
{
    // repeated product rather than pow(): matches the weighted form operation
    // for operation when every term saturates at pMax
    double escape = 1.0;
    for (std::size_t k = 0; k < nInfectiousContacts; ++k) escape *= (1.0 - pMax);
    return 1.0 - escape;
}

double EffectiveDuration::term(const PathogenParams& params) const
{
    if (belowThreshold) return params.pEpsilon;
    return std::min(duration / params.dMax, 1.0) * params.pMax;
}

EffectiveDuration effective_duration(Seconds d, const PathogenParams& params)
{
    if (d >= params.dMin) return {false, d};
    return {true, 0};
}

double exposure_probability_weighted(std::span<const Seconds> durations, const PathogenParams& params)
{
    double escape = 1.0;
    for (const Seconds d : durations) escape *= (1.0 - effective_duration(d, params).term(params));
    return 1.0 - escape;
}

Counts EpidemicState::counts() const
{
    Counts c{};
    for (const auto& s : nodes) ++c[static_cast<std::size_t>(s.state)];
    return c;
}

void EpidemicState::infect(NodeId node, const PathogenParams& params)
{
    nodes.at(node) = NodeState{Compartment::Infectious, params.infectiousWindows};
}

std::size_t step(const TemporalNetwork& net, const PathogenParams& params, EpidemicState& state,
                 const DrawSource& draws)
{
    if (state.window >= net.window_count()) throw std::out_of_range("timeline exhausted");
    if (params.mode == ExposureMode::Weighted && !net.weighted()) {
        throw std::invalid_argument("weighted mode requires durations");
    }
    const std::size_t n = net.node_count();
    if (state.nodes.size() != n) throw std::invalid_argument("state does not match network size");

    const auto& g = net.window(state.window);
    std::size_t exposed = 0;

    const bool anyInfectious = std::any_of(state.nodes.begin(), state.nodes.end(), [](const NodeState& s) {
        return s.state == Compartment::Infectious;
    });

    if (anyInfectious && !g.events.empty()) {
        // phase 1: accumulate per-target escape probability from interactions
        // with nodes Infectious at window start
        std::vector<double> escape(n, 1.0);
        std::vector<std::size_t> distinct(n, 0);
        std::vector<std::size_t> interactions(n, 0);
        std::vector<Seconds> duration(n, 0.0);
        std::vector<NodeId> touched;

        auto is = [&](NodeId x, Compartment c) { return state.nodes[x].state == c; };
        for (std::size_t i = 0; i < g.events.size(); ++i) {
            const auto& e = g.events[i];
            NodeId target;
            if (is(e.u, Compartment::Infectious) && is(e.v, Compartment::Susceptible)) {
                target = e.v;
            } else if (is(e.v, Compartment::Infectious) && is(e.u, Compartment::Susceptible)) {
                target = e.u;
            } else {
                continue;
            }
            const bool newPair = i == 0 || g.events[i - 1].u != e.u || g.events[i - 1].v != e.v;
            if (interactions[target] == 0) touched.push_back(target);
            ++interactions[target];
            duration[target] += e.duration;
            if (newPair) ++distinct[target];
            if (params.mode == ExposureMode::Weighted) {
                escape[target] *= (1.0 - effective_duration(e.duration, params).term(params));
            }
        }

        std::sort(touched.begin(), touched.end());
        for (const NodeId x : touched) {
            const double p = params.mode == ExposureMode::Weighted
                                 ? 1.0 - escape[x]
                                 : exposure_probability_uniform(distinct[x], params.pMax);
            if (draws.exposure_uniform(state.window, x) < p) {
                state.nodes[x] = NodeState{Compartment::Exposed, params.latencyWindows};
                ++exposed;
                if (state.logExposures) {
                    Exposure log{state.window, x, {}, interactions[x], duration[x]};
                    for (const auto& e : g.events) {
                        const NodeId other = e.u == x ? e.v : (e.v == x ? e.u : x);
                        if (other == x || !is(other, Compartment::Infectious)) continue;
                        if (log.causes.empty() || log.causes.back() != other) log.causes.push_back(other);
                    }
                    std::sort(log.causes.begin(), log.causes.end());
                    log.causes.erase(std::unique(log.causes.begin(), log.causes.end()), log.causes.end());
                    state.newExposures.push_back(std::move(log));
                }
            }
        }
    }

    // phase 2: clocks
    for (auto& s : state.nodes) {
        if (s.state == Compartment::Exposed) {
            if (--s.clock <= 0) s = NodeState{Compartment::Infectious, params.infectiousWindows};
        } else if (s.state == Compartment::Infectious) {
            if (--s.clock <= 0) s = NodeState{Compartment::Removed, 0};
        }
    }

    ++state.window;
    return exposed;
}

void SeedSpec::validate(std::size_t nodeCount) const
{
    if (placementWindows.empty()) throw std::invalid_argument("placementWindows must not be empty");
    if (nodes.empty()) {
        if (count > nodeCount) throw std::invalid_argument("seed count exceeds node count");
    } else {
        for (auto x : nodes) {
            if (x >= nodeCount) throw std::invalid_argument("seed node outside node universe");
        }
    }
}

std::vector<Placement> place_seeds(const SeedSpec& seeds, std::size_t nodeCount, SplitMix64& rng)
{
    seeds.validate(nodeCount);
    std::vector<NodeId> chosen = seeds.nodes;
    if (chosen.empty() && seeds.count > 0) {
        std::vector<NodeId> all(nodeCount);
        std::iota(all.begin(), all.end(), NodeId{0});
        // partial Fisher-Yates: the first `count` entries are a uniform subset
        for (std::size_t i = 0; i < seeds.count; ++i) {
            const auto j = i + static_cast<std::size_t>(rng.below(nodeCount - i));
            std::swap(all[i], all[j]);
        }
        chosen.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(seeds.count));
    }
    std::vector<Placement> out;
    out.reserve(chosen.size());
    for (const NodeId x : chosen) {
        out.push_back({x, seeds.placementWindows[rng.below(seeds.placementWindows.size())]});
    }
    return out;
}

double RunResult::final_infected_fraction() const
{
    if (counts.empty() || nodeCount == 0) return 0.0;
    return static_cast<double>(nodeCount - counts.back()[0]) / static_cast<double>(nodeCount);
}

std::vector<double> RunResult::cumulative_infected_fraction() const
{
    std::vector<double> out;
    out.reserve(counts.size());
    for (const auto& c : counts) out.push_back(static_cast<double>(nodeCount - c[0]) / static_cast<double>(nodeCount));
    return out;
}

RunResult run(const TemporalNetwork& net, const PathogenParams& params, const SeedSpec& seeds,
              std::uint64_t runSeed, const RunOptions& options)
{
    params.validate();
    seeds.validate(net.node_count());
    if (params.mode == ExposureMode::Weighted && !net.weighted()) {
        throw std::invalid_argument("weighted mode requires durations");
    }
    const std::size_t L = net.window_count();
    for (auto w : seeds.placementWindows) {
        if (w >= L) throw std::invalid_argument("seed placement window beyond the timeline");
    }

    const DrawSource draws(runSeed);
    auto placementRng = draws.placement_stream();

    RunResult result;
    result.nodeCount = net.node_count();
    result.seeds = place_seeds(seeds, net.node_count(), placementRng);
    result.counts.reserve(L);
    result.newExposures.reserve(L);

    std::size_t lastPlacement = 0;
    for (const auto& p : result.seeds) lastPlacement = std::max(lastPlacement, p.window);

    EpidemicState state(net.node_count());
    state.logExposures = options.logExposures;
    for (std::size_t tau = 0; tau < L; ++tau) {
        for (const auto& p : result.seeds) {
            if (p.window == tau && state.nodes[p.node].state == Compartment::Susceptible) {
                state.infect(p.node, params);
            }
        }
        if (options.stopWhenExtinct && tau >= lastPlacement) {
            const auto c = state.counts();
            if (c[1] == 0 && c[2] == 0) break;
        }
        const std::size_t exposed = step(net, params, state, draws);
        result.counts.push_back(state.counts());
        result.newExposures.push_back(exposed);
    }
    result.windowsSimulated = result.counts.size();
    const Counts frozen = state.counts();
    while (result.counts.size() < L) {
        result.counts.push_back(frozen);
        result.newExposures.push_back(0);
    }
    result.exposures = std::move(state.newExposures);
    result.finalStates = std::move(state.nodes);
    return result;
}

const char* to_string(ExposureMode mode)
{
    return mode == ExposureMode::Uniform ? "uniform" : "weighted";
}

const char* to_string(Compartment c)
{
    switch (c) {
    case Compartment::Susceptible: return "S";
    case Compartment::Exposed: return "E";
    case Compartment::Infectious: return "I";
    case Compartment::Removed: return "R";
    }
    return "?";
}

} // namespace tnet::engine
