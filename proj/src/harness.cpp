#include "tnet/harness.hpp"

#include "tnet/netgen.hpp"
#include "tnet/network_io.hpp"
#include "tnet/rng.hpp"
#include "tnet/version.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tnet::harness {

using nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kNetworkStream = 0x6e6574776f726bULL;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const char* to_string(PodMode m)
{
    return m == PodMode::Filter ? "filter" : "regenerate";
}

const char* to_string(interventions::BoundaryRule r)
{
    return r == interventions::BoundaryRule::Split ? "split" : "assign-to-start";
}

ordered_json to_json(const ingest::IngestConfig& c)
{
    ordered_json j;
    j["scan_interval_sec"] = c.scanInterval;
    j["rssi_min"] = c.rssiMin ? ordered_json(*c.rssiMin) : ordered_json(nullptr);
    j["window_length_sec"] = c.windowLength;
    j["max_gap"] = c.maxGap;
    j["origin"] = c.origin ? ordered_json(*c.origin) : ordered_json(nullptr);
    return j;
}

ordered_json to_json(const NetworkSource& src)
{
    return std::visit(
        overloaded{
            [](const GeneratedSource& g) {
                return ordered_json{{"kind", "generate"},
                                    {"node_count", g.nodeCount},
                                    {"window_count", g.windowCount},
                                    {"window_density", g.windowDensity},
                                    {"p_vanish", g.pVanish},
                                    {"steps_per_window", g.stepsPerWindow},
                                    {"burn_in", g.burnIn},
                                    {"pool_size", g.poolSize},
                                    {"seed", g.seed}};
            },
            [](const SyntheticCnsSource& c) {
                const auto& s = c.cns;
                return ordered_json{{"kind", "synthetic-cns"},
                                    {"participants", s.participants},
                                    {"days", s.days},
                                    {"scan_interval_sec", s.scanInterval},
                                    {"group_size", s.groupSize},
                                    {"sessions_per_weekday", s.sessionsPerWeekday},
                                    {"session_minutes", s.sessionMinutes},
                                    {"attendance", s.attendance},
                                    {"friends_per_node", s.friendsPerNode},
                                    {"friend_meet_probability", s.friendMeetProbability},
                                    {"friend_minutes", s.friendMinutes},
                                    {"encounters_per_day", s.encountersPerDay},
                                    {"empty_scan_rate", s.emptyScanRate},
                                    {"seed", s.seed},
                                    {"ingest", to_json(c.ingest)}};
            },
            [](const ScanFileSource& f) {
                return ordered_json{{"kind", "scan-file"}, {"path", f.path.string()}, {"ingest", to_json(f.ingest)}};
            },
            [](const CanonicalDirSource& d) { return ordered_json{{"kind", "canonical-dir"}, {"dir", d.dir.string()}}; },
        },
        src);
}

ordered_json to_json(const Intervention& iv)
{
    return std::visit(overloaded{
                          [](const SpatialPods& p) {
                              return ordered_json{{"policy", "spatial"}, {"k", p.k}, {"mode", to_string(p.mode)}};
                          },
                          [](const Dilate& d) {
                              return ordered_json{{"policy", "dilate"}, {"k", d.k}, {"boundary", to_string(d.rule)}};
                          },
                          [](const Alternate& a) {
                              return ordered_json{{"policy", "alternate"}, {"mode", to_string(a.mode)}};
                          },
                          [](const Attendance& a) {
                              return ordered_json{{"policy", "attendance"}, {"fraction", a.fraction}};
                          },
                      },
                      iv);
}

ordered_json to_json(const engine::PathogenParams& p)
{
    return ordered_json{{"mode", engine::to_string(p.mode)},
                        {"p_max", p.pMax},
                        {"d_min_sec", p.dMin},
                        {"d_max_sec", p.dMax},
                        {"p_epsilon", p.pEpsilon},
                        {"latency_windows", p.latencyWindows},
                        {"infectious_windows", p.infectiousWindows}};
}

ordered_json to_json(const engine::SeedSpec& s)
{
    return ordered_json{{"count", s.count}, {"placement_windows", s.placementWindows}, {"nodes", s.nodes}};
}

ordered_json to_json(const Scenario& s)
{
    ordered_json j;
    j["name"] = s.name;
    j["description"] = s.description;
    j["source"] = to_json(s.source);
    j["interventions"] = ordered_json::array();
    for (const auto& iv : s.interventions) j["interventions"].push_back(to_json(iv));
    j["pathogen"] = to_json(s.pathogen);
    if (s.sweep) {
        j["sweep"] = ordered_json{
            {"d_min_start_sec", s.sweep->start}, {"d_min_end_sec", s.sweep->end}, {"d_min_step_sec", s.sweep->step}};
    } else {
        j["sweep"] = nullptr;
    }
    j["seeds"] = to_json(s.seeds);
    j["iterations"] = s.iterations;
    j["master_seed"] = s.masterSeed;
    return j;
}

std::uint64_t fnv1a(const std::string& text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex(std::uint64_t x)
{
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << x;
    return os.str();
}

/// The leading intervention when it replaces the source by independent
/// sub-networks, with the pod count it needs.
std::optional<std::size_t> regenerated_pods(const Scenario& s)
{
    if (s.interventions.empty()) return std::nullopt;
    const auto& first = s.interventions.front();
    if (const auto* p = std::get_if<SpatialPods>(&first); p && p->mode == PodMode::Regenerate) return p->k;
    if (const auto* a = std::get_if<Alternate>(&first); a && a->mode == PodMode::Regenerate) return 2;
    return std::nullopt;
}

std::vector<std::size_t> balanced_sizes(std::size_t n, std::size_t k)
{
    std::vector<std::size_t> sizes(k, n / k);
    for (std::size_t p = 0; p < n % k; ++p) ++sizes[p];
    return sizes;
}

/// Pool indices of the k sub-networks one iteration draws: distinct when the
/// pool is large enough.
std::vector<std::size_t> draw_pool_indices(std::size_t k, std::size_t poolSize, SplitMix64& rng)
{
    const std::size_t pool = std::max(poolSize, k);
    std::vector<std::size_t> all(pool);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(pool - i));
        std::swap(all[i], all[j]);
    }
    all.resize(k);
    return all;
}

std::runtime_error with_context(const Scenario& s, const std::exception& e)
{
    return std::runtime_error("scenario '" + s.name + "': " + e.what());
}

#ifdef _OPENMP
int resolve_workers(int workers)
{
    return workers > 0 ? workers : omp_get_max_threads();
}
#endif

/// Run `body(i)` for every iteration, in parallel when enabled. The first
/// failure by iteration index is rethrown.
template <class Body>
void for_each_iteration(std::size_t iterations, int workers, Body body)
{
    std::vector<std::exception_ptr> errors(iterations);
    const auto count = static_cast<std::int64_t>(iterations);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_workers(workers))
#else
    (void)workers;
#endif
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace

void SweepSpec::validate() const
{
    if (!(step > 0)) throw std::invalid_argument("sweep step must be positive");
    if (!(start <= end)) throw std::invalid_argument("sweep start must not exceed its end");
    if (!(start >= 0)) throw std::invalid_argument("sweep start must be non-negative");
}

std::vector<Seconds> SweepSpec::values() const
{
    validate();
    std::vector<Seconds> out;
    // integer stepping avoids drift in the accumulated values
    const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

void Scenario::validate() const
{
    if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
    pathogen.validate();
    if (sweep) {
        sweep->validate();
        if (pathogen.mode != engine::ExposureMode::Weighted) {
            throw std::invalid_argument("a dMin sweep needs the weighted exposure mode");
        }
    }
    for (std::size_t i = 0; i < interventions.size(); ++i) {
        const bool regenerate = std::visit(overloaded{
                                               [](const SpatialPods& p) { return p.mode == PodMode::Regenerate; },
                                               [](const Alternate& a) { return a.mode == PodMode::Regenerate; },
                                               [](const auto&) { return false; },
                                           },
                                           interventions[i]);
        if (regenerate && i != 0) throw std::invalid_argument("regenerate mode must be the first intervention");
        if (regenerate && !std::holds_alternative<GeneratedSource>(source)) {
            throw std::invalid_argument("regenerate mode needs a generated network source");
        }
        if (const auto* p = std::get_if<SpatialPods>(&interventions[i]); p && p->k == 0) {
            throw std::invalid_argument("pod count must be positive");
        }
    }
    if (const auto* g = std::get_if<GeneratedSource>(&source)) {
        if (g->poolSize < 1) throw std::invalid_argument("pool size must be at least 1");
        if (g->nodeCount < 2) throw std::invalid_argument("generated networks need at least two nodes");
    }
}

std::string scenario_json(const Scenario& s)
{
    return to_json(s).dump();
}

std::uint64_t scenario_hash(const Scenario& s)
{
    return fnv1a(scenario_json(s));
}

std::shared_ptr<const TemporalNetwork> NetworkCache::generated(const GeneratedSource& src, std::size_t nodeCount,
                                                               std::size_t index)
{
    auto key = to_json(NetworkSource{src}).dump() + "#" + std::to_string(nodeCount) + "#" + std::to_string(index);
    {
        std::lock_guard lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    netgen::GenSpec spec;
    spec.nodeCount = nodeCount;
    spec.windowCount = src.windowCount;
    spec.params = netgen::from_window_density(src.windowDensity, src.pVanish, src.stepsPerWindow);
    spec.seed = derive_seed(src.seed, nodeCount, index);
    spec.burnIn = src.burnIn;
    auto net = std::make_shared<const TemporalNetwork>(netgen::generate(spec));
    std::lock_guard lock(mutex_);
    return entries_.emplace(std::move(key), std::move(net)).first->second;
}

std::shared_ptr<const TemporalNetwork> NetworkCache::fixed(const NetworkSource& src)
{
    auto key = to_json(src).dump();
    {
        std::lock_guard lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto net = std::visit(overloaded{
                              [](const GeneratedSource&) -> TemporalNetwork {
                                  throw std::logic_error("generated sources are pooled");
                              },
                              [](const SyntheticCnsSource& c) {
                                  const auto scans = ingest::synthesize_cns(c.cns);
                                  return ingest::build_network(scans.records, c.ingest).network;
                              },
                              [](const ScanFileSource& f) {
                                  const auto parsed = ingest::parse_scans(f.path);
                                  return ingest::build_network(parsed.records, f.ingest).network;
                              },
                              [](const CanonicalDirSource& d) { return read_network(d.dir); },
                          },
                          src);
    auto shared = std::make_shared<const TemporalNetwork>(std::move(net));
    std::lock_guard lock(mutex_);
    return entries_.emplace(std::move(key), std::move(shared)).first->second;
}

void NetworkCache::clear()
{
    std::lock_guard lock(mutex_);
    entries_.clear();
}

std::uint64_t iteration_seed(const Scenario& s, std::size_t iteration)
{
    return derive_seed(s.masterSeed, iteration);
}

std::shared_ptr<const TemporalNetwork> iteration_network(const Scenario& s, std::size_t iteration,
                                                         NetworkCache& cache)
{
    SplitMix64 rng(derive_seed(s.masterSeed, iteration, kNetworkStream));
    std::shared_ptr<const TemporalNetwork> net;
    std::size_t next = 0;

    if (const auto k = regenerated_pods(s)) {
        const auto& src = std::get<GeneratedSource>(s.source);
        if (*k > src.nodeCount) throw std::invalid_argument("more pods than nodes");
        const auto sizes = balanced_sizes(src.nodeCount, *k);
        const auto picks = draw_pool_indices(*k, src.poolSize, rng);
        std::vector<TemporalNetwork> parts;
        parts.reserve(*k);
        for (std::size_t p = 0; p < *k; ++p) parts.push_back(*cache.generated(src, sizes[p], picks[p]));
        auto joined = disjoint_union(parts);
        if (std::holds_alternative<Alternate>(s.interventions.front())) {
            joined = interventions::alternating_pods(joined, interventions::block_pods(sizes));
        }
        net = std::make_shared<const TemporalNetwork>(std::move(joined));
        next = 1;
    } else if (const auto* g = std::get_if<GeneratedSource>(&s.source)) {
        net = cache.generated(*g, g->nodeCount, iteration % g->poolSize);
    } else {
        net = cache.fixed(s.source);
    }

    for (; next < s.interventions.size(); ++next) {
        auto out = std::visit(overloaded{
                                  [&](const SpatialPods& p) {
                                      if (p.k > net->node_count()) throw std::invalid_argument("more pods than nodes");
                                      if (p.k == 1) return *net;
                                      return interventions::intra_pod_events(
                                          *net, interventions::balanced_random_pods(net->node_count(), p.k, rng));
                                  },
                                  [&](const Dilate& d) {
                                      if (d.k == 1) return *net;
                                      return interventions::temporal_dilation(*net, d.k, d.rule);
                                  },
                                  [&](const Alternate&) { return interventions::alternating_pods(*net, rng); },
                                  [&](const Attendance& a) {
                                      return interventions::random_attendance(*net, a.fraction, rng);
                                  },
                              },
                              s.interventions[next]);
        net = std::make_shared<const TemporalNetwork>(std::move(out));
    }
    return net;
}

void warm_cache(const Scenario& s, NetworkCache& cache)
{
    if (const auto* g = std::get_if<GeneratedSource>(&s.source)) {
        if (const auto k = regenerated_pods(s)) {
            const std::size_t pool = std::max(g->poolSize, *k);
            for (const auto size : std::set<std::size_t>{g->nodeCount / *k, (g->nodeCount + *k - 1) / *k}) {
                for (std::size_t i = 0; i < pool; ++i) cache.generated(*g, size, i);
            }
        } else {
            for (std::size_t i = 0; i < std::min(g->poolSize, s.iterations); ++i) cache.generated(*g, g->nodeCount, i);
        }
    } else {
        cache.fixed(s.source);
    }
}

Aggregate run_scenario(const Scenario& s, const RunConfig& config)
{
    NetworkCache local;
    NetworkCache& cache = config.cache ? *config.cache : local;
    try {
        s.validate();
        warm_cache(s, cache);
        const auto first = iteration_network(s, 0, cache);
        const std::size_t n = first->node_count();
        const std::size_t L = first->window_count();

        // exact integer sums: the reduction does not depend on scheduling
        std::vector<std::array<std::uint64_t, 4>> sum(L), sumSq(L);
        std::mutex merge;
        Aggregate a;
        a.nodeCount = n;
        a.windowCount = L;
        a.iterations = s.iterations;
        a.finals.resize(s.iterations);

        for_each_iteration(s.iterations, config.workers, [&](std::size_t i) {
            const auto net = i == 0 ? first : iteration_network(s, i, cache);
            if (net->node_count() != n || net->window_count() != L) {
                throw std::logic_error("iterations produced networks of different shapes");
            }
            const auto r = engine::run(*net, s.pathogen, s.seeds, iteration_seed(s, i));
            a.finals[i] = r.final_infected_fraction();
            std::lock_guard lock(merge);
            for (std::size_t t = 0; t < L; ++t) {
                for (std::size_t c = 0; c < 4; ++c) {
                    const std::uint64_t x = r.counts[t][c];
                    sum[t][c] += x;
                    sumSq[t][c] += x * x;
                }
            }
        });

        const auto I = static_cast<double>(s.iterations);
        a.mean.resize(L);
        a.ci95.resize(L);
        for (std::size_t t = 0; t < L; ++t) {
            for (std::size_t c = 0; c < 4; ++c) {
                const double m = static_cast<double>(sum[t][c]) / I;
                a.mean[t][c] = m;
                if (s.iterations < 2) {
                    a.ci95[t][c] = 0;
                    continue;
                }
                const double ss = static_cast<double>(sumSq[t][c]) - static_cast<double>(sum[t][c]) * m;
                a.ci95[t][c] = 1.96 * std::sqrt(std::max(0.0, ss / (I - 1)) / I);
            }
        }
        a.meanFinal = stats::mean(a.finals);
        a.seFinal = stats::std_error(a.finals);
        return a;
    } catch (const std::exception& e) {
        throw with_context(s, e);
    }
}

SweepResult run_sweep(const Scenario& s, const RunConfig& config)
{
    NetworkCache local;
    NetworkCache& cache = config.cache ? *config.cache : local;
    try {
        s.validate();
        if (!s.sweep) throw std::invalid_argument("scenario has no dMin sweep");
        const auto values = s.sweep->values();
        std::vector<engine::PathogenParams> cells;
        for (const Seconds v : values) {
            auto p = s.pathogen;
            p.dMin = v;
            p.validate();
            cells.push_back(p);
        }
        warm_cache(s, cache);

        SweepResult out;
        out.cells.resize(values.size());
        for (std::size_t c = 0; c < values.size(); ++c) {
            out.cells[c].dMin = values[c];
            out.cells[c].finals.resize(s.iterations);
        }
        for_each_iteration(s.iterations, config.workers, [&](std::size_t i) {
            const auto net = iteration_network(s, i, cache);
            for (std::size_t c = 0; c < cells.size(); ++c) {
                out.cells[c].finals[i] =
                    engine::run(*net, cells[c], s.seeds, iteration_seed(s, i)).final_infected_fraction();
            }
        });
        for (auto& cell : out.cells) cell.box = stats::box_stats(cell.finals);
        return out;
    } catch (const std::exception& e) {
        throw with_context(s, e);
    }
}

ScaleKnobs ScaleKnobs::of(Scale scale)
{
    if (scale == Scale::Desk) return {};
    return ScaleKnobs{1000, 10000, 1000, 700, 28};
}

namespace {

constexpr std::uint64_t kMasterSeed = 20210901;
/// Mean number of distinct partners per window in the random networks.
constexpr double kMeanPartners = 4.0;

GeneratedSource random_source(const ScaleKnobs& knobs)
{
    GeneratedSource g;
    g.nodeCount = knobs.nodeCount;
    g.windowCount = knobs.windowCount;
    g.windowDensity = std::min(0.5, kMeanPartners / static_cast<double>(knobs.nodeCount - 1));
    g.poolSize = knobs.nodeCount > 500 ? 2 : 10;
    return g;
}

engine::PathogenParams random_pathogen()
{
    engine::PathogenParams p;
    p.mode = engine::ExposureMode::Uniform;
    p.latencyWindows = 4;
    p.infectiousWindows = 10;
    return p;
}

SyntheticCnsSource cns_source(const ScaleKnobs& knobs)
{
    SyntheticCnsSource c;
    c.cns.participants = knobs.cnsParticipants;
    c.cns.days = knobs.cnsDays;
    c.ingest.windowLength = 86400;
    c.ingest.scanInterval = c.cns.scanInterval;
    return c;
}

engine::PathogenParams cns_pathogen()
{
    engine::PathogenParams p;
    p.mode = engine::ExposureMode::Weighted;
    p.pMax = 0.3;
    // the sweep reaches 120 minutes and dMin may not exceed dMax
    p.dMax = 7200;
    return p;
}

Scenario base(std::string name, std::string description, const ScaleKnobs& knobs)
{
    Scenario s;
    s.name = std::move(name);
    s.description = std::move(description);
    s.iterations = knobs.iterations;
    s.masterSeed = kMasterSeed;
    return s;
}

} // namespace

std::vector<Scenario> builtin_scenarios(const ScaleKnobs& knobs)
{
    std::vector<Scenario> out;
    for (const std::size_t seeds : {2, 10}) {
                const std::string suffix = "-s" + std::to_string(seeds);
        {
            auto s = base("alternating" + suffix,
                          "two disjoint pods of independent random networks, active on alternating windows", knobs);
            s.source = random_source(knobs);
            s.interventions = {Alternate{PodMode::Regenerate}};
            s.pathogen = random_pathogen();
            s.seeds = engine::SeedSpec{seeds, {0, 1}, {}};
            out.push_back(std::move(s));
        }
        {
            auto s = base("attendance" + suffix, "a random half of the nodes is active every window", knobs);
            s.source = random_source(knobs);
            s.interventions = {Attendance{0.5}};
            s.pathogen = random_pathogen();
            s.seeds = engine::SeedSpec{seeds, {0, 1}, {}};
            out.push_back(std::move(s));
        }
    }
    for (const std::size_t seeds : {2, 10}) {
        for (std::size_t k = 1; k <= 10; ++k) {
            auto s = base("pods-k" + std::to_string(k) + "-s" + std::to_string(seeds),
                          "k disjoint pods, each an independent random network of n/k nodes", knobs);
            s.source = random_source(knobs);
            s.interventions = {SpatialPods{k, PodMode::Regenerate}};
            s.pathogen = random_pathogen();
            s.seeds = engine::SeedSpec{seeds, {0, 1}, {}};
            out.push_back(std::move(s));
        }
    }
    for (std::size_t k = 1; k <= 3; ++k) {
        auto s = base("cns-dilate-k" + std::to_string(k), "campus proximity network with each day split in k",
                      knobs);
        s.source = cns_source(knobs);
        if (k > 1) s.interventions = {Dilate{k, interventions::BoundaryRule::Split}};
        s.pathogen = cns_pathogen();
        s.seeds = engine::SeedSpec{1, {0}, {}};
        out.push_back(std::move(s));
    }
    for (std::size_t k = 1; k <= 3; ++k) {
        auto s = base("cns-sweep-k" + std::to_string(k),
                      "minimal infectious duration swept over 5..120 minutes on the k-dilated campus network", knobs);
        s.source = cns_source(knobs);
        if (k > 1) s.interventions = {Dilate{k, interventions::BoundaryRule::Split}};
        s.pathogen = cns_pathogen();
        s.sweep = SweepSpec{300, 7200, 300};
        s.seeds = engine::SeedSpec{1, {0}, {}};
        out.push_back(std::move(s));
    }
    return out;
}

std::optional<Scenario> find_scenario(const std::string& name, const ScaleKnobs& knobs)
{
    for (auto& s : builtin_scenarios(knobs)) {
        if (s.name == name) return std::move(s);
    }
    return std::nullopt;
}

namespace {

std::ofstream open_output(const std::filesystem::path& file)
{
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out.precision(17);
    return out;
}

} // namespace

void write_curves(const std::filesystem::path& file, const Aggregate& a)
{
    auto out = open_output(file);
    out << "window,mean_S,mean_E,mean_I,mean_R,ci95_S,ci95_E,ci95_I,ci95_R\n";
    for (std::size_t t = 0; t < a.mean.size(); ++t) {
        out << t;
        for (double m : a.mean[t]) out << ',' << m;
        for (double c : a.ci95[t]) out << ',' << c;
        out << '\n';
    }
}

void write_finals(const std::filesystem::path& file, const std::vector<double>& finals)
{
    auto out = open_output(file);
    out << "iteration,infected_fraction\n";
    for (std::size_t i = 0; i < finals.size(); ++i) out << i << ',' << finals[i] << '\n';
}

void write_sweep(const std::filesystem::path& file, const SweepResult& r)
{
    auto out = open_output(file);
    out << "d_min,min,q1,median,q3,max,n_outliers\n";
    for (const auto& c : r.cells) {
        out << c.dMin << ',' << c.box.min << ',' << c.box.q1 << ',' << c.box.median << ',' << c.box.q3 << ','
            << c.box.max << ',' << c.box.outliers.size() << '\n';
    }
}

void write_meta(const std::filesystem::path& file, const Scenario& s, const Aggregate* a, const SweepResult* r)
{
    ordered_json j;
    j["version"] = version();
    j["scenario_hash"] = hex(scenario_hash(s));
    j["scenario"] = to_json(s);
    j["iteration_seeds"] = ordered_json::array();
    for (std::size_t i = 0; i < s.iterations; ++i) j["iteration_seeds"].push_back(iteration_seed(s, i));
    if (a) {
        j["summary"] = ordered_json{{"node_count", a->nodeCount},
                                    {"window_count", a->windowCount},
                                    {"mean_final_infected_fraction", a->meanFinal},
                                    {"se_final_infected_fraction", a->seFinal}};
    }
    if (r) {
        j["sweep_medians"] = ordered_json::array();
        for (const auto& c : r->cells) j["sweep_medians"].push_back({{"d_min_sec", c.dMin}, {"median", c.box.median}});
    }
    auto out = open_output(file);
    out << j.dump(2) << '\n';
}

void write_run(std::ostream& out, const engine::RunResult& r, const engine::PathogenParams& params,
               const engine::SeedSpec& seeds, std::uint64_t runSeed)
{
    ordered_json header;
    header["version"] = version();
    header["node_count"] = r.nodeCount;
    header["pathogen"] = to_json(params);
    header["seeds"] = to_json(seeds);
    header["run_seed"] = runSeed;
    header["placements"] = ordered_json::array();
    for (const auto& p : r.seeds) header["placements"].push_back({{"node", p.node}, {"window", p.window}});
    header["windows_simulated"] = r.windowsSimulated;
    out << "# " << header.dump() << '\n';
    out << "window,S,E,I,R,new_exposures\n";
    for (std::size_t t = 0; t < r.counts.size(); ++t) {
        const auto& c = r.counts[t];
        out << t << ',' << c[0] << ',' << c[1] << ',' << c[2] << ',' << c[3] << ',' << r.newExposures[t] << '\n';
    }
}

void write_exposure_log(std::ostream& out, const engine::RunResult& r)
{
    const auto precision = out.precision(17);
    out << "window,node,n_infectious_contacts,total_duration_sec\n";
    for (const auto& e : r.exposures) {
        out << e.window << ',' << e.node << ',' << e.interactions << ',' << e.totalDuration << '\n';
    }
    out.precision(precision);
}

std::string version()
{
    return TNET_VERSION;
}

} // namespace tnet::harness
