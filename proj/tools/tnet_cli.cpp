#include "tnet/engine.hpp"
#include "tnet/harness.hpp"
#include "tnet/ingest.hpp"
#include "tnet/interventions.hpp"
#include "tnet/netgen.hpp"
#include "tnet/network_io.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace tnet;

namespace {

std::ofstream open_file(const fs::path& file)
{
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    return out;
}

void write_density_series(const fs::path& file, const TemporalNetwork& net)
{
    auto out = open_file(file);
    out << "window,density\n";
    const auto d = density_series(net);
    for (std::size_t t = 0; t < d.size(); ++t) out << t << ',' << format_number(d[t]) << '\n';
}

const char* const kScaleHelp = "desk: n=200, L=500, 200 iterations; paper (alias full): n=1000, L=10000, 1000 iterations";
const CLI::IsMember kScales({"desk", "paper", "full"});

harness::ScaleKnobs knobs_for(const std::string& scale)
{
    return harness::ScaleKnobs::of(scale == "desk" ? harness::Scale::Desk : harness::Scale::Full);
}

harness::Scenario lookup(const std::string& name, const std::string& scale)
{
    auto s = harness::find_scenario(name, knobs_for(scale));
    if (!s) throw std::invalid_argument("unknown scenario '" + name + "' (see list-scenarios)");
    return *s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Temporal-network SEIR contagion simulator"};
    app.set_version_flag("--version", harness::version());
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Markov edge random temporal network");
    std::size_t genNodes = 0, genWindows = 0, genSteps = 288;
    double genDensity = 0, genVanish = 0.2, genWindowSec = 86400;
    std::uint64_t genSeed = 0, genBurn = 0;
    bool genStepDensity = false;
    fs::path genOut;
    gen->add_option("--nodes", genNodes, "node count")->required();
    gen->add_option("--windows", genWindows, "window count")->required();
    gen->add_option("--density", genDensity, "fraction of pairs meeting per window")->required();
    gen->add_option("--p-vanish", genVanish, "per-step removal probability");
    gen->add_option("--steps-per-window", genSteps, "chain steps per window");
    gen->add_option("--seed", genSeed, "generator seed");
    gen->add_option("--burn-in", genBurn, "steps discarded before window 0");
    gen->add_option("--window-sec", genWindowSec, "window length in seconds");
    gen->add_flag("--step-density", genStepDensity, "interpret --density as per-step occupancy");
    gen->add_option("--out", genOut, "output directory")->required();

    // transform
    auto* tr = app.add_subcommand("transform", "apply an intervention to a network");
    std::string trPolicy, trBoundary = "split";
    std::size_t trK = 2;
    double trFraction = 0.5;
    std::uint64_t trSeed = 0;
    fs::path trIn, trOut;
    tr->add_option("--policy", trPolicy, "spatial | dilate | alternate | attendance")
        ->required()
        ->check(CLI::IsMember({"spatial", "dilate", "alternate", "attendance"}));
    tr->add_option("--k", trK, "pod count or dilation factor");
    tr->add_option("--fraction", trFraction, "attending fraction");
    tr->add_option("--seed", trSeed, "seed for random partitions");
    tr->add_option("--boundary", trBoundary, "dilation boundary rule")->check(CLI::IsMember({"split", "start"}));
    tr->add_option("--in", trIn, "input network directory")->required();
    tr->add_option("--out", trOut, "output directory")->required();

    // ingest
    auto* ing = app.add_subcommand("ingest", "proximity scans to a temporal network");
    fs::path ingIn, ingOut;
    ingest::IngestConfig ingConfig;
    std::optional<int> ingRssi;
    std::optional<std::int64_t> ingOrigin;
    ing->add_option("--in", ingIn, "scan CSV")->required();
    ing->add_option("--scan-interval", ingConfig.scanInterval, "seconds between scans");
    ing->add_option("--rssi-min", ingRssi, "drop hits weaker than this (dBm)");
    ing->add_option("--window-sec", ingConfig.windowLength, "window length in seconds");
    ing->add_option("--max-gap", ingConfig.maxGap, "missed scans bridged inside a meeting");
    ing->add_option("--origin", ingOrigin, "timestamp of the start of window 0");
    ing->add_option("--out", ingOut, "output directory")->required();

    // synth-cns
    auto* syn = app.add_subcommand("synth-cns", "write synthetic campus proximity scans");
    ingest::SyntheticCnsConfig synConfig;
    fs::path synOut;
    syn->add_option("--participants", synConfig.participants);
    syn->add_option("--days", synConfig.days);
    syn->add_option("--seed", synConfig.seed);
    syn->add_option("--out", synOut, "scan CSV to write")->required();

    // run
    auto* run = app.add_subcommand("run", "single engine run on a network");
    fs::path runIn, runOut;
    engine::PathogenParams runParams;
    engine::SeedSpec runSeeds;
    std::string runMode = "weighted";
    std::uint64_t runSeed = 0;
    run->add_option("--in", runIn, "network directory")->required();
    run->add_option("--mode", runMode, "uniform | weighted")->check(CLI::IsMember({"uniform", "weighted"}));
    run->add_option("--p-max", runParams.pMax);
    run->add_option("--d-min", runParams.dMin, "seconds");
    run->add_option("--d-max", runParams.dMax, "seconds");
    run->add_option("--p-epsilon", runParams.pEpsilon);
    run->add_option("--latency", runParams.latencyWindows, "windows");
    run->add_option("--infectious", runParams.infectiousWindows, "windows");
    run->add_option("--seeds", runSeeds.count, "number of initial patients");
    run->add_option("--seed-windows", runSeeds.placementWindows, "windows eligible for seeding");
    run->add_option("--seed-nodes", runSeeds.nodes, "fixed initial patients");
    run->add_option("--seed", runSeed, "run seed");
    run->add_option("--out", runOut, "output directory")->required();

    // simulate / sweep / list-scenarios
    std::string scenarioName, scale = "desk";
    int workers = 0;
    std::optional<std::size_t> iterations;
    fs::path simOut;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo over a built-in scenario");
    auto* swp = app.add_subcommand("sweep", "dMin sweep of a built-in scenario");
    for (auto* sub : {sim, swp}) {
        sub->add_option("--scenario", scenarioName, "scenario name")->required();
        sub->add_option("--scale", scale, kScaleHelp)->check(kScales);
        sub->add_option("--workers", workers, "worker threads (0: all)");
        sub->add_option("--iterations", iterations, "override the iteration count");
        sub->add_option("--out", simOut, "output directory")->required();
    }
    auto* list = app.add_subcommand("list-scenarios", "print the built-in catalog");
    list->add_option("--scale", scale, kScaleHelp)->check(kScales);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            netgen::GenSpec spec;
            spec.nodeCount = genNodes;
            spec.windowCount = genWindows;
            spec.params = genStepDensity ? netgen::from_target_density(genDensity, genVanish, genSteps)
                                         : netgen::from_window_density(genDensity, genVanish, genSteps);
            spec.seed = genSeed;
            spec.burnIn = genBurn;
            spec.windowLength = genWindowSec;
            const auto net = netgen::generate(spec);
            write_network(genOut, net);
            write_density_series(genOut / "density_series.csv", net);
            std::cout << "wrote " << net.event_count() << " events to " << genOut.string() << '\n';
        } else if (*tr) {
            const auto net = read_network(trIn);
            SplitMix64 rng(trSeed);
            if (trPolicy == "spatial") {
                const auto pods = interventions::spatial_pods(net, trK, rng);
                for (std::size_t p = 0; p < pods.size(); ++p) {
                    write_network(trOut / ("pod-" + std::to_string(p)), pods[p]);
                }
            } else if (trPolicy == "dilate") {
                const auto rule = trBoundary == "split" ? interventions::BoundaryRule::Split
                                                        : interventions::BoundaryRule::AssignToStart;
                write_network(trOut, interventions::temporal_dilation(net, trK, rule));
            } else if (trPolicy == "alternate") {
                write_network(trOut, interventions::alternating_pods(net, rng));
            } else {
                write_network(trOut, interventions::random_attendance(net, trFraction, rng));
            }
        } else if (*ing) {
            ingConfig.rssiMin = ingRssi;
            ingConfig.origin = ingOrigin;
            auto parsed = ingest::parse_scans(ingIn);
            auto result = ingest::build_network(parsed.records, ingConfig);
            for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << '\n';
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
            write_network(ingOut, result.network);
            ingest::write_node_map(ingOut, result.nodeMap);
            std::cout << "wrote " << result.network.node_count() << " nodes, " << result.network.window_count()
                      << " windows, " << result.network.event_count() << " events to " << ingOut.string() << '\n';
        } else if (*syn) {
            const auto scans = ingest::synthesize_cns(synConfig);
            auto out = open_file(synOut);
            ingest::write_scans(out, scans.records);
        } else if (*run) {
            runParams.mode = runMode == "uniform" ? engine::ExposureMode::Uniform : engine::ExposureMode::Weighted;
            const auto net = read_network(runIn);
            const auto r = engine::run(net, runParams, runSeeds, runSeed, {.logExposures = true});
            auto runFile = open_file(runOut / "run.csv");
            harness::write_run(runFile, r, runParams, runSeeds, runSeed);
            auto logFile = open_file(runOut / "exposures.csv");
            harness::write_exposure_log(logFile, r);
            std::cout << "final infected fraction " << r.final_infected_fraction() << '\n';
        } else if (*sim || *swp) {
            auto s = lookup(scenarioName, scale);
            if (iterations) s.iterations = *iterations;
            const harness::RunConfig config{workers, nullptr};
            if (*sim) {
                const auto a = harness::run_scenario(s, config);
                harness::write_curves(simOut / "curves.csv", a);
                harness::write_finals(simOut / "finals.csv", a.finals);
                harness::write_meta(simOut / "meta.json", s, &a, nullptr);
                std::cout << s.name << ": mean final infected fraction " << a.meanFinal << " (se " << a.seFinal
                          << ")\n";
            } else {
                const auto r = harness::run_sweep(s, config);
                harness::write_sweep(simOut / "sweep.csv", r);
                {
                    auto out = open_file(simOut / "sweep_finals.csv");
                    out.precision(17);
                    out << "d_min,iteration,infected_fraction\n";
                    for (const auto& c : r.cells) {
                        for (std::size_t i = 0; i < c.finals.size(); ++i) {
                            out << c.dMin << ',' << i << ',' << c.finals[i] << '\n';
                        }
                    }
                }
                harness::write_meta(simOut / "meta.json", s, nullptr, &r);
                for (const auto& c : r.cells) {
                    std::cout << "d_min " << c.dMin << " s: median " << c.box.median << '\n';
                }
            }
        } else if (*list) {
            for (const auto& s : harness::builtin_scenarios(knobs_for(scale))) {
                std::cout << s.name << (s.sweep ? " [sweep]" : "") << "  " << s.description << '\n';
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
