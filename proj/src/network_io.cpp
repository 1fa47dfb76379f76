#include "tnet/network_io.hpp"

#include "tnet/csv.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace tnet {

std::string format_number(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc{}) throw std::runtime_error("cannot format number");
    return std::string(buf, res.ptr);
}

void write_events_csv(std::ostream& out, const TemporalNetwork& net)
{
    out << "window,u,v,offset_sec,duration_sec\n";
    for (const auto& g : net.windows()) {
        for (const auto& e : g.events) {
            out << g.index << ',' << e.u << ',' << e.v << ',' << format_number(e.offset) << ','
                << format_number(e.duration) << '\n';
        }
    }
}

std::string sidecar_json(const TemporalNetwork& net)
{
    nlohmann::ordered_json j;
    j["node_count"] = net.node_count();
    j["window_length_sec"] = net.window_count() ? net.window(0).windowLength : 0.0;
    j["window_count"] = net.window_count();
    j["weighted"] = net.weighted();
    bool uniform = true;
    for (const auto& g : net.windows()) uniform = uniform && g.windowLength == net.window(0).windowLength;
    if (!uniform) {
        auto lengths = nlohmann::json::array();
        for (const auto& g : net.windows()) lengths.push_back(g.windowLength);
        j["window_lengths_sec"] = lengths;
    }
    return j.dump(2) + "\n";
}

TemporalNetwork read_network(std::istream& sidecar, std::istream& events)
{
    nlohmann::json meta;
    try {
        sidecar >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("network sidecar: ") + e.what());
    }
    const auto nodeCount = meta.at("node_count").get<std::size_t>();
    const auto windowCount = meta.at("window_count").get<std::size_t>();
    const auto windowLength = meta.at("window_length_sec").get<double>();
    const bool weighted = meta.value("weighted", true);

    std::vector<SnapshotGraph> windows(windowCount);
    for (std::size_t tau = 0; tau < windowCount; ++tau) {
        windows[tau].index = tau;
        windows[tau].windowLength = windowLength;
    }
    if (meta.contains("window_lengths_sec")) {
        const auto& lengths = meta["window_lengths_sec"];
        if (lengths.size() != windowCount) throw std::runtime_error("network sidecar: window_lengths_sec size mismatch");
        for (std::size_t tau = 0; tau < windowCount; ++tau) windows[tau].windowLength = lengths[tau].get<double>();
    }

    csv::Reader reader(events, {"window", "u", "v", "offset_sec", "duration_sec"});
    while (auto row = reader.next()) {
        const auto tau = row->get<std::size_t>(0);
        if (tau >= windowCount) reader.fail("window " + std::to_string(tau) + " beyond window_count");
        ContactEvent e;
        e.u = row->get<NodeId>(1);
        e.v = row->get<NodeId>(2);
        e.offset = row->get<double>(3);
        e.duration = row->get<double>(4);
        if (e.u == e.v) reader.fail("self loop");
        if (std::max(e.u, e.v) >= nodeCount) reader.fail("endpoint outside node universe");
        if (!(e.duration > 0)) reader.fail("duration must be positive");
        if (e.offset < 0 || e.offset + e.duration > windows[tau].windowLength) reader.fail("event exceeds its window");
        windows[tau].events.push_back(e);
    }
    return TemporalNetwork(nodeCount, std::move(windows), weighted);
}

void write_network(const std::filesystem::path& dir, const TemporalNetwork& net)
{
    std::filesystem::create_directories(dir);
    std::ofstream events(dir / kEventsFile);
    if (!events) throw std::runtime_error("cannot write " + (dir / kEventsFile).string());
    write_events_csv(events, net);
    std::ofstream meta(dir / kSidecarFile);
    if (!meta) throw std::runtime_error("cannot write " + (dir / kSidecarFile).string());
    meta << sidecar_json(net);
}

TemporalNetwork read_network(const std::filesystem::path& dir)
{
    std::ifstream meta(dir / kSidecarFile);
    if (!meta) throw std::runtime_error("cannot open " + (dir / kSidecarFile).string());
    std::ifstream events(dir / kEventsFile);
    if (!events) throw std::runtime_error("cannot open " + (dir / kEventsFile).string());
    return read_network(meta, events);
}

} // namespace tnet
