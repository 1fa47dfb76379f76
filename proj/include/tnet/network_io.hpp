#pragma once

#include "tnet/network.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace tnet {

/// File names used inside a network directory.
inline constexpr const char* kEventsFile = "events.csv";
inline constexpr const char* kSidecarFile = "network.json";

/// Canonical event CSV: header `window,u,v,offset_sec,duration_sec`, one row per
/// event, windows ascending, canonical order inside a window. Numbers use the
/// shortest round-trip representation, so parse(write(net)) == net bit-exactly.
void write_events_csv(std::ostream& out, const TemporalNetwork& net);

/// Metadata sidecar: `{node_count, window_length_sec, window_count, weighted}`.
/// A `window_lengths_sec` array is added only when window lengths differ.
std::string sidecar_json(const TemporalNetwork& net);

/// Rebuild a network from a sidecar and an event CSV. Errors carry line numbers.
TemporalNetwork read_network(std::istream& sidecar, std::istream& events);

void write_network(const std::filesystem::path& dir, const TemporalNetwork& net);
TemporalNetwork read_network(const std::filesystem::path& dir);

/// Shortest round-trip decimal rendering of a double.
std::string format_number(double value);

} // namespace tnet
