#pragma once

#include "tnet/network.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tnet::ingest {

/// One Bluetooth proximity scan hit. Negative userB codes mark empty scans or
/// non-participants.
struct ProximityRecord {
    std::int64_t timestamp = 0; // seconds
    std::int64_t userA = 0;
    std::int64_t userB = 0;
    int rssi = 0; // dBm

    friend bool operator==(const ProximityRecord&, const ProximityRecord&) = default;
};

struct ParseResult {
    std::vector<ProximityRecord> records;
    std::vector<std::string> warnings;
};

/// Parse `timestamp,user_a,user_b,rssi`. Drops rows with negative user_b,
/// canonicalizes pairs (userA < userB), collapses duplicate (t, pair) keeping
/// the strongest rssi, and returns records sorted by (timestamp, pair).
/// Malformed rows throw csv::ParseError with the line number; out-of-order
/// timestamps are sorted and reported as a warning.
ParseResult parse_scans(std::istream& in);
ParseResult parse_scans(const std::filesystem::path& file);

struct IngestConfig {
    std::int64_t scanInterval = 300;
    /// Keep hits with rssi >= rssiMin; unset keeps everything.
    std::optional<int> rssiMin;
    std::int64_t windowLength = 86400;
    /// Number of consecutive missed scans still bridged inside one meeting.
    std::int64_t maxGap = 0;
    /// Start of window 0; unset means the window boundary at or before the
    /// first kept hit.
    std::optional<std::int64_t> origin;

    void validate() const;
};

/// A reconstructed meeting on original participant ids.
struct Meeting {
    std::int64_t userA = 0;
    std::int64_t userB = 0;
    std::int64_t start = 0;
    std::int64_t duration = 0;

    friend bool operator==(const Meeting&, const Meeting&) = default;
};

/// Merge per-pair hits spaced at most scanInterval (1 + maxGap) apart. A run
/// of hits first..last lasts (last - first) + scanInterval. Sorted by
/// (userA, userB, start).
std::vector<Meeting> reconstruct_meetings(const std::vector<ProximityRecord>& records, const IngestConfig& config);

struct IngestResult {
    TemporalNetwork network;
    /// dense node id -> original participant id
    std::vector<std::int64_t> nodeMap;
    std::int64_t origin = 0;
    std::vector<std::string> warnings;
};

/// Records -> meetings -> windows. Participants are remapped to 0..n-1 in
/// ascending original id. Meetings go to the window containing their start and
/// are split at window boundaries.
IngestResult build_network(const std::vector<ProximityRecord>& records, const IngestConfig& config);

/// Write `node_map.csv` (node,participant) next to a network.
void write_node_map(const std::filesystem::path& dir, const std::vector<std::int64_t>& nodeMap);

/// Synthetic proximity data shaped like a campus study: stable study groups
/// meeting for long sessions on weekdays, a few close friends met in the
/// evenings, and many short chance encounters. Meeting durations come out
/// heavy-tailed (most are a few scans long, some run beyond 200 minutes).
struct SyntheticCnsConfig {
    std::size_t participants = 200;
    std::size_t days = 28;
    std::int64_t scanInterval = 300;
    std::size_t groupSize = 10;
    /// Sessions per group per weekday.
    double sessionsPerWeekday = 1.5;
    /// Median study session length (minutes).
    double sessionMinutes = 160;
    double attendance = 0.85;
    std::size_t friendsPerNode = 3;
    /// Probability of meeting a given friend on a given day.
    double friendMeetProbability = 0.15;
    /// Median evening meeting length (minutes).
    double friendMinutes = 80;
    /// Mean chance encounters per participant per day.
    double encountersPerDay = 6.0;
    /// Share of scans at which an empty-scan row (user_b = -1) is logged.
    double emptyScanRate = 0.02;
    std::uint64_t seed = 1;
};

struct SyntheticScans {
    std::vector<ProximityRecord> records; // both directions, sorted by time
    std::vector<Meeting> meetings;        // ground truth, canonical and merged
};

SyntheticScans synthesize_cns(const SyntheticCnsConfig& config);

/// Render records in the scan CSV format.
void write_scans(std::ostream& out, const std::vector<ProximityRecord>& records);

/// Hits that certify each meeting: one per scan period, at start, start + s, ...
std::vector<ProximityRecord> scans_from_meetings(const std::vector<Meeting>& meetings, std::int64_t scanInterval,
                                                 int rssi = -70);

} // namespace tnet::ingest
