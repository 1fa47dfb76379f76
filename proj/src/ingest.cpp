#include "tnet/ingest.hpp"

#include "tnet/csv.hpp"
#include "tnet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

namespace tnet::ingest {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

ParseResult parse_scans(std::istream& in)
{
    ParseResult out;
    csv::Reader reader(in, {"timestamp", "user_a", "user_b", "rssi"});
    bool monotone = true;
    std::int64_t last = std::numeric_limits<std::int64_t>::min();
    while (auto row = reader.next()) {
        ProximityRecord r;
        r.timestamp = row->get<std::int64_t>(0);
        r.userA = row->get<std::int64_t>(1);
        r.userB = row->get<std::int64_t>(2);
        r.rssi = row->get<int>(3);
        if (r.userA < 0) reader.fail("user_a must be non-negative");
        if (r.timestamp < last) monotone = false;
        last = std::max(last, r.timestamp);
        if (r.userB < 0) continue;
        if (r.userA == r.userB) reader.fail("scan of a device by itself");
        if (r.userB < r.userA) std::swap(r.userA, r.userB);
        out.records.push_back(r);
    }
    if (!monotone) out.warnings.emplace_back("timestamps were not non-decreasing; records sorted");

    auto& recs = out.records;
    std::sort(recs.begin(), recs.end(), [](const ProximityRecord& a, const ProximityRecord& b) {
        return std::tie(a.timestamp, a.userA, a.userB, b.rssi) < std::tie(b.timestamp, b.userA, b.userB, a.rssi);
    });
    // strongest rssi sorts first within an equal (t, pair) run
    recs.erase(std::unique(recs.begin(), recs.end(),
                           [](const ProximityRecord& a, const ProximityRecord& b) {
                               return a.timestamp == b.timestamp && a.userA == b.userA && a.userB == b.userB;
                           }),
               recs.end());
    return out;
}

ParseResult parse_scans(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    return parse_scans(in);
}

void IngestConfig::validate() const
{
    if (scanInterval <= 0) throw std::invalid_argument("scan interval must be positive");
    if (windowLength <= 0 || windowLength % scanInterval != 0) {
        throw std::invalid_argument("window length must be a positive multiple of the scan interval");
    }
    if (maxGap < 0) throw std::invalid_argument("maxGap must be non-negative");
}

std::vector<Meeting> reconstruct_meetings(const std::vector<ProximityRecord>& records, const IngestConfig& config)
{
    config.validate();
    std::vector<ProximityRecord> kept;
    kept.reserve(records.size());
    for (auto r : records) {
        if (r.userB < 0) continue;
        if (config.rssiMin && r.rssi < *config.rssiMin) continue;
        if (r.userB < r.userA) std::swap(r.userA, r.userB);
        kept.push_back(r);
    }
    std::sort(kept.begin(), kept.end(), [](const ProximityRecord& a, const ProximityRecord& b) {
        return std::tie(a.userA, a.userB, a.timestamp) < std::tie(b.userA, b.userB, b.timestamp);
    });

    const std::int64_t bridge = config.scanInterval * (1 + config.maxGap);
    std::vector<Meeting> meetings;
    std::size_t i = 0;
    while (i < kept.size()) {
        const auto& head = kept[i];
        std::int64_t lastHit = head.timestamp;
        std::size_t j = i + 1;
        while (j < kept.size() && kept[j].userA == head.userA && kept[j].userB == head.userB &&
               kept[j].timestamp - lastHit <= bridge) {
            lastHit = kept[j].timestamp;
            ++j;
        }
        meetings.push_back({head.userA, head.userB, head.timestamp, lastHit - head.timestamp + config.scanInterval});
        i = j;
    }
    return meetings;
}

IngestResult build_network(const std::vector<ProximityRecord>& records, const IngestConfig& config)
{
    config.validate();
    IngestResult out{TemporalNetwork::empty(1, 1, static_cast<double>(config.windowLength)), {}, 0, {}};

    std::set<std::int64_t> participants;
    for (const auto& r : records) {
        participants.insert(r.userA);
        if (r.userB >= 0) participants.insert(r.userB);
    }
    const auto meetings = reconstruct_meetings(records, config);
    if (participants.empty()) {
        out.warnings.emplace_back("no participants in input; emitting a one-node empty network");
        return out;
    }
    out.nodeMap.assign(participants.begin(), participants.end());
    std::map<std::int64_t, NodeId> dense;
    for (std::size_t i = 0; i < out.nodeMap.size(); ++i) dense[out.nodeMap[i]] = static_cast<NodeId>(i);

    const std::int64_t W = config.windowLength;
    if (meetings.empty()) {
        out.warnings.emplace_back("no meetings left after filtering; network is empty");
        out.origin = config.origin.value_or(0);
        out.network = TemporalNetwork::empty(out.nodeMap.size(), 1, static_cast<double>(W));
        return out;
    }

    std::int64_t first = meetings.front().start;
    std::int64_t last = meetings.front().start + meetings.front().duration;
    for (const auto& m : meetings) {
        first = std::min(first, m.start);
        last = std::max(last, m.start + m.duration);
    }
    out.origin = config.origin.value_or(floor_div(first, W) * W);
    if (first < out.origin) throw std::invalid_argument("meetings start before the configured origin");
    const auto windowCount = static_cast<std::size_t>(floor_div(last - out.origin + W - 1, W));

    std::vector<SnapshotGraph> windows(windowCount);
    for (std::size_t tau = 0; tau < windowCount; ++tau) {
        windows[tau].index = tau;
        windows[tau].windowLength = static_cast<double>(W);
    }
    for (const auto& m : meetings) {
        const NodeId a = dense.at(m.userA);
        const NodeId b = dense.at(m.userB);
        std::int64_t start = m.start - out.origin;
        const std::int64_t end = start + m.duration;
        while (start < end) {
            const std::int64_t w = start / W;
            const std::int64_t stop = std::min(end, (w + 1) * W);
            windows[static_cast<std::size_t>(w)].events.push_back(
                {a, b, static_cast<double>(start - w * W), static_cast<double>(stop - start)});
            start = stop;
        }
    }
    out.network = TemporalNetwork(out.nodeMap.size(), std::move(windows), /*weighted=*/true);
    return out;
}

void write_node_map(const std::filesystem::path& dir, const std::vector<std::int64_t>& nodeMap)
{
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "node_map.csv");
    if (!out) throw std::runtime_error("cannot write node map");
    out << "node,participant\n";
    for (std::size_t i = 0; i < nodeMap.size(); ++i) out << i << ',' << nodeMap[i] << '\n';
}

void write_scans(std::ostream& out, const std::vector<ProximityRecord>& records)
{
    out << "timestamp,user_a,user_b,rssi\n";
    for (const auto& r : records) out << r.timestamp << ',' << r.userA << ',' << r.userB << ',' << r.rssi << '\n';
}

std::vector<ProximityRecord> scans_from_meetings(const std::vector<Meeting>& meetings, std::int64_t scanInterval,
                                                 int rssi)
{
    std::vector<ProximityRecord> out;
    for (const auto& m : meetings) {
        for (std::int64_t t = m.start; t < m.start + m.duration; t += scanInterval) {
            out.push_back({t, m.userA, m.userB, rssi});
        }
    }
    std::sort(out.begin(), out.end(), [](const ProximityRecord& a, const ProximityRecord& b) {
        return std::tie(a.timestamp, a.userA, a.userB) < std::tie(b.timestamp, b.userA, b.userB);
    });
    return out;
}

namespace {

struct Interval {
    std::int64_t start;
    std::int64_t end;
};

using PairKey = std::pair<std::int64_t, std::int64_t>;

PairKey key(std::int64_t a, std::int64_t b)
{
    return a < b ? PairKey{a, b} : PairKey{b, a};
}

} // namespace

SyntheticScans synthesize_cns(const SyntheticCnsConfig& c)
{
    if (c.participants < 2) throw std::invalid_argument("need at least two participants");
    if (c.scanInterval <= 0 || 86400 % c.scanInterval != 0) {
        throw std::invalid_argument("scan interval must divide a day");
    }
    if (c.groupSize < 2) throw std::invalid_argument("group size must be at least 2");

    SplitMix64 rng(c.seed);
    const auto n = c.participants;
    const std::int64_t s = c.scanInterval;
    const std::int64_t day = 86400;
    auto scans = [&](double minutes) { return std::max<std::int64_t>(1, std::llround(minutes * 60.0 / s)) * s; };
    auto uniform_slot = [&](std::int64_t fromSec, std::int64_t toSec) {
        const auto slots = static_cast<std::uint64_t>((toSec - fromSec) / s);
        return fromSec + static_cast<std::int64_t>(rng.below(slots)) * s;
    };

    // stable structure: study groups, friendships, per-person sociability
    std::vector<std::int64_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    shuffle(std::span<std::int64_t>(order), rng);
    std::vector<std::vector<std::int64_t>> groups;
    for (std::size_t i = 0; i < n; i += c.groupSize) {
        groups.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                            order.begin() + static_cast<std::ptrdiff_t>(std::min(n, i + c.groupSize)));
    }
    std::set<PairKey> friendships;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t f = 0; f < c.friendsPerNode; ++f) {
            const auto b = static_cast<std::int64_t>(rng.below(n));
            if (b != static_cast<std::int64_t>(a)) friendships.insert(key(static_cast<std::int64_t>(a), b));
        }
    }
    std::lognormal_distribution<double> sociability(0.0, 0.5);
    std::vector<double> activity(n);
    for (auto& x : activity) x = sociability(rng);

    std::lognormal_distribution<double> sessionMinutes(std::log(c.sessionMinutes), 0.35);
    std::lognormal_distribution<double> friendMinutes(std::log(c.friendMinutes), 0.7);
    std::geometric_distribution<int> shortScans(0.45);

    std::map<PairKey, std::vector<Interval>> contact;
    for (std::size_t d = 0; d < c.days; ++d) {
        const std::int64_t t0 = static_cast<std::int64_t>(d) * day;
        const bool weekday = d % 7 < 5;

        if (weekday) {
            for (const auto& group : groups) {
                const double whole = std::floor(c.sessionsPerWeekday);
                const int sessions = static_cast<int>(whole) + (rng.uniform() < c.sessionsPerWeekday - whole ? 1 : 0);
                for (int k = 0; k < sessions; ++k) {
                    const std::int64_t start = uniform_slot(t0 + 8 * 3600, t0 + 16 * 3600);
                    const std::int64_t length = scans(std::clamp(sessionMinutes(rng), 30.0, 240.0));
                    std::vector<std::pair<std::int64_t, Interval>> present;
                    for (auto member : group) {
                        if (rng.uniform() >= c.attendance) continue;
                        const std::int64_t in = start + static_cast<std::int64_t>(rng.below(3)) * s;
                        const std::int64_t out = start + length - static_cast<std::int64_t>(rng.below(3)) * s;
                        if (out > in) present.push_back({member, {in, out}});
                    }
                    for (std::size_t i = 0; i < present.size(); ++i) {
                        for (std::size_t j = i + 1; j < present.size(); ++j) {
                            const auto lo = std::max(present[i].second.start, present[j].second.start);
                            const auto hi = std::min(present[i].second.end, present[j].second.end);
                            if (hi > lo) contact[key(present[i].first, present[j].first)].push_back({lo, hi});
                        }
                    }
                }
            }
        }

        for (const auto& [a, b] : friendships) {
            const double p = c.friendMeetProbability * (weekday ? 1.0 : 2.0) *
                             std::sqrt(activity[static_cast<std::size_t>(a)] * activity[static_cast<std::size_t>(b)]);
            if (rng.uniform() >= std::min(1.0, p)) continue;
            const std::int64_t start = uniform_slot(t0 + 17 * 3600, t0 + 22 * 3600);
            const std::int64_t length = std::min(scans(std::clamp(friendMinutes(rng), 15.0, 420.0)), t0 + day - start);
            contact[key(a, b)].push_back({start, start + length});
        }

        for (std::size_t a = 0; a < n; ++a) {
            std::poisson_distribution<int> encounters(0.5 * c.encountersPerDay * activity[a] * (weekday ? 1.0 : 0.5));
            const int count = encounters(rng);
            for (int k = 0; k < count; ++k) {
                const auto b = static_cast<std::int64_t>(rng.below(n));
                if (b == static_cast<std::int64_t>(a)) continue;
                const std::int64_t start = uniform_slot(t0 + 8 * 3600, t0 + 21 * 3600);
                const std::int64_t length = (1 + shortScans(rng)) * s;
                contact[key(static_cast<std::int64_t>(a), b)].push_back({start, start + length});
            }
        }
    }

    SyntheticScans out;
    for (auto& [pair, intervals] : contact) {
        std::sort(intervals.begin(), intervals.end(),
                  [](const Interval& x, const Interval& y) { return x.start < y.start; });
        // touching or overlapping intervals are indistinguishable in scans
        Interval cur = intervals.front();
        for (std::size_t i = 1; i <= intervals.size(); ++i) {
            if (i < intervals.size() && intervals[i].start <= cur.end) {
                cur.end = std::max(cur.end, intervals[i].end);
                continue;
            }
            out.meetings.push_back({pair.first, pair.second, cur.start, cur.end - cur.start});
            if (i < intervals.size()) cur = intervals[i];
        }
    }

    std::uniform_int_distribution<int> rssi(-95, -50);
    for (const auto& m : out.meetings) {
        for (std::int64_t t = m.start; t < m.start + m.duration; t += s) {
            out.records.push_back({t, m.userA, m.userB, rssi(rng)});
            out.records.push_back({t, m.userB, m.userA, rssi(rng)});
        }
    }
    const auto totalScans = static_cast<double>(n) * static_cast<double>(c.days) * static_cast<double>(day / s);
    const auto empties = static_cast<std::size_t>(c.emptyScanRate * totalScans);
    for (std::size_t k = 0; k < empties; ++k) {
        const auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(c.days) * (day / s))) * s;
        out.records.push_back({t, static_cast<std::int64_t>(rng.below(n)), -1, 0});
    }
    std::sort(out.records.begin(), out.records.end(), [](const ProximityRecord& a, const ProximityRecord& b) {
        return std::tie(a.timestamp, a.userA, a.userB) < std::tie(b.timestamp, b.userA, b.userB);
    });
    return out;
}

} // namespace tnet::ingest
