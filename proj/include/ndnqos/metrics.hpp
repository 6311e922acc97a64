#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ndnqos/names.hpp"
#include "ndnqos/types.hpp"

namespace ndnqos {

/// Traffic family of a request: sensor readings pulled by the gateway, or
/// device state pulled by the actuators.
enum class TrafficKind { Gateway, Actuator };

std::string to_string(TrafficKind t);

/// One application request: a name plus up to four retransmissions. Exactly
/// one of completed/failed/censored holds once the run is over.
struct RequestRecord {
    std::uint32_t id = 0;
    NodeId requester = 0;
    Name name;
    ServiceLevel level;            ///< classification at the requester
    TrafficKind traffic = TrafficKind::Actuator;
    int rank = 0;                  ///< requester rank; target rank for gateway polls
    SimTime first_sent = 0;
    SimTime completed_at = -1;
    bool failed = false;
    bool censored = false;         ///< still in flight at the duration cutoff
    int retransmissions = 0;       ///< 0..4, actually sent
    std::uint32_t bytes = 0;       ///< payload bytes on success

    bool completed() const { return completed_at >= 0; }
    SimTime ttc() const { return completed_at - first_sent; }
};

/// Monotone per-node event counters. The *_actuator/_gateway splits count
/// only packets arriving from a neighbor (not locally issued ones), which is
/// what the in-network cache-hit ratio is defined over.
struct NodeCounters {
    std::int64_t interests_in = 0;
    std::int64_t interests_out = 0;
    std::int64_t data_in = 0;
    std::int64_t data_out = 0;
    std::int64_t pit_drops = 0;
    std::int64_t pit_evictions = 0;
    std::int64_t cs_hits = 0;
    std::int64_t cs_evictions = 0;
    std::int64_t queue_drops = 0;
    std::int64_t pitless_cached = 0;
    std::int64_t pitless_dropped = 0;
    std::int64_t no_route = 0;
    std::int64_t dup_drops = 0;
    std::int64_t media_backoffs = 0;
    std::int64_t interests_in_actuator = 0;
    std::int64_t interests_in_gateway = 0;
    std::int64_t cs_hits_actuator = 0;
    std::int64_t cs_hits_gateway = 0;

    /// Stable (name, value) rows for counters.csv.
    std::vector<std::pair<std::string, std::int64_t>> rows() const;
};

/// Echo of the configuration a log was produced under.
struct RunInfo {
    std::string scenario = "s1";
    std::string qos = "regular";
    std::string cache = "always";
    std::size_t pit_size = 5;
    std::size_t gateway_pit = 50;
    std::size_t cs_size = 5;
    std::uint64_t seed = 1;
    int duration_min = 18;
    int warmup_min = 8;
    double p_reg = 0.30;
    double p_rel = 0.70;
};

/// Complete measurement output of one run; every exported figure is a pure
/// function of one of these.
struct MetricsLog {
    RunInfo info;
    std::vector<RequestRecord> requests;
    std::vector<NodeId> node_ids;         ///< dense index -> node id
    std::vector<NodeCounters> counters;   ///< parallel to node_ids
    std::vector<int> node_ranks;          ///< parallel to node_ids
    std::vector<std::int64_t> gw_out_per_min; ///< Interests transmitted by the gateway
    std::vector<std::int64_t> gw_in_per_min;  ///< Data received by the gateway
};

struct RankSuccessRow {
    int rank;
    double success_rate_pct;
};

/// Success = completed / (completed + failed) per rank bucket, censored
/// requests excluded, request-weighted. Empty buckets are omitted.
std::vector<RankSuccessRow> success_by_rank(const MetricsLog& log, TrafficKind traffic);

enum class GoodputScope { Gateway, Rank };

/// Gateway scope: (minute, KiB delivered that minute) for gateway-initiated
/// traffic. Rank scope: (rank, KiB/min per actuator) over the actuator
/// traffic window.
std::vector<std::pair<int, double>> goodput_series(const MetricsLog& log, GoodputScope scope);

struct CdfPoint {
    double t_seconds;
    double fraction;
};

/// Empirical TTC distribution over completed requests; failed requests keep
/// the plateau below 1. Censored requests are excluded entirely.
std::vector<CdfPoint> ttc_cdf(const MetricsLog& log, TrafficKind traffic,
                              std::optional<ServiceLevel> level_filter = std::nullopt);

/// Network-wide in-network hits: 100 * cs_hits / interests processed at
/// non-requester nodes, for the given traffic family.
double cache_hit_ratio(const MetricsLog& log, TrafficKind traffic);

/// Writes success_by_rank.csv, gateway_load.csv, ttc.csv, cache_hits.csv and
/// counters.csv into out_dir ('.' decimals, LF endings, fixed header text).
void export_csv(const MetricsLog& log, const std::filesystem::path& out_dir);

/// Deterministic number formatting shared by all CSV writers.
std::string csv_num(double v);

} // namespace ndnqos
