#include "ndnqos/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

namespace ndnqos {

std::string to_string(TrafficKind t) {
    return t == TrafficKind::Gateway ? "gateway" : "actuator";
}

std::vector<std::pair<std::string, std::int64_t>> NodeCounters::rows() const {
    return {
        {"interests_in", interests_in},
        {"interests_out", interests_out},
        {"data_in", data_in},
        {"data_out", data_out},
        {"pit_drops", pit_drops},
        {"pit_evictions", pit_evictions},
        {"cs_hits", cs_hits},
        {"cs_evictions", cs_evictions},
        {"queue_drops", queue_drops},
        {"pitless_cached", pitless_cached},
        {"pitless_dropped", pitless_dropped},
        {"no_route", no_route},
        {"dup_drops", dup_drops},
        {"media_backoffs", media_backoffs},
        {"interests_in_actuator", interests_in_actuator},
        {"interests_in_gateway", interests_in_gateway},
        {"cs_hits_actuator", cs_hits_actuator},
        {"cs_hits_gateway", cs_hits_gateway},
    };
}

std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<RankSuccessRow> success_by_rank(const MetricsLog& log, TrafficKind traffic) {
    std::map<int, std::pair<std::int64_t, std::int64_t>> buckets; // rank -> (completed, failed)
    for (const auto& r : log.requests) {
        if (r.traffic != traffic || r.censored)
            continue;
        auto& [done, lost] = buckets[r.rank];
        if (r.completed())
            ++done;
        else if (r.failed)
            ++lost;
    }
    std::vector<RankSuccessRow> rows;
    for (const auto& [rank, counts] : buckets) {
        const auto total = counts.first + counts.second;
        if (total == 0)
            continue;
        rows.push_back({rank, 100.0 * static_cast<double>(counts.first) / static_cast<double>(total)});
    }
    return rows;
}

std::vector<std::pair<int, double>> goodput_series(const MetricsLog& log, GoodputScope scope) {
    std::vector<std::pair<int, double>> rows;
    if (scope == GoodputScope::Gateway) {
        std::map<int, std::int64_t> bytes_per_min;
        for (const auto& r : log.requests) {
            if (r.traffic != TrafficKind::Gateway || !r.completed())
                continue;
            bytes_per_min[static_cast<int>(r.completed_at / 60000)] += r.bytes;
        }
        for (int m = 0; m < log.info.duration_min; ++m) {
            const auto it = bytes_per_min.find(m);
            const double kib = it == bytes_per_min.end() ? 0.0 : static_cast<double>(it->second) / 1024.0;
            rows.emplace_back(m, kib);
        }
        return rows;
    }

    // Rank scope: actuator traffic, KiB/min per actuator at that rank.
    const double window_min = std::max(1, log.info.duration_min - log.info.warmup_min);
    std::map<int, std::int64_t> bytes_per_rank;
    std::map<int, int> nodes_per_rank;
    for (std::size_t n = 0; n < log.node_ranks.size(); ++n)
        if (log.node_ranks[n] > 0)
            ++nodes_per_rank[log.node_ranks[n]];
    for (const auto& r : log.requests) {
        if (r.traffic != TrafficKind::Actuator || !r.completed())
            continue;
        bytes_per_rank[r.rank] += r.bytes;
    }
    for (const auto& [rank, count] : nodes_per_rank) {
        const auto it = bytes_per_rank.find(rank);
        const double kib = it == bytes_per_rank.end() ? 0.0 : static_cast<double>(it->second) / 1024.0;
        rows.emplace_back(rank, kib / window_min / count);
    }
    return rows;
}

std::vector<CdfPoint> ttc_cdf(const MetricsLog& log, TrafficKind traffic,
                              std::optional<ServiceLevel> level_filter) {
    std::vector<double> done;
    std::int64_t total = 0;
    for (const auto& r : log.requests) {
        if (r.traffic != traffic || r.censored)
            continue;
        if (level_filter && r.level != *level_filter)
            continue;
        ++total;
        if (r.completed())
            done.push_back(static_cast<double>(r.ttc()) / 1000.0);
    }
    std::sort(done.begin(), done.end());
    std::vector<CdfPoint> cdf;
    for (std::size_t i = 0; i < done.size(); ++i) {
        if (!cdf.empty() && cdf.back().t_seconds == done[i]) {
            cdf.back().fraction = static_cast<double>(i + 1) / static_cast<double>(total);
        } else {
            cdf.push_back({done[i], static_cast<double>(i + 1) / static_cast<double>(total)});
        }
    }
    return cdf;
}

double cache_hit_ratio(const MetricsLog& log, TrafficKind traffic) {
    std::int64_t hits = 0;
    std::int64_t processed = 0;
    for (const auto& c : log.counters) {
        hits += (traffic == TrafficKind::Actuator) ? c.cs_hits_actuator : c.cs_hits_gateway;
        processed += (traffic == TrafficKind::Actuator) ? c.interests_in_actuator : c.interests_in_gateway;
    }
    if (processed == 0)
        return 0.0;
    return 100.0 * static_cast<double>(hits) / static_cast<double>(processed);
}

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary); // binary keeps LF endings everywhere
    if (!out)
        throw ConfigError("cannot write " + p.string());
    return out;
}

} // namespace

void export_csv(const MetricsLog& log, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    {
        auto out = open_out(out_dir / "success_by_rank.csv");
        out << "rank,pit_size,cs_size,traffic,success_rate_pct\n";
        for (const TrafficKind t : {TrafficKind::Actuator, TrafficKind::Gateway})
            for (const auto& row : success_by_rank(log, t))
                out << row.rank << ',' << log.info.pit_size << ',' << log.info.cs_size << ','
                    << to_string(t) << ',' << csv_num(row.success_rate_pct) << '\n';
    }
    {
        auto out = open_out(out_dir / "gateway_load.csv");
        out << "minute,out_requests,in_responses\n";
        for (std::size_t m = 0; m < log.gw_out_per_min.size(); ++m)
            out << m << ',' << log.gw_out_per_min[m] << ',' << log.gw_in_per_min[m] << '\n';
    }
    {
        auto out = open_out(out_dir / "ttc.csv");
        out << "traffic,rank,class,ttc_ms\n";
        for (const auto& r : log.requests) {
            if (!r.completed())
                continue;
            out << to_string(r.traffic) << ',' << r.rank << ',' << to_string(r.level) << ','
                << r.ttc() << '\n';
        }
    }
    {
        auto out = open_out(out_dir / "cache_hits.csv");
        out << "cs_size,strategy,hit_ratio_pct\n";
        out << log.info.cs_size << ',' << log.info.cache << ','
            << csv_num(cache_hit_ratio(log, TrafficKind::Actuator)) << '\n';
    }
    {
        auto out = open_out(out_dir / "counters.csv");
        out << "node,counter,value\n";
        for (std::size_t n = 0; n < log.counters.size(); ++n)
            for (const auto& [name, value] : log.counters[n].rows())
                out << log.node_ids[n] << ',' << name << ',' << value << '\n';
    }
}

} // namespace ndnqos
