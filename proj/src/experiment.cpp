#include "ndnqos/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ndnqos/metrics.hpp"

namespace ndnqos {

namespace {

const std::vector<std::size_t> kSizeDomain{5, 10, 15, 20, 25, 30};

void check_sizes(const std::vector<std::size_t>& sizes, const std::string& key) {
    if (sizes.empty())
        throw UsageError(key + ": at least one value required");
    for (const auto s : sizes)
        if (std::find(kSizeDomain.begin(), kSizeDomain.end(), s) == kSizeDomain.end())
            throw UsageError(key + ": " + std::to_string(s) + " not in {5,10,15,20,25,30}");
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const auto out = std::stoull(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw UsageError(key + ": not an unsigned integer: '" + v + "'");
    }
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw UsageError(key + ": not a number: '" + v + "'");
    }
}

/// Flat `key = value` lines, '#' comments; repeated keys accumulate.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("config: cannot open " + path.string());
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        if (eq == std::string::npos) {
            if (!trim(line).empty())
                throw UsageError("config: expected 'key = value' at " + path.string() + ":" +
                                 std::to_string(lineno));
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw UsageError("config: empty key or value at " + path.string() + ":" +
                             std::to_string(lineno));
        entries.emplace_back(key, value);
    }
    return entries;
}

} // namespace

std::optional<ExperimentPlan> parse_plan(const std::vector<std::string>& args) {
    std::string scenario = "s1";
    std::string qos = "regular";
    std::string cache = "always";
    std::string warmup = "8";
    std::vector<std::size_t> pit_sizes;
    std::vector<std::size_t> cs_sizes;
    std::vector<std::uint64_t> seeds;
    ExperimentPlan plan;
    std::string topology;
    std::string out_dir = "out";
    std::string config_file;

    CLI::App app{"QoS-managed NDN forwarding simulator and experiment runner"};
    app.add_option("--scenario", scenario, "s1 (per-device names) or s2 (group names)");
    app.add_option("--pit-size", pit_sizes, "PIT capacity, repeatable, from {5,10,15,20,25,30}");
    app.add_option("--cs-size", cs_sizes, "CS capacity, repeatable, from {5,10,15,20,25,30}");
    app.add_option("--gateway-pit", plan.gateway_pit, "PIT capacity of the gateway node");
    app.add_option("--qos", qos, "regular | prompt_reliable | reliable_only | prompt_only");
    app.add_option("--cache", cache, "caching decision: always | prob");
    app.add_option("--p-reg", plan.p_reg, "caching probability for regular content");
    app.add_option("--p-rel", plan.p_rel, "caching probability for reliable content");
    app.add_option("--seed", seeds, "run seed, repeatable");
    app.add_option("--duration-min", plan.duration_min, "simulated minutes per run");
    app.add_option("--warmup", warmup, "actuator start minute, or 'none'");
    app.add_option("--topology", topology, "topology file (child parent lines)");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--trace", plan.trace, "write an event trace per run");
    app.add_option("--jobs", plan.jobs, "parallel runs (0 = all cores)");
    app.add_option("--config", config_file, "key = value file; flags take precedence");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (!config_file.empty()) {
        for (const auto& [key, value] : read_config_file(config_file)) {
            const std::string flag = "--" + key;
            const bool overridden = app.count(flag) > 0;
            if (key == "scenario") { if (!overridden) scenario = value; }
            else if (key == "pit-size") { if (!app.count("--pit-size")) pit_sizes.push_back(parse_u64(value, key)); }
            else if (key == "cs-size") { if (!app.count("--cs-size")) cs_sizes.push_back(parse_u64(value, key)); }
            else if (key == "gateway-pit") { if (!overridden) plan.gateway_pit = parse_u64(value, key); }
            else if (key == "qos") { if (!overridden) qos = value; }
            else if (key == "cache") { if (!overridden) cache = value; }
            else if (key == "p-reg") { if (!overridden) plan.p_reg = parse_double(value, key); }
            else if (key == "p-rel") { if (!overridden) plan.p_rel = parse_double(value, key); }
            else if (key == "seed") { if (!app.count("--seed")) seeds.push_back(parse_u64(value, key)); }
            else if (key == "duration-min") { if (!overridden) plan.duration_min = static_cast<int>(parse_u64(value, key)); }
            else if (key == "warmup") { if (!overridden) warmup = value; }
            else if (key == "topology") { if (!overridden) topology = value; }
            else if (key == "out") { if (!overridden) out_dir = value; }
            else if (key == "trace") { if (!overridden) plan.trace = (value == "1" || value == "true"); }
            else if (key == "jobs") { if (!overridden) plan.jobs = static_cast<int>(parse_u64(value, key)); }
            else throw UsageError("config: unknown key '" + key + "'");
        }
    }

    if (pit_sizes.empty()) pit_sizes = {5};
    if (cs_sizes.empty()) cs_sizes = {5};
    if (seeds.empty()) seeds = {1};

    const auto s = scenario_from_string(scenario);
    if (!s) throw UsageError("scenario: expected s1 or s2, got '" + scenario + "'");
    plan.scenario = *s;
    const auto q = qos_from_string(qos);
    if (!q) throw UsageError("qos: unknown mode '" + qos + "'");
    plan.qos = *q;
    if (cache == "always") plan.cache = CacheStrategy::Always;
    else if (cache == "prob") plan.cache = CacheStrategy::Probabilistic;
    else throw UsageError("cache: expected always or prob, got '" + cache + "'");

    check_sizes(pit_sizes, "pit-size");
    check_sizes(cs_sizes, "cs-size");
    plan.pit_sizes = pit_sizes;
    plan.cs_sizes = cs_sizes;
    plan.seeds = seeds;
    if (plan.gateway_pit == 0) throw UsageError("gateway-pit: must be positive");
    if (plan.p_reg < 0.0 || plan.p_reg > plan.p_rel || plan.p_rel > 1.0)
        throw UsageError("p-reg/p-rel: need 0 <= p_reg <= p_rel <= 1");
    if (plan.duration_min < 1 || plan.duration_min > 1440)
        throw UsageError("duration-min: must be in [1, 1440]");
    if (warmup == "none") plan.warmup_min = 0;
    else plan.warmup_min = static_cast<int>(parse_u64(warmup, "warmup"));
    if (plan.warmup_min < 0 || plan.warmup_min > plan.duration_min)
        throw UsageError("warmup: must lie inside the run duration");
    if (plan.jobs < 0) throw UsageError("jobs: must be >= 0");
    if (!topology.empty()) plan.topology_file = topology;
    plan.out_dir = out_dir;
    return plan;
}

std::string config_slug(const ExperimentPlan& plan, std::size_t pit, std::size_t cs,
                        std::uint64_t seed) {
    std::ostringstream out;
    out << to_string(plan.scenario) << "_pit" << pit << "_cs" << cs << "_" << to_string(plan.qos)
        << "_" << (plan.cache == CacheStrategy::Always ? "always" : "prob") << "_seed" << seed;
    return out.str();
}

SimConfig make_sim_config(const ExperimentPlan& plan, const Topology& topology, std::size_t pit,
                          std::size_t cs, std::uint64_t seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.duration_min = plan.duration_min;
    cfg.scenario = plan.scenario;
    cfg.qos = plan.qos;
    cfg.cache = plan.cache;
    cfg.p_reg = plan.p_reg;
    cfg.p_rel = plan.p_rel;
    cfg.pit_size = pit;
    cfg.gateway_pit = plan.gateway_pit;
    cfg.cs_size = cs;
    cfg.warmup_min = plan.warmup_min;
    cfg.topology = topology;
    return cfg;
}

namespace {

struct RunSummary {
    std::string slug;
    std::size_t pit = 0;
    std::size_t cs = 0;
    // (traffic, rank) -> success pct
    std::vector<std::tuple<std::string, int, double>> success;
    std::vector<std::int64_t> gw_out;
    std::vector<std::int64_t> gw_in;
    double hit_ratio = 0.0;
    // (traffic, class, rank) -> median ttc ms
    std::vector<std::tuple<std::string, std::string, int, double>> ttc_median;
};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0)
        return 0.0;
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

RunSummary summarize(const MetricsLog& log, std::string slug, std::size_t pit, std::size_t cs) {
    RunSummary s;
    s.slug = std::move(slug);
    s.pit = pit;
    s.cs = cs;
    for (const TrafficKind t : {TrafficKind::Actuator, TrafficKind::Gateway})
        for (const auto& row : success_by_rank(log, t))
            s.success.emplace_back(to_string(t), row.rank, row.success_rate_pct);
    s.gw_out = log.gw_out_per_min;
    s.gw_in = log.gw_in_per_min;
    s.hit_ratio = cache_hit_ratio(log, TrafficKind::Actuator);

    std::map<std::tuple<std::string, std::string, int>, std::vector<double>> ttcs;
    for (const auto& r : log.requests)
        if (r.completed())
            ttcs[{to_string(r.traffic), to_string(r.level), r.rank}].push_back(
                static_cast<double>(r.ttc()));
    for (const auto& [key, values] : ttcs)
        s.ttc_median.emplace_back(std::get<0>(key), std::get<1>(key), std::get<2>(key),
                                  median(values));
    return s;
}

struct Stat {
    double sum = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
    void add(double v) {
        if (n == 0) {
            lo = hi = v;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        sum += v;
        ++n;
    }
    double mean() const { return n ? sum / n : 0.0; }
};

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write " + p.string());
    return out;
}

void write_aggregates(const ExperimentPlan& plan, const std::vector<RunSummary>& runs) {
    const std::string scenario = to_string(plan.scenario);
    const std::string qos = to_string(plan.qos);
    const std::string cache = plan.cache == CacheStrategy::Always ? "always" : "prob";
    const std::string prefix = scenario + "," + qos + "," + cache + ",";

    // (pit, cs, traffic, rank) -> stat over seeds
    std::map<std::tuple<std::size_t, std::size_t, std::string, int>, Stat> success;
    std::map<std::tuple<std::size_t, std::size_t, int>, std::pair<Stat, Stat>> load;
    std::map<std::tuple<std::size_t, std::size_t>, Stat> hits;
    std::map<std::tuple<std::size_t, std::size_t, std::string, std::string, int>, Stat> ttc;
    for (const auto& r : runs) {
        for (const auto& [traffic, rank, pct] : r.success)
            success[{r.pit, r.cs, traffic, rank}].add(pct);
        for (std::size_t m = 0; m < r.gw_out.size(); ++m) {
            auto& [out_stat, in_stat] = load[{r.pit, r.cs, static_cast<int>(m)}];
            out_stat.add(static_cast<double>(r.gw_out[m]));
            in_stat.add(static_cast<double>(r.gw_in[m]));
        }
        hits[{r.pit, r.cs}].add(r.hit_ratio);
        for (const auto& [traffic, cls, rank, med] : r.ttc_median)
            ttc[{r.pit, r.cs, traffic, cls, rank}].add(med);
    }

    {
        auto out = open_out(plan.out_dir / "aggregate_success_by_rank.csv");
        out << "scenario,qos,cache,pit_size,cs_size,traffic,rank,"
               "success_rate_pct_mean,success_rate_pct_min,success_rate_pct_max\n";
        for (const auto& [key, st] : success) {
            const auto& [pit, cs, traffic, rank] = key;
            out << prefix << pit << ',' << cs << ',' << traffic << ',' << rank << ','
                << csv_num(st.mean()) << ',' << csv_num(st.lo) << ',' << csv_num(st.hi) << '\n';
        }
    }
    {
        auto out = open_out(plan.out_dir / "aggregate_gateway_load.csv");
        out << "scenario,qos,cache,pit_size,cs_size,minute,"
               "out_requests_mean,out_requests_min,out_requests_max,"
               "in_responses_mean,in_responses_min,in_responses_max\n";
        for (const auto& [key, st] : load) {
            const auto& [pit, cs, minute] = key;
            out << prefix << pit << ',' << cs << ',' << minute << ',' << csv_num(st.first.mean())
                << ',' << csv_num(st.first.lo) << ',' << csv_num(st.first.hi) << ','
                << csv_num(st.second.mean()) << ',' << csv_num(st.second.lo) << ','
                << csv_num(st.second.hi) << '\n';
        }
    }
    {
        auto out = open_out(plan.out_dir / "aggregate_cache_hits.csv");
        out << "scenario,qos,cache,pit_size,cs_size,hit_ratio_pct_mean,hit_ratio_pct_min,"
               "hit_ratio_pct_max\n";
        for (const auto& [key, st] : hits) {
            const auto& [pit, cs] = key;
            out << prefix << pit << ',' << cs << ',' << csv_num(st.mean()) << ','
                << csv_num(st.lo) << ',' << csv_num(st.hi) << '\n';
        }
    }
    {
        auto out = open_out(plan.out_dir / "aggregate_ttc_median.csv");
        out << "scenario,qos,cache,pit_size,cs_size,traffic,class,rank,"
               "median_ttc_ms_mean,median_ttc_ms_min,median_ttc_ms_max\n";
        for (const auto& [key, st] : ttc) {
            const auto& [pit, cs, traffic, cls, rank] = key;
            out << prefix << pit << ',' << cs << ',' << traffic << ',' << cls << ',' << rank << ','
                << csv_num(st.mean()) << ',' << csv_num(st.lo) << ',' << csv_num(st.hi) << '\n';
        }
    }
}

} // namespace

int run_plan(const ExperimentPlan& plan) {
    Topology topology;
    try {
        topology = plan.topology_file ? Topology::from_file(*plan.topology_file)
                                      : Topology::builtin();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    struct Point {
        std::size_t pit;
        std::size_t cs;
        std::uint64_t seed;
    };
    std::vector<Point> points;
    for (const auto pit : plan.pit_sizes)
        for (const auto cs : plan.cs_sizes)
            for (const auto seed : plan.seeds)
                points.push_back({pit, cs, seed});

    std::vector<RunSummary> summaries(points.size());
    std::vector<std::string> failures(points.size());
    std::atomic<std::size_t> next{0};

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<std::size_t>(
        points.size(), plan.jobs > 0 ? static_cast<unsigned>(plan.jobs) : hw);

    auto work = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size())
                return;
            const auto& pt = points[i];
            const std::string slug = config_slug(plan, pt.pit, pt.cs, pt.seed);
            try {
                SimConfig cfg = make_sim_config(plan, topology, pt.pit, pt.cs, pt.seed);
                const auto dir = plan.out_dir / slug;
                std::filesystem::create_directories(dir);
                std::ofstream trace;
                if (plan.trace) {
                    trace.open(dir / "trace.txt", std::ios::binary);
                    cfg.trace = &trace;
                }
                MetricsLog log = run(cfg);
                export_csv(log, dir);
                summaries[i] = summarize(log, slug, pt.pit, pt.cs);
            } catch (const std::exception& e) {
                failures[i] = slug + ": " + e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto& t : pool)
        t.join();

    for (const auto& f : failures) {
        if (!f.empty()) {
            std::cerr << "run failed: " << f << "\n";
            return 1;
        }
    }

    try {
        write_aggregates(plan, summaries);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace ndnqos
