#include "manet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

#include "manet/trace_io.hpp"

namespace manet {

std::vector<CellKey> ExperimentPlan::cells() const {
    std::vector<CellKey> out;
    out.reserve(models.size() * densities.size() * velocities.size());
    for (MobilityModel m : models)
        for (int d : densities)
            for (double v : velocities)
                out.push_back(CellKey{m, d, v});
    return out;
}

void validate_plan(const ExperimentPlan& plan) {
    if (plan.models.empty())
        throw ConfigError("plan.models must be non-empty");
    if (plan.densities.empty())
        throw ConfigError("plan.densities must be non-empty");
    if (plan.velocities.empty())
        throw ConfigError("plan.velocities must be non-empty");
    if (plan.traces_per_cell < 1)
        throw ConfigError("plan.traces_per_cell must be >= 1");
    if (plan.sessions_per_trace < 1)
        throw ConfigError("plan.sessions_per_trace must be >= 1");
    if (!(plan.range > 0.0))
        throw ConfigError("plan.range must be > 0");
    if (plan.threads < 0)
        throw ConfigError("plan.threads must be >= 0");
    for (double v : plan.velocities)
        if (v < 0.0 || !std::isfinite(v))
            throw ConfigError("plan.velocities entries must be >= 0");
    for (int d : plan.densities) {
        if (d < 2)
            throw ConfigError("plan.densities entries must be >= 2");
        const long pairs = static_cast<long>(d) * (d - 1) / 2;
        if (pairs < plan.sessions_per_trace)
            throw ConfigError("plan.sessions_per_trace exceeds the distinct node pairs at density " +
                              std::to_string(d));
    }
    // Region/timing invariants are shared with scenario validation; check them
    // once per model via a representative scenario.
    for (MobilityModel m : plan.models) {
        MobilityScenario probe;
        probe.model = m;
        probe.node_count = plan.densities.front();
        probe.velocity = plan.velocities.front();
        probe.pause_time = plan.pause_time;
        probe.duration = plan.duration;
        probe.sample_interval = plan.sample_interval;
        validate_scenario(probe, plan.region);
    }
}

namespace {

constexpr std::uint64_t kSessionSeedTag = 0x53455353ULL; // distinguishes the session stream

nlohmann::json stats_to_json(const MetricStats& s) {
    nlohmann::json j;
    j["count"] = s.count;
    j["mean"] = s.count > 0 ? nlohmann::json(s.mean) : nlohmann::json();
    j["stddev"] = s.count > 0 ? nlohmann::json(s.stddev) : nlohmann::json();
    return j;
}

nlohmann::json pair_to_json(const StrategyPair& p) {
    nlohmann::json j;
    j["ora"] = stats_to_json(p.ora);
    j["lora"] = stats_to_json(p.lora);
    j["percent_increase"] =
        p.percent_increase ? nlohmann::json(*p.percent_increase) : nlohmann::json();
    return j;
}

StrategyPair make_pair_stats(const std::vector<double>& ora, const std::vector<double>& lora) {
    StrategyPair p;
    p.ora = make_stats(ora);
    p.lora = make_stats(lora);
    if (p.ora.count > 0 && p.lora.count > 0 && p.ora.mean > 0.0)
        p.percent_increase = (p.lora.mean - p.ora.mean) / p.ora.mean * 100.0;
    return p;
}

} // namespace

MetricStats make_stats(const std::vector<double>& samples) {
    MetricStats s;
    s.count = static_cast<int>(samples.size());
    if (s.count == 0) {
        s.mean = std::numeric_limits<double>::quiet_NaN();
        s.stddev = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    double sum = 0.0;
    for (double x : samples)
        sum += x;
    s.mean = sum / s.count;
    if (s.count < 2) {
        s.stddev = 0.0;
        return s;
    }
    double sq = 0.0;
    for (double x : samples)
        sq += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(sq / (s.count - 1));
    return s;
}

nlohmann::json cell_to_json(const CellAggregate& cell) {
    return nlohmann::json{
        {"model", to_string(cell.key.model)},
        {"density", cell.key.density},
        {"velocity_mps", cell.key.velocity},
        {"hop_count", pair_to_json(cell.hop_count)},
        {"connectivity", pair_to_json(cell.connectivity)},
        {"cds_size", pair_to_json(cell.cds_size)},
        {"route_lifetime_s", stats_to_json(cell.route_lifetime_s)},
        {"cds_lifetime_s", stats_to_json(cell.cds_lifetime_s)},
        {"cds_connected_fraction", stats_to_json(cell.cds_connected_fraction)},
        {"hop_dominance_violations", cell.hop_dominance_violations},
    };
}

std::uint64_t derive_trace_seed(std::uint64_t base_seed, MobilityModel model, int density,
                                double velocity, int trace_index) {
    return mix_seed(base_seed, {static_cast<std::uint64_t>(model),
                                static_cast<std::uint64_t>(density), double_bits(velocity),
                                static_cast<std::uint64_t>(trace_index)});
}

std::uint64_t derive_session_seed(std::uint64_t trace_seed) {
    return mix_seed(trace_seed, {kSessionSeedTag});
}

std::vector<SdSession> select_sessions(std::uint64_t seed, int node_count, int count,
                                       double sample_interval, double duration) {
    if (node_count < 2)
        throw ConfigError("session selection needs node_count >= 2");
    const long distinct_pairs = static_cast<long>(node_count) * (node_count - 1) / 2;
    if (count < 0 || count > distinct_pairs)
        throw ConfigError("session count exceeds the distinct node pairs");
    const int total = static_cast<int>(std::llround(duration / sample_interval));
    // Start-time grid: multiples of the sample interval in [1 s, 20 s],
    // clamped to the simulation window, as 0-based snapshot indices.
    int lo = static_cast<int>(std::llround(1.0 / sample_interval)) - 1;
    int hi = static_cast<int>(std::llround(20.0 / sample_interval)) - 1;
    lo = std::max(0, std::min(lo, total - 1));
    hi = std::max(lo, std::min(hi, total - 1));

    Rng rng(seed);
    std::vector<SdSession> sessions;
    sessions.reserve(count);
    std::vector<char> taken(static_cast<std::size_t>(node_count) * node_count, 0);
    // Per session: endpoint draws (rejecting repeats and s == d), then the
    // start-snapshot draw. Order is a stability contract.
    for (int i = 0; i < count; ++i) {
        int s, d;
        do {
            s = static_cast<int>(rng.uniform_int(node_count));
            d = static_cast<int>(rng.uniform_int(node_count));
        } while (s == d || taken[static_cast<std::size_t>(std::min(s, d)) * node_count + std::max(s, d)]);
        taken[static_cast<std::size_t>(std::min(s, d)) * node_count + std::max(s, d)] = 1;
        const int start = lo + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(hi - lo + 1)));
        sessions.push_back(SdSession{s, d, start});
    }
    return sessions;
}

CellAggregate run_cell(const ExperimentPlan& plan, const CellKey& key) {
    CellAggregate agg;
    agg.key = key;

    std::vector<double> ora_hops, lora_hops, ora_conn, lora_conn, route_lifetimes;
    std::vector<double> ora_cds_sizes, lora_cds_sizes, cds_lifetimes, connected_fracs;

    for (int trace_index = 0; trace_index < plan.traces_per_cell; ++trace_index) {
        MobilityScenario scenario;
        scenario.model = key.model;
        scenario.node_count = key.density;
        scenario.velocity = key.velocity;
        scenario.pause_time = plan.pause_time;
        scenario.duration = plan.duration;
        scenario.sample_interval = plan.sample_interval;
        scenario.seed = derive_trace_seed(plan.base_seed, key.model, key.density, key.velocity,
                                          trace_index);
        const MobilityTrace trace = generate_trace(scenario, plan.region);
        const auto sessions = select_sessions(derive_session_seed(scenario.seed), key.density,
                                              plan.sessions_per_trace, plan.sample_interval,
                                              plan.duration);
        const int total = trace.snapshot_count();

        std::vector<OraPathTracker> ora_paths;
        std::vector<LoraPathTracker> lora_paths;
        ora_paths.reserve(sessions.size());
        lora_paths.reserve(sessions.size());
        for (const SdSession& session : sessions) {
            ora_paths.emplace_back(session, total);
            lora_paths.emplace_back(session, total);
        }
        OraCdsTracker ora_cds(total);
        LoraCdsTracker lora_cds(total);

        // Snapshot-major: each graph is materialized once and fed to every
        // tracker, which keeps the paired design exact by construction.
        for (int j = 0; j < total; ++j) {
            const StaticGraph g =
                build_static_graph(trace.snapshots[j], plan.range, j, trace.time_at(j));
            for (auto& t : ora_paths)
                t.observe(g);
            for (auto& t : lora_paths)
                t.observe(g);
            ora_cds.observe(g);
            lora_cds.observe(g);
        }

        for (std::size_t i = 0; i < sessions.size(); ++i) {
            const PathTimeline ora = ora_paths[i].take();
            const PathTimeline lora = lora_paths[i].take();
            const SessionMetrics om = session_metrics(ora, plan.sample_interval);
            const SessionMetrics lm = session_metrics(lora, plan.sample_interval);
            ora_conn.push_back(om.connectivity_fraction);
            lora_conn.push_back(lm.connectivity_fraction);
            if (om.time_avg_hop_count)
                ora_hops.push_back(*om.time_avg_hop_count);
            if (lm.time_avg_hop_count)
                lora_hops.push_back(*lm.time_avg_hop_count);
            if (lm.avg_route_lifetime)
                route_lifetimes.push_back(*lm.avg_route_lifetime);
            for (int k = 0; k < ora.window_size(); ++k) {
                const auto& op = ora.entries[k];
                const auto& lp = lora.entries[k];
                if (op && lp && lp->hop_count() < op->hop_count())
                    ++agg.hop_dominance_violations;
            }
        }

        const CdsTimeline ora_cds_tl = ora_cds.take();
        const CdsTimeline lora_cds_tl = lora_cds.take();
        const CdsMetrics ocm = cds_metrics(ora_cds_tl, plan.sample_interval);
        const CdsMetrics lcm = cds_metrics(lora_cds_tl, plan.sample_interval);
        if (ocm.avg_cds_size)
            ora_cds_sizes.push_back(*ocm.avg_cds_size);
        if (lcm.avg_cds_size)
            lora_cds_sizes.push_back(*lcm.avg_cds_size);
        if (lcm.avg_cds_lifetime)
            cds_lifetimes.push_back(*lcm.avg_cds_lifetime);
        connected_fracs.push_back(ocm.connected_fraction);
    }

    agg.hop_count = make_pair_stats(ora_hops, lora_hops);
    agg.connectivity = make_pair_stats(ora_conn, lora_conn);
    agg.cds_size = make_pair_stats(ora_cds_sizes, lora_cds_sizes);
    agg.route_lifetime_s = make_stats(route_lifetimes);
    agg.cds_lifetime_s = make_stats(cds_lifetimes);
    agg.cds_connected_fraction = make_stats(connected_fracs);
    return agg;
}

std::vector<CellAggregate> run_plan(const ExperimentPlan& plan) {
    validate_plan(plan);
    const std::vector<CellKey> keys = plan.cells();
    std::vector<CellAggregate> results(keys.size());
    unsigned workers = plan.threads > 0 ? static_cast<unsigned>(plan.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(keys.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < keys.size(); ++i)
            results[i] = run_cell(plan, keys[i]);
        return results;
    }
    // Results land in preallocated grid-order slots, so the merge is
    // deterministic no matter how cells are scheduled across workers.
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= keys.size())
                    return;
                try {
                    results[i] = run_cell(plan, keys[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
    return results;
}

ExperimentPlan plan_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw ConfigError("plan json: document must be an object");
    ExperimentPlan plan;
    for (const auto& item : j.items()) {
        const std::string& key = item.key();
        const nlohmann::json& value = item.value();
        if (key == "models") {
            plan.models.clear();
            for (const auto& name : value) {
                const auto m = parse_mobility_model(name.get<std::string>());
                if (!m)
                    throw ConfigError("plan json: unknown model '" + name.get<std::string>() + "'");
                plan.models.push_back(*m);
            }
        } else if (key == "densities") {
            plan.densities = value.get<std::vector<int>>();
        } else if (key == "velocities_mps") {
            plan.velocities = value.get<std::vector<double>>();
        } else if (key == "traces_per_cell") {
            plan.traces_per_cell = value.get<int>();
        } else if (key == "sessions_per_trace") {
            plan.sessions_per_trace = value.get<int>();
        } else if (key == "region") {
            if (!value.is_object())
                throw ConfigError("plan json: 'region' must be an object");
            for (const auto& r : value.items()) {
                if (r.key() == "width_m")
                    plan.region.width = r.value().get<double>();
                else if (r.key() == "height_m")
                    plan.region.height = r.value().get<double>();
                else if (r.key() == "block_length_m")
                    plan.region.block_length = r.value().get<double>();
                else
                    throw ConfigError("plan json: unknown key 'region." + r.key() + "'");
            }
        } else if (key == "range_m") {
            plan.range = value.get<double>();
        } else if (key == "duration_s") {
            plan.duration = value.get<double>();
        } else if (key == "sample_interval_s") {
            plan.sample_interval = value.get<double>();
        } else if (key == "pause_time_s") {
            plan.pause_time = value.get<double>();
        } else if (key == "base_seed") {
            plan.base_seed = value.get<std::uint64_t>();
        } else if (key == "threads") {
            plan.threads = value.get<int>();
        } else {
            throw ConfigError("plan json: unknown key '" + key + "'");
        }
    }
    return plan;
}

nlohmann::json plan_to_json(const ExperimentPlan& plan) {
    nlohmann::json models = nlohmann::json::array();
    for (MobilityModel m : plan.models)
        models.push_back(to_string(m));
    return nlohmann::json{
        {"models", std::move(models)},
        {"densities", plan.densities},
        {"velocities_mps", plan.velocities},
        {"traces_per_cell", plan.traces_per_cell},
        {"sessions_per_trace", plan.sessions_per_trace},
        {"region",
         {{"width_m", plan.region.width},
          {"height_m", plan.region.height},
          {"block_length_m", plan.region.block_length}}},
        {"range_m", plan.range},
        {"duration_s", plan.duration},
        {"sample_interval_s", plan.sample_interval},
        {"pause_time_s", plan.pause_time},
        {"base_seed", plan.base_seed},
        {"threads", plan.threads},
    };
}

nlohmann::json results_to_json(const ExperimentPlan& plan, const std::vector<CellAggregate>& cells) {
    nlohmann::json out;
    out["plan"] = plan_to_json(plan);
    nlohmann::json rows = nlohmann::json::array();
    for (const CellAggregate& cell : cells)
        rows.push_back(cell_to_json(cell));
    out["cells"] = std::move(rows);
    return out;
}

} // namespace manet
