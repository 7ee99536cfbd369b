// manetsim: generate mobility traces, run the ORA/LORA experiment grid, and
// validate trace files. Thin shell over the core library; all parallelism
// lives behind run_plan.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "manet/experiment.hpp"
#include "manet/trace_io.hpp"

namespace fs = std::filesystem;
using namespace manet;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kValidation = 2;
constexpr int kIo = 3;

// I/O-level failure (unreadable/unwritable file), distinct from validation.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

std::string default_out_dir() {
    const char* env = std::getenv("MANETSIM_OUT_DIR");
    return (env && *env) ? env : ".";
}

std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string fmt_axis(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

void finish_output(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out)
        throw IoError("failed while writing '" + path.string() + "'");
}

// ---------------------------------------------------------------- gen-trace

struct GenTraceArgs {
    std::string model = "rwp";
    MobilityScenario scenario;
    Region region;
    std::string out;
};

int cmd_gen_trace(GenTraceArgs& args) {
    const auto model = parse_mobility_model(args.model);
    if (!model)
        throw ConfigError("unknown mobility model '" + args.model + "'");
    args.scenario.model = *model;
    validate_scenario(args.scenario, args.region);

    const fs::path trace_path =
        args.out.empty() ? fs::path(default_out_dir()) / "trace.csv" : fs::path(args.out);
    if (trace_path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(trace_path.parent_path(), ec);
        if (ec)
            throw IoError("cannot create directory '" + trace_path.parent_path().string() + "'");
    }

    const MobilityTrace trace = generate_trace(args.scenario, args.region);

    auto csv = open_output(trace_path);
    write_trace_csv(trace, csv);
    finish_output(csv, trace_path);

    const fs::path sidecar = sidecar_path_for(trace_path.string());
    auto meta = open_output(sidecar);
    meta << scenario_to_json(args.scenario, args.region).dump(2) << '\n';
    finish_output(meta, sidecar);

    std::cout << "wrote " << trace_path.string() << " (" << trace.snapshot_count()
              << " snapshots x " << args.scenario.node_count << " nodes) and "
              << sidecar.string() << '\n';
    return kOk;
}

// --------------------------------------------------------------------- run

struct RunArgs {
    std::string plan_path;
    std::string out_dir;
    std::string only;
    std::optional<int> traces;
    std::optional<int> sessions;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<double> duration;
    std::optional<double> interval;
    std::optional<double> range;
    std::optional<double> pause;
};

void apply_only_filter(ExperimentPlan& plan, const std::string& only) {
    std::stringstream ss(only);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--only expects key=value tokens, got '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "model") {
            const auto m = parse_mobility_model(value);
            if (!m)
                throw ConfigError("--only: unknown model '" + value + "'");
            plan.models = {*m};
        } else if (key == "density") {
            plan.densities = {std::stoi(value)};
        } else if (key == "velocity") {
            plan.velocities = {std::stod(value)};
        } else {
            throw ConfigError("--only: unknown key '" + key + "'");
        }
    }
}

struct MetricColumn {
    const char* name;
    // ORA and LORA values for one cell; absent -> blank field.
    std::optional<double> ora;
    std::optional<double> lora;
    std::optional<double> percent_increase;
};

std::optional<double> stat_mean(const MetricStats& s) {
    if (s.count == 0)
        return std::nullopt;
    return s.mean;
}

std::vector<MetricColumn> cell_metric_columns(const CellAggregate& cell) {
    // percent_increase stays blank for strategy-independent metrics
    // (connectivity) and for the LORA-only lifetime metrics.
    return {
        {"hop_count", stat_mean(cell.hop_count.ora), stat_mean(cell.hop_count.lora),
         cell.hop_count.percent_increase},
        {"connectivity", stat_mean(cell.connectivity.ora), stat_mean(cell.connectivity.lora),
         std::nullopt},
        {"cds_size", stat_mean(cell.cds_size.ora), stat_mean(cell.cds_size.lora),
         cell.cds_size.percent_increase},
        {"route_lifetime_s", std::nullopt, stat_mean(cell.route_lifetime_s), std::nullopt},
        {"cds_lifetime_s", std::nullopt, stat_mean(cell.cds_lifetime_s), std::nullopt},
    };
}

void write_results_csv(std::ostream& out, const std::vector<CellAggregate>& cells) {
    out << "model,density,velocity,metric,ora,lora,percent_increase\n";
    for (const CellAggregate& cell : cells) {
        for (const MetricColumn& col : cell_metric_columns(cell)) {
            out << to_string(cell.key.model) << ',' << cell.key.density << ','
                << fmt_axis(cell.key.velocity) << ',' << col.name << ','
                << (col.ora ? fmt_value(*col.ora) : "") << ','
                << (col.lora ? fmt_value(*col.lora) : "") << ','
                << (col.percent_increase ? fmt_value(*col.percent_increase) : "") << '\n';
        }
    }
}

using CellLookup = std::function<const CellAggregate&(std::size_t, std::size_t, std::size_t)>;

void write_plot_file(std::ostream& out, const ExperimentPlan& plan, const CellLookup& cell_at,
                     const char* metric, bool x_is_density) {
    out << (x_is_density ? "velocity,density" : "density,velocity");
    for (MobilityModel m : plan.models)
        out << ',' << to_string(m) << "_ora," << to_string(m) << "_lora";
    out << '\n';
    const std::size_t outer_n = x_is_density ? plan.velocities.size() : plan.densities.size();
    const std::size_t inner_n = x_is_density ? plan.densities.size() : plan.velocities.size();
    for (std::size_t o = 0; o < outer_n; ++o) {
        for (std::size_t i = 0; i < inner_n; ++i) {
            const std::size_t di = x_is_density ? i : o;
            const std::size_t vi = x_is_density ? o : i;
            if (x_is_density)
                out << fmt_axis(plan.velocities[vi]) << ',' << plan.densities[di];
            else
                out << plan.densities[di] << ',' << fmt_axis(plan.velocities[vi]);
            for (std::size_t mi = 0; mi < plan.models.size(); ++mi) {
                const CellAggregate& cell = cell_at(mi, di, vi);
                std::optional<double> ora, lora;
                for (const MetricColumn& col : cell_metric_columns(cell)) {
                    if (std::string_view(col.name) == metric) {
                        ora = col.ora;
                        lora = col.lora;
                        break;
                    }
                }
                out << ',' << (ora ? fmt_value(*ora) : "") << ','
                    << (lora ? fmt_value(*lora) : "");
            }
            out << '\n';
        }
    }
}

int cmd_run(const RunArgs& args) {
    ExperimentPlan plan;
    if (!args.plan_path.empty()) {
        std::ifstream in(args.plan_path);
        if (!in)
            throw IoError("cannot read plan file '" + args.plan_path + "'");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("plan file '" + args.plan_path + "': " + e.what());
        }
        plan = plan_from_json(j);
    }
    if (args.traces)
        plan.traces_per_cell = *args.traces;
    if (args.sessions)
        plan.sessions_per_trace = *args.sessions;
    if (args.seed)
        plan.base_seed = *args.seed;
    if (args.threads)
        plan.threads = *args.threads;
    if (args.duration)
        plan.duration = *args.duration;
    if (args.interval)
        plan.sample_interval = *args.interval;
    if (args.range)
        plan.range = *args.range;
    if (args.pause)
        plan.pause_time = *args.pause;
    if (!args.only.empty())
        apply_only_filter(plan, args.only);
    validate_plan(plan);

    const fs::path out_dir = args.out_dir.empty() ? fs::path(default_out_dir()) : fs::path(args.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + out_dir.string() + "'");

    const std::vector<CellAggregate> cells = run_plan(plan);

    const fs::path csv_path = out_dir / "results.csv";
    auto csv = open_output(csv_path);
    write_results_csv(csv, cells);
    finish_output(csv, csv_path);

    const fs::path json_path = out_dir / "results.json";
    auto json_out = open_output(json_path);
    json_out << results_to_json(plan, cells).dump(2) << '\n';
    finish_output(json_out, json_path);

    const auto cell_at = [&](std::size_t mi, std::size_t di, std::size_t vi) -> const CellAggregate& {
        return cells[(mi * plan.densities.size() + di) * plan.velocities.size() + vi];
    };
    const char* metrics[] = {"hop_count", "connectivity", "cds_size", "route_lifetime_s",
                             "cds_lifetime_s"};
    int plot_files = 0;
    for (const char* metric : metrics) {
        for (bool x_is_density : {true, false}) {
            const fs::path plot_path =
                out_dir / (std::string("plot_") + metric +
                           (x_is_density ? "_vs_density.csv" : "_vs_velocity.csv"));
            auto plot = open_output(plot_path);
            write_plot_file(plot, plan, cell_at, metric, x_is_density);
            finish_output(plot, plot_path);
            ++plot_files;
        }
    }

    std::cout << "ran " << cells.size() << " cells; wrote " << csv_path.string() << ", "
              << json_path.string() << " and " << plot_files << " plot files\n";
    return kOk;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& trace_path) {
    std::ifstream meta(sidecar_path_for(trace_path));
    if (!meta)
        throw IoError("cannot read scenario sidecar '" + sidecar_path_for(trace_path) + "'");
    nlohmann::json j;
    try {
        meta >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("scenario sidecar: ") + e.what());
    }
    MobilityScenario scenario;
    Region region;
    scenario_from_json(j, scenario, region);

    std::ifstream csv(trace_path);
    if (!csv)
        throw IoError("cannot read trace file '" + trace_path + "'");
    const MobilityTrace trace = read_trace_csv(csv, scenario, region);

    if (const auto violation = find_trace_violation(trace)) {
        std::cerr << "violation at snapshot " << violation->snapshot << ", node "
                  << violation->node << ": " << violation->message << '\n';
        return kValidation;
    }
    std::cout << "trace ok: " << trace.snapshot_count() << " snapshots x "
              << scenario.node_count << " nodes\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MANET mobility / ORA-LORA experiment toolkit"};
    app.require_subcommand(1);

    GenTraceArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("gen-trace", "Generate a mobility trace CSV + JSON sidecar");
    gen_cmd->add_option("--model", gen.model, "Mobility model: rwp | city | manhattan")->required();
    gen_cmd->add_option("--nodes", gen.scenario.node_count, "Node count");
    gen_cmd->add_option("--velocity", gen.scenario.velocity, "Node velocity, m/s");
    gen_cmd->add_option("--pause", gen.scenario.pause_time, "Pause time at waypoints, s");
    gen_cmd->add_option("--duration", gen.scenario.duration, "Simulated time, s");
    gen_cmd->add_option("--interval", gen.scenario.sample_interval, "Sample interval, s");
    gen_cmd->add_option("--seed", gen.scenario.seed, "Trace seed");
    gen_cmd->add_option("--width", gen.region.width, "Region width, m");
    gen_cmd->add_option("--height", gen.region.height, "Region height, m");
    gen_cmd->add_option("--block", gen.region.block_length, "Street block length, m");
    gen_cmd->add_option("--out", gen.out, "Trace CSV path (default: $MANETSIM_OUT_DIR/trace.csv)");

    RunArgs run;
    CLI::App* run_cmd = app.add_subcommand("run", "Run the experiment grid and write reports");
    run_cmd->add_option("--plan", run.plan_path, "Plan JSON file (defaults used when absent)");
    run_cmd->add_option("--out-dir", run.out_dir, "Output directory (default: $MANETSIM_OUT_DIR or .)");
    run_cmd->add_option("--only", run.only, "Restrict the grid, e.g. model=rwp,density=50,velocity=2.5");
    run_cmd->add_option("--traces", run.traces, "Traces per cell");
    run_cmd->add_option("--sessions", run.sessions, "Sessions per trace");
    run_cmd->add_option("--seed", run.seed, "Base seed");
    run_cmd->add_option("--threads", run.threads, "Worker threads (0 = hardware)");
    run_cmd->add_option("--duration", run.duration, "Simulated time per trace, s");
    run_cmd->add_option("--interval", run.interval, "Sample interval, s");
    run_cmd->add_option("--range", run.range, "Transmission range, m");
    run_cmd->add_option("--pause", run.pause, "Pause time, s");

    std::string validate_path;
    CLI::App* validate_cmd = app.add_subcommand("validate", "Check a trace file against its invariants");
    validate_cmd->add_option("trace", validate_path, "Trace CSV (sidecar JSON found next to it)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (gen_cmd->parsed())
            return cmd_gen_trace(gen);
        if (run_cmd->parsed())
            return cmd_run(run);
        if (validate_cmd->parsed())
            return cmd_validate(validate_path);
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
}
