#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "manet/trace_io.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

long line_count(const std::string& text) {
    long n = 0;
    for (char c : text)
        if (c == '\n')
            ++n;
    return n;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

/// Scratch directory per test case, removed on destruction.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / ("manetsim_cli_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    fs::path operator/(const std::string& leaf) const { return path / leaf; }
};

CmdResult run_cli(const std::string& args, const TempDir& dir, const std::string& env_prefix = "") {
    const fs::path out = dir / "cmd_stdout.txt";
    const fs::path err = dir / "cmd_stderr.txt";
    const std::string cmd = env_prefix + std::string(MANETSIM_CLI_PATH) + " " + args + " >" +
                            out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    CmdResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("gen-trace writes one row per node per snapshot plus a header") {
    TempDir dir("gen_shape");
    const fs::path trace = dir / "trace.csv";
    const auto r = run_cli("gen-trace --model rwp --nodes 50 --velocity 2.5 --duration 1000 "
                           "--interval 0.25 --seed 7 --out " + trace.string(),
                           dir);
    REQUIRE(r.code == 0);
    CHECK(line_count(slurp(trace)) == 4000L * 50 + 1);
    REQUIRE(fs::exists(dir / "trace.json"));

    // The generated trace passes its own validator.
    const auto v = run_cli("validate " + trace.string(), dir);
    CHECK(v.code == 0);
    CHECK(v.out.find("trace ok") != std::string::npos);
}

TEST_CASE("gen-trace is byte-for-byte reproducible") {
    TempDir dir("gen_repro");
    const std::string flags = "gen-trace --model city --nodes 20 --velocity 12.5 --duration 100 "
                              "--interval 0.25 --seed 7 --out ";
    REQUIRE(run_cli(flags + (dir / "a.csv").string(), dir).code == 0);
    REQUIRE(run_cli(flags + (dir / "b.csv").string(), dir).code == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    CHECK(!slurp(dir / "a.csv").empty());
}

TEST_CASE("street-grid traces keep every sampled position on a street") {
    TempDir dir("gen_streets");
    const fs::path trace = dir / "m.csv";
    REQUIRE(run_cli("gen-trace --model manhattan --nodes 10 --velocity 12.5 --duration 10 "
                    "--interval 0.25 --seed 3 --out " + trace.string(),
                    dir)
                .code == 0);
    const auto lines = split(slurp(trace), '\n');
    REQUIRE(lines.size() >= 2);
    int rows = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty())
            continue;
        const auto f = split(lines[i], ',');
        REQUIRE(f.size() == 5);
        const double x = std::stod(f[3]);
        const double y = std::stod(f[4]);
        const double dx = std::abs(x - 100.0 * std::round(x / 100.0));
        const double dy = std::abs(y - 100.0 * std::round(y / 100.0));
        CHECK(std::min(dx, dy) <= 1e-6);
        ++rows;
    }
    CHECK(rows == 40 * 10);
}

TEST_CASE("validate flags a corrupted coordinate with its snapshot and node") {
    TempDir dir("validate_corrupt");
    const fs::path trace = dir / "t.csv";
    REQUIRE(run_cli("gen-trace --model rwp --nodes 4 --velocity 2.5 --duration 10 "
                    "--interval 0.25 --seed 9 --out " + trace.string(),
                    dir)
                .code == 0);
    auto lines = split(slurp(trace), '\n');
    // Row for snapshot 5, node 2: header + 5*4 + 2.
    const std::size_t row = 1 + 5 * 4 + 2;
    auto f = split(lines[row], ',');
    REQUIRE(f[0] == "5");
    REQUIRE(f[2] == "2");
    f[3] = "900.0000000000"; // in bounds, but an impossible jump at 2.5 m/s
    lines[row] = f[0] + "," + f[1] + "," + f[2] + "," + f[3] + "," + f[4];
    std::string mutated;
    for (const auto& l : lines)
        if (!l.empty())
            mutated += l + "\n";
    spit(trace, mutated);

    const auto r = run_cli("validate " + trace.string(), dir);
    CHECK(r.code == 2);
    CHECK(r.err.find("snapshot 5") != std::string::npos);
    CHECK(r.err.find("node 2") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage, validation, and file errors") {
    TempDir dir("exit_codes");
    CHECK(run_cli("validate " + (dir / "missing.csv").string(), dir).code == 3);
    CHECK(run_cli("gen-trace --model rwp --no-such-flag", dir).code == 1);
    CHECK(run_cli("frobnicate", dir).code == 1);
    CHECK(run_cli("gen-trace --model teleport --out " + (dir / "t.csv").string(), dir).code == 2);
    // Street models need the region to be whole blocks.
    CHECK(run_cli("gen-trace --model city --width 950 --out " + (dir / "t.csv").string(), dir)
              .code == 2);
    CHECK(run_cli("--help", dir).code == 0);
}

TEST_CASE("run writes the report set for a restricted grid") {
    TempDir dir("run_only");
    const auto r = run_cli("run --only model=rwp,density=50,velocity=2.5 --traces 1 --sessions 2 "
                           "--duration 10 --out-dir " + dir.path.string(),
                           dir);
    REQUIRE(r.code == 0);

    const std::string csv = slurp(dir / "results.csv");
    CHECK(line_count(csv) == 1 + 1 * 5); // header + 5 metric rows for the one cell
    CHECK(csv.rfind("model,density,velocity,metric,ora,lora,percent_increase\n", 0) == 0);

    const auto doc = nlohmann::json::parse(slurp(dir / "results.json"));
    CHECK(doc.at("cells").size() == 1);
    CHECK(doc.at("cells")[0].at("model") == "rwp");
    CHECK(doc.at("cells")[0].at("density") == 50);

    for (const char* metric : {"hop_count", "connectivity", "cds_size", "route_lifetime_s",
                               "cds_lifetime_s"}) {
        CHECK(fs::exists(dir / ("plot_" + std::string(metric) + "_vs_density.csv")));
        CHECK(fs::exists(dir / ("plot_" + std::string(metric) + "_vs_velocity.csv")));
    }
}

TEST_CASE("run is byte-for-byte reproducible") {
    TempDir a("run_repro_a");
    TempDir b("run_repro_b");
    const std::string flags = "run --only model=manhattan,density=50,velocity=25 --traces 1 "
                              "--sessions 2 --duration 10 --seed 11 --out-dir ";
    REQUIRE(run_cli(flags + a.path.string(), a).code == 0);
    REQUIRE(run_cli(flags + b.path.string(), b).code == 0);
    CHECK(slurp(a / "results.csv") == slurp(b / "results.csv"));
    CHECK(slurp(a / "results.json") == slurp(b / "results.json"));
    CHECK(!slurp(a / "results.csv").empty());
}

TEST_CASE("run accepts a plan file and sizes its report to the grid") {
    TempDir dir("run_plan");
    nlohmann::json plan{{"models", {"rwp", "city"}},
                        {"densities", {10}},
                        {"velocities_mps", {2.5, 25.0}},
                        {"traces_per_cell", 1},
                        {"sessions_per_trace", 2},
                        {"duration_s", 20.0},
                        {"region", {{"width_m", 500.0}, {"height_m", 500.0}, {"block_length_m", 100.0}}},
                        {"base_seed", 9}};
    spit(dir / "plan.json", plan.dump(2));
    const auto r = run_cli("run --plan " + (dir / "plan.json").string() + " --out-dir " +
                               dir.path.string(),
                           dir);
    REQUIRE(r.code == 0);
    CHECK(line_count(slurp(dir / "results.csv")) == 1 + 4 * 5); // 4 cells
    const auto doc = nlohmann::json::parse(slurp(dir / "results.json"));
    CHECK(doc.at("cells").size() == 4);
    CHECK(doc.at("plan").at("base_seed") == 9);
}

TEST_CASE("run rejects bad plans with the right exit codes") {
    TempDir dir("run_bad_plan");
    spit(dir / "unknown.json", R"({"bogus": 1})");
    CHECK(run_cli("run --plan " + (dir / "unknown.json").string() + " --out-dir " +
                      dir.path.string(),
                  dir)
              .code == 2);
    spit(dir / "invalid.json", R"({"densities": [1]})");
    CHECK(run_cli("run --plan " + (dir / "invalid.json").string() + " --out-dir " +
                      dir.path.string(),
                  dir)
              .code == 2);
    spit(dir / "syntax.json", "{nope");
    CHECK(run_cli("run --plan " + (dir / "syntax.json").string() + " --out-dir " +
                      dir.path.string(),
                  dir)
              .code == 2);
    CHECK(run_cli("run --plan " + (dir / "absent.json").string() + " --out-dir " +
                      dir.path.string(),
                  dir)
              .code == 3);
}

TEST_CASE("the MANETSIM_OUT_DIR environment variable picks the default output directory") {
    TempDir dir("env_outdir");
    const auto r = run_cli("gen-trace --model rwp --nodes 4 --duration 5 --seed 2", dir,
                           "MANETSIM_OUT_DIR=" + dir.path.string() + " ");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "trace.csv"));
    CHECK(fs::exists(dir / "trace.json"));
}

TEST_CASE("validate agrees with the in-process reader on mutated traces") {
    using namespace manet;
    TempDir dir("validate_fuzz");
    int seed = 100;
    for (const char* model : {"rwp", "city", "manhattan"}) {
        for (const char* mutation : {"none", "bump", "garbage", "drop"}) {
            CAPTURE(model);
            CAPTURE(mutation);
            const fs::path trace = dir / "f.csv";
            REQUIRE(run_cli("gen-trace --model " + std::string(model) +
                                " --nodes 5 --velocity 12.5 --duration 5 --interval 0.25 --seed " +
                                std::to_string(seed++) + " --out " + trace.string(),
                            dir)
                        .code == 0);

            auto lines = split(slurp(trace), '\n');
            while (!lines.empty() && lines.back().empty())
                lines.pop_back();
            const std::size_t target = 1 + lines.size() / 2;
            if (std::string(mutation) == "bump") {
                auto f = split(lines[target], ',');
                f[3] = std::to_string(std::stod(f[3]) + 257.3);
                lines[target] = f[0] + "," + f[1] + "," + f[2] + "," + f[3] + "," + f[4];
            } else if (std::string(mutation) == "garbage") {
                auto f = split(lines[target], ',');
                f[4] = "zzz";
                lines[target] = f[0] + "," + f[1] + "," + f[2] + "," + f[3] + "," + f[4];
            } else if (std::string(mutation) == "drop") {
                lines.erase(lines.begin() + static_cast<long>(target));
            }
            std::string text;
            for (const auto& l : lines)
                text += l + "\n";
            spit(trace, text);

            // Independent expectation straight from the library.
            MobilityScenario scenario;
            Region region;
            scenario_from_json(nlohmann::json::parse(slurp(dir / "f.json")), scenario, region);
            int expected = 0;
            try {
                std::istringstream is(text);
                const MobilityTrace t = read_trace_csv(is, scenario, region);
                expected = find_trace_violation(t).has_value() ? 2 : 0;
            } catch (const ConfigError&) {
                expected = 2;
            }

            CHECK(run_cli("validate " + trace.string(), dir).code == expected);
        }
    }
}

} // TEST_SUITE
