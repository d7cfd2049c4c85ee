#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = std::string(ABELPROP_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(raw);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "abelprop_cli_tests" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write_config(const fs::path& path, const std::string& out_dir,
                  const std::string& drop_key = {}, const std::string& extra = {}) {
    const std::pair<const char*, const char*> entries[] = {
        {"d1", "8"},          {"d2", "0.7"},    {"d3", "1.3"},    {"b1", "26.55"},
        {"b2", "1"},          {"k1", "1.5"},    {"k2", "1.5"},    {"N", "2.5"},
        {"x1_0", "0.1"},      {"x2_0", "0.08"}, {"x3_0", "2.32"}, {"t0", "0"},
        {"horizon", "0.5"},   {"step", "1e-3"}, {"order", "20"},  {"C", "2"},
        {"branch", "-"},      {"tol_hard", "1e-9"}, {"tol_diag", "1e-6"},
    };
    std::ofstream f(path);
    for (const auto& [k, v] : entries) {
        if (drop_key == k) continue;
        f << k << " = " << v << "\n";
    }
    if (drop_key != "out_dir") f << "out_dir = " << out_dir << "\n";
    f << extra;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("cli solve writes both files and is byte-deterministic") {
    const fs::path dir = scratch_dir("solve");
    const fs::path cfg = dir / "demo.conf";
    write_config(cfg, (dir / "out").string());

    const RunResult r1 = run_cli("solve --config " + cfg.string() + " --trig-fallback", dir);
    CHECK(r1.exit_code == 0);
    REQUIRE(fs::exists(dir / "out" / "coefficients.csv"));
    REQUIRE(fs::exists(dir / "out" / "trajectory.csv"));

    const std::string traj = slurp(dir / "out" / "trajectory.csv");
    // header + horizon/step + 1 samples
    CHECK(count_lines(traj) == 1 + 501);
    CHECK(traj.rfind("t,x1,x2,x3\n", 0) == 0);

    const std::string coeffs1 = slurp(dir / "out" / "coefficients.csv");
    CHECK(count_lines(coeffs1) == 1 + 21);  // header + n = 0..order

    // Re-run into a fresh directory: byte-identical outputs.
    const fs::path cfg2 = dir / "demo2.conf";
    write_config(cfg2, (dir / "out2").string());
    const RunResult r2 = run_cli("solve --config " + cfg2.string() + " --trig-fallback", dir);
    CHECK(r2.exit_code == 0);
    CHECK(slurp(dir / "out2" / "trajectory.csv") == traj);
    CHECK(slurp(dir / "out2" / "coefficients.csv") == coeffs1);
}

TEST_CASE("cli solve round-trips the trajectory CSV at printed precision") {
    const fs::path dir = scratch_dir("roundtrip");
    const fs::path cfg = dir / "demo.conf";
    write_config(cfg, (dir / "out").string());
    REQUIRE(run_cli("solve --config " + cfg.string() + " --trig-fallback", dir).exit_code == 0);

    std::ifstream in(dir / "out" / "trajectory.csv");
    std::string header;
    std::getline(in, header);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        double t, x1, x2, x3;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &t, &x1, &x2, &x3) == 4);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g", t, x1, x2, x3);
        CHECK(line == buf);
        ++rows;
    }
    CHECK(rows == 501);
}

TEST_CASE("cli reports missing keys with exit 1") {
    const fs::path dir = scratch_dir("missing");
    const fs::path cfg = dir / "broken.conf";
    write_config(cfg, (dir / "out").string(), "k1");
    const RunResult r = run_cli("solve --config " + cfg.string(), dir);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("k1") != std::string::npos);
}

TEST_CASE("cli pipeline errors exit with 2") {
    const fs::path dir = scratch_dir("pipefail");
    const fs::path cfg = dir / "demo.conf";
    write_config(cfg, (dir / "out").string());
    // Without the fallback the demo cubic has delta1 < 0.
    const RunResult r = run_cli("solve --config " + cfg.string(), dir);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("delta1") != std::string::npos);
}

TEST_CASE("cli reference: drift column and sample counts") {
    const fs::path dir = scratch_dir("reference");
    const fs::path cfg = dir / "demo.conf";
    write_config(cfg, (dir / "out").string());
    REQUIRE(run_cli("reference --config " + cfg.string(), dir).exit_code == 0);
    const std::string csv = slurp(dir / "out" / "reference.csv");
    CHECK(csv.rfind("t,x1,x2,x3,drift\n", 0) == 0);
    CHECK(count_lines(csv) == 1 + 501);

    // Halving the step doubles the row count.
    const fs::path cfg2 = dir / "demo2.conf";
    write_config(cfg2, (dir / "out2").string(), "step", "step = 5e-4\n");
    REQUIRE(run_cli("reference --config " + cfg2.string(), dir).exit_code == 0);
    CHECK(count_lines(slurp(dir / "out2" / "reference.csv")) == 1 + 1001);
}

TEST_CASE("cli roots on synthetic cubics") {
    const fs::path dir = scratch_dir("roots");
    const fs::path cfg = dir / "demo.conf";
    write_config(cfg, (dir / "out").string());

    // (y-1)^2 (y+2): radical path, double root reported.
    const RunResult dbl =
        run_cli("roots --config " + cfg.string() + " --cubic 1 0 -3 2", dir);
    CHECK(dbl.exit_code == 0);
    CHECK(dbl.out.find("method: cardano") != std::string::npos);
    CHECK(dbl.out.find("vieta") != std::string::npos);

    // y^3 - y: three distinct real roots, refused without the fallback.
    const RunResult tri = run_cli("roots --config " + cfg.string() + " --cubic 1 0 -1 0", dir);
    CHECK(tri.exit_code == 2);
    CHECK(tri.err.find("delta1") != std::string::npos);

    // With the fallback the same cubic trips the zero-shift check instead.
    const RunResult zero =
        run_cli("roots --config " + cfg.string() + " --cubic 1 0 -1 0 --trig-fallback", dir);
    CHECK(zero.exit_code == 2);
    CHECK(zero.err.find("theta") != std::string::npos);

    // (x+1)(x+2)(x+3): fallback path with all shifts positive.
    const RunResult ok =
        run_cli("roots --config " + cfg.string() + " --cubic 1 6 11 6 --trig-fallback", dir);
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("method: trigonometric") != std::string::npos);

    // The scenario-derived cubic works too.
    const RunResult scen =
        run_cli("roots --config " + cfg.string() + " --trig-fallback", dir);
    CHECK(scen.exit_code == 0);
}

TEST_CASE("cli validate writes the machine-readable report") {
    const fs::path dir = scratch_dir("validate");
    const fs::path cfg = dir / "demo.conf";
    write_config(cfg, (dir / "out").string());
    const RunResult r = run_cli("validate --config " + cfg.string() + " --trig-fallback", dir);
    // Diagnostics exceed the demo tol_diag = 1e-6; hard identities pass.
    CHECK(r.exit_code == 3);
    for (const char* fam : {"system_residual", "lienard_along_series", "abel_composite",
                            "conservation_drift", "series_vs_rk4"})
        CHECK(r.out.find(fam) != std::string::npos);
    REQUIRE(fs::exists(dir / "out" / "validation.json"));
    const std::string json = slurp(dir / "out" / "validation.json");
    CHECK(json.find("\"series_vs_rk4\"") != std::string::npos);
    CHECK(json.find("\"exit_code\": 3") != std::string::npos);

    // Infinite diagnostic tolerance turns the same run into a clean pass.
    const fs::path cfg2 = dir / "demo2.conf";
    write_config(cfg2, (dir / "out2").string(), "tol_diag", "tol_diag = inf\n");
    const RunResult r2 = run_cli("validate --config " + cfg2.string() + " --trig-fallback", dir);
    CHECK(r2.exit_code == 0);
}

TEST_CASE("cli compare produces the deviation table") {
    const fs::path dir = scratch_dir("compare");
    const fs::path cfg = dir / "demo.conf";
    write_config(cfg, (dir / "out").string());
    const RunResult r = run_cli("compare --config " + cfg.string() + " --trig-fallback", dir);
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(dir / "out" / "compare.csv");
    CHECK(csv.rfind("t,x1_series,x2_series,x3_series,x1_ref,x2_ref,x3_ref,dev_max\n", 0) == 0);
    CHECK(count_lines(csv) == 1 + 501);
}

TEST_CASE("cli overrides: --order, --branch and --out") {
    const fs::path dir = scratch_dir("overrides");
    const fs::path cfg = dir / "demo.conf";
    write_config(cfg, (dir / "out").string());
    const RunResult r = run_cli("solve --config " + cfg.string() +
                                    " --trig-fallback --order 12 --out " +
                                    (dir / "alt").string(),
                                dir);
    CHECK(r.exit_code == 0);
    CHECK(count_lines(slurp(dir / "alt" / "coefficients.csv")) == 1 + 13);

    // Wrong branch: the fit reports the mismatch as a pipeline error.
    const RunResult bad =
        run_cli("solve --config " + cfg.string() + " --trig-fallback --branch +", dir);
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("branch") != std::string::npos);
}
