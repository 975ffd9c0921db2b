#include "nschr/config.hpp"
#include "nschr/driver.hpp"
#include "nschr/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace nschr;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               fs::path("nschr_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name, const std::string& content) const {
        const std::string p = (path / name).string();
        std::ofstream out(p);
        out << content;
        return p;
    }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("run config: defaults from the case, overrides, validation") {
    TempDir td;
    const std::string cfg = td.file("run.cfg",
                                    "# comment line\n"
                                    "case = ostwald1d\n"
                                    "solver = relax\n"
                                    "alpha = 1e-7\n"
                                    "outputs = energy_series, mass_series\n"
                                    "out_dir = " + (td.path / "out").string() + "\n");
    RunConfig rc = parse_run_config(cfg);
    CHECK(rc.cs.grid.nx == 100);
    CHECK(rc.cs.gamma == 1e-3);
    CHECK(rc.solver == "relax");
    CHECK(rc.alpha == 1e-7);
    CHECK(rc.out_energy);
    CHECK(rc.out_mass);
    CHECK_FALSE(rc.out_snapshots);

    const std::string ov = td.file("ov.cfg",
                                   "case = ostwald1d\nsolver = nsch\nnx = 64\n"
                                   "dt = 5e-4\nt_end = 0.01\n");
    RunConfig r2 = parse_run_config(ov);
    CHECK(r2.cs.grid.nx == 64);
    CHECK(r2.cs.dt == 5e-4);
}

TEST_CASE("run config rejections") {
    TempDir td;
    CHECK_THROWS_AS(parse_run_config(td.file("a.cfg", "solver = nsch\n")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(td.file("b.cfg", "case = ostwald1d\n")), ConfigError);
    CHECK_THROWS_AS(
        parse_run_config(td.file("c.cfg", "case = ostwald1d\nsolver = magic\n")),
        ConfigError);
    CHECK_THROWS_AS(
        parse_run_config(td.file("d.cfg", "case = ostwald1d\nsolver = nsch\nwat = 1\n")),
        ConfigError);
    CHECK_THROWS_AS(
        parse_run_config(td.file("e.cfg", "case = ostwald1d\nsolver = nsch\ndt = zebra\n")),
        ConfigError);
    CHECK_THROWS_AS(parse_run_config(td.file(
                        "f.cfg", "case = ostwald1d\nsolver = nsch\n"
                                 "outputs = field_snapshots\nsnapshot_times = 0.0,0.9\n")),
                    ConfigError); // beyond t_end
    CHECK_THROWS_AS(parse_run_config(td.file("g.cfg",
                                             "case = ostwald1d\nsolver = nsch\n"
                                             "outputs = error_vs_reference\n")),
                    ConfigError); // requires relax
    CHECK_THROWS_AS(parse_run_config(td.file("h.cfg", "case = ostwald1d\ncase = x\n")),
                    ConfigError); // duplicate (caught at parse)
    CHECK_THROWS_AS(parse_run_config((td.path / "missing.cfg").string()), ConfigError);
}

TEST_CASE("sweep config parsing and validation") {
    TempDir td;
    const std::string cfg = td.file("s.cfg",
                                    "case = ostwald1d\n"
                                    "alpha_list = 1e-4, 1e-5\n"
                                    "beta_list = 1e-9\n"
                                    "delta_list = 1e-8\n"
                                    "workers = 2\n"
                                    "report = table.csv\n");
    SweepConfig sc = parse_sweep_config(cfg);
    CHECK(sc.alphas.size() == 2);
    CHECK(sc.workers == 2);
    CHECK(sc.report == "table.csv");

    CHECK_THROWS_AS(
        parse_sweep_config(td.file("bad.cfg", "case = ostwald1d\nalpha_list = 2.0\n")),
        ConfigError); // outside (0,1]
}

TEST_CASE("energy and snapshot writers follow the format contract") {
    TempDir td;
    GridSpec g = GridSpec::make_1d(4);
    NschState s(g);
    s.c.fill(0.5);
    write_snapshot((td.path / "snap.csv").string(), s);
    std::ifstream in(td.path / "snap.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,y,c,p,u_cell,v_cell");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4); // one row per cell of the 4x1 grid

    std::vector<StepRecord> series(3);
    write_energy_series((td.path / "e.csv").string(), series, false);
    std::ifstream ein(td.path / "e.csv");
    std::getline(ein, line);
    CHECK(line == "t,E_total,E_kin,E_well,E_grad");
    write_energy_series((td.path / "er.csv").string(), series, true);
    std::ifstream erin(td.path / "er.csv");
    std::getline(erin, line);
    CHECK(line == "t,E_total,E_kin,E_well,E_grad,E_penalty,E_pressure,E_flux");

    RelaxState rs(g);
    write_snapshot((td.path / "rsnap.csv").string(), rs);
    std::ifstream rin(td.path / "rsnap.csv");
    std::getline(rin, line);
    CHECK(line == "x,y,c,p,u_cell,v_cell,omega,mx_cell,my_cell");
}

TEST_CASE("error table: row count and lexicographic order") {
    TempDir td;
    SweepConfig sc;
    sc.cs = default_run("ostwald1d");
    sc.cs.grid = GridSpec::make_1d(32);
    sc.cs.t_end = 5e-3; // five steps
    sc.alphas = {1e-5, 1e-7, 1e-6};
    sc.betas = {1e-6};
    sc.deltas = {1e-7, 1e-8};
    auto rows = run_sweep_rows(sc);
    CHECK(rows.size() == 6);
    for (size_t k = 0; k + 1 < rows.size(); ++k) {
        CHECK(std::tie(rows[k].alpha, rows[k].beta, rows[k].delta) <=
              std::tie(rows[k + 1].alpha, rows[k + 1].beta, rows[k + 1].delta));
        CHECK(rows[k].status == "ok");
    }
    write_error_table((td.path / "t.csv").string(), rows);
    std::ifstream in(td.path / "t.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line ==
          "alpha,beta,delta,p_err,c_err,c_sq_err,penalty_err,u_err,flux_err,grad_err,status");
    int n = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++n;
    CHECK(n == 6);
}

TEST_CASE("sweep results are independent of the worker count") {
    SweepConfig sc;
    sc.cs = default_run("ostwald1d");
    sc.cs.grid = GridSpec::make_1d(32);
    sc.cs.t_end = 5e-3;
    sc.alphas = {1e-5, 1e-6};
    sc.betas = {1e-6, 1e-7};
    sc.deltas = {1e-7};
    sc.workers = 1;
    auto r1 = run_sweep_rows(sc);
    sc.workers = 4;
    auto r4 = run_sweep_rows(sc);
    REQUIRE(r1.size() == r4.size());
    for (size_t k = 0; k < r1.size(); ++k) {
        CHECK(r1[k].err.c_err == r4[k].err.c_err); // byte-identical doubles
        CHECK(r1[k].err.u_err == r4[k].err.u_err);
    }
}

TEST_CASE("repeated runs produce byte-identical outputs") {
    TempDir td;
    RunConfig rc;
    rc.cs = default_run("ostwald1d");
    rc.cs.grid = GridSpec::make_1d(50);
    rc.cs.t_end = 0.01;
    rc.solver = "relax";
    rc.alpha = 1e-6;
    rc.beta = 1e-5;
    rc.delta = 1e-6;
    rc.out_energy = true;
    rc.out_mass = true;
    rc.out_snapshots = true;
    rc.snapshot_times = {0.0, 0.01};
    rc.out_dir = (td.path / "r1").string();
    run_single(rc);
    rc.out_dir = (td.path / "r2").string();
    run_single(rc);
    for (const char* f : {"energy.csv", "mass.csv", "snapshot_t0.csv", "snapshot_t0.01.csv"}) {
        CHECK(slurp((td.path / "r1" / f).string()) == slurp((td.path / "r2" / f).string()));
        CHECK_FALSE(slurp((td.path / "r1" / f).string()).empty());
    }
}

TEST_CASE("lockstep error series against the reference") {
    TempDir td;
    RunConfig rc;
    rc.cs = default_run("ostwald1d");
    rc.cs.grid = GridSpec::make_1d(32);
    rc.cs.t_end = 5e-3;
    rc.solver = "relax";
    rc.alpha = 1e-8;
    rc.beta = 1e-8;
    rc.delta = 1e-8;
    rc.out_error_vs_reference = true;
    rc.out_dir = (td.path / "err").string();
    run_single(rc);
    std::ifstream in(td.path / "err" / "error_series.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,p_err,c_err,c_sq_err,penalty_err,u_err,flux_err,grad_err");
    int rows = 0;
    double last_c = -1.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        std::stringstream ss(line);
        std::string tok;
        std::getline(ss, tok, ',');
        std::getline(ss, tok, ','); // p_err
        std::getline(ss, tok, ','); // c_err
        last_c = std::stod(tok);
    }
    CHECK(rows == 6); // t=0 plus five steps
    CHECK(last_c >= 0.0);
    CHECK(last_c < 1e-6); // tiny parameters track the reference closely
}
