#include "nschr/config.hpp"

#include "nschr/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace nschr {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::map<std::string, std::string> read_kv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key))
            throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key " + key);
        kv[key] = val;
    }
    return kv;
}

double to_double(const std::string& key, const std::string& v) {
    size_t pos = 0;
    double d;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": not a number: " + v);
    }
    if (pos != v.size()) throw ConfigError("key " + key + ": trailing characters in " + v);
    return d;
}

int to_int(const std::string& key, const std::string& v) {
    size_t pos = 0;
    int i;
    try {
        i = std::stoi(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": not an integer: " + v);
    }
    if (pos != v.size()) throw ConfigError("key " + key + ": trailing characters in " + v);
    return i;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        out.push_back(to_double(key, tok));
    }
    if (out.empty()) throw ConfigError("key " + key + ": empty list");
    return out;
}

CaseSpec case_from_kv(std::map<std::string, std::string>& kv) {
    if (!kv.count("case")) throw ConfigError("missing required key: case");
    CaseSpec cs = default_run(kv.at("case"));
    kv.erase("case");
    int nx = cs.grid.nx, ny = cs.grid.ny;
    if (kv.count("nx")) {
        nx = to_int("nx", kv.at("nx"));
        kv.erase("nx");
    }
    if (kv.count("ny")) {
        ny = to_int("ny", kv.at("ny"));
        kv.erase("ny");
    }
    if (nx != cs.grid.nx || ny != cs.grid.ny) {
        cs.grid = (ny == 1) ? GridSpec::make_1d(nx, cs.grid.xmin, cs.grid.xmax)
                            : GridSpec::make(nx, ny, cs.grid.xmin, cs.grid.xmax, cs.grid.ymin,
                                             cs.grid.ymax);
    }
    if (kv.count("gamma")) {
        cs.gamma = to_double("gamma", kv.at("gamma"));
        kv.erase("gamma");
    }
    if (kv.count("dt")) {
        cs.dt = to_double("dt", kv.at("dt"));
        kv.erase("dt");
    }
    if (kv.count("t_end")) {
        cs.t_end = to_double("t_end", kv.at("t_end"));
        kv.erase("t_end");
    }
    if (!(cs.t_end > 0.0) || !(cs.dt > 0.0) || !(cs.gamma > 0.0))
        throw ConfigError("gamma, dt and t_end must be positive");
    return cs;
}

void krylov_from_kv(std::map<std::string, std::string>& kv, KrylovConfig& kc) {
    if (kv.count("krylov_tol")) {
        kc.tol = to_double("krylov_tol", kv.at("krylov_tol"));
        kv.erase("krylov_tol");
    }
    if (kv.count("krylov_restart")) {
        kc.restart = to_int("krylov_restart", kv.at("krylov_restart"));
        kv.erase("krylov_restart");
    }
    if (kv.count("krylov_max_iters")) {
        kc.max_iters = to_int("krylov_max_iters", kv.at("krylov_max_iters"));
        kv.erase("krylov_max_iters");
    }
    if (!(kc.tol > 0.0) || kc.restart < 1) throw ConfigError("invalid krylov settings");
}

void reject_leftovers(const std::map<std::string, std::string>& kv, const std::string& path) {
    if (!kv.empty()) throw ConfigError(path + ": unknown key: " + kv.begin()->first);
}

} // namespace

RunConfig parse_run_config(const std::string& path) {
    auto kv = read_kv(path);
    RunConfig rc;
    rc.cs = case_from_kv(kv);

    if (!kv.count("solver")) throw ConfigError("missing required key: solver");
    rc.solver = kv.at("solver");
    kv.erase("solver");
    if (rc.solver != "nsch" && rc.solver != "relax")
        throw ConfigError("solver must be nsch or relax");

    if (kv.count("alpha")) {
        rc.alpha = to_double("alpha", kv.at("alpha"));
        kv.erase("alpha");
    }
    if (kv.count("beta")) {
        rc.beta = to_double("beta", kv.at("beta"));
        kv.erase("beta");
    }
    if (kv.count("delta")) {
        rc.delta = to_double("delta", kv.at("delta"));
        kv.erase("delta");
    }
    krylov_from_kv(kv, rc.krylov);

    if (kv.count("outputs")) {
        std::stringstream ss(kv.at("outputs"));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (tok == "energy_series")
                rc.out_energy = true;
            else if (tok == "mass_series")
                rc.out_mass = true;
            else if (tok == "field_snapshots")
                rc.out_snapshots = true;
            else if (tok == "error_vs_reference")
                rc.out_error_vs_reference = true;
            else if (!tok.empty())
                throw ConfigError("unknown output: " + tok);
        }
        kv.erase("outputs");
    }
    if (kv.count("snapshot_times")) {
        rc.snapshot_times = to_list("snapshot_times", kv.at("snapshot_times"));
        kv.erase("snapshot_times");
        for (double t : rc.snapshot_times)
            if (t < 0.0 || t > rc.cs.t_end + 1e-12)
                throw ConfigError("snapshot time outside [0, t_end]");
    }
    if (kv.count("out_dir")) {
        rc.out_dir = kv.at("out_dir");
        kv.erase("out_dir");
    }
    if (rc.out_error_vs_reference && rc.solver != "relax")
        throw ConfigError("error_vs_reference output requires solver = relax");
    reject_leftovers(kv, path);
    return rc;
}

SweepConfig parse_sweep_config(const std::string& path) {
    auto kv = read_kv(path);
    SweepConfig sc;
    sc.cs = case_from_kv(kv);
    if (kv.count("alpha_list")) {
        sc.alphas = to_list("alpha_list", kv.at("alpha_list"));
        kv.erase("alpha_list");
    }
    if (kv.count("beta_list")) {
        sc.betas = to_list("beta_list", kv.at("beta_list"));
        kv.erase("beta_list");
    }
    if (kv.count("delta_list")) {
        sc.deltas = to_list("delta_list", kv.at("delta_list"));
        kv.erase("delta_list");
    }
    for (const auto* lst : {&sc.alphas, &sc.betas, &sc.deltas})
        for (double v : *lst)
            if (!(v > 0.0 && v <= 1.0))
                throw ConfigError("sweep parameter values must lie in (0,1]");
    krylov_from_kv(kv, sc.krylov);
    if (kv.count("report")) {
        sc.report = kv.at("report");
        kv.erase("report");
    }
    if (kv.count("out_dir")) {
        sc.out_dir = kv.at("out_dir");
        kv.erase("out_dir");
    }
    if (kv.count("workers")) {
        sc.workers = to_int("workers", kv.at("workers"));
        kv.erase("workers");
        if (sc.workers < 1) throw ConfigError("workers must be >= 1");
    }
    reject_leftovers(kv, path);
    return sc;
}

} // namespace nschr
