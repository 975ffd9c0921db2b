#include "nschr/driver.hpp"

#include "nschr/errors.hpp"
#include "nschr/stencil.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <thread>

namespace nschr {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    return out;
}

StepRecord make_record(const NschState& s, double gamma) {
    StepRecord r;
    r.t = s.t;
    r.mass = mass(s.c);
    r.div_inf = divergence_inf(s.u, s.v);
    r.overshoot = overshoot(s.c);
    r.energy = energy_nsch(s, gamma);
    return r;
}

StepRecord make_record(const RelaxState& s, const RelaxParams& p) {
    StepRecord r;
    r.t = s.t;
    r.mass = mass(s.c);
    r.div_inf = divergence_inf(s.u, s.v);
    r.overshoot = overshoot(s.c);
    r.energy = energy_relax(s, p);
    return r;
}

} // namespace

int n_steps(const CaseSpec& cs) {
    const int n = static_cast<int>(std::llround(cs.t_end / cs.dt));
    if (n < 1) throw ConfigError("t_end shorter than one time step");
    return n;
}

NschRun simulate_nsch(const CaseSpec& cs, const KrylovConfig& kc,
                      const std::function<void(int, const NschState&)>& cb) {
    NschStepper stepper(cs.grid, ModelParams{cs.gamma, cs.dt}, kc);
    CellField c0(cs.grid);
    FaceFieldX u0(cs.grid);
    FaceFieldY v0(cs.grid);
    init_case(cs, c0, u0, v0);

    NschRun run{stepper.make_state(c0, u0, v0), {}};
    const int n = n_steps(cs);
    run.series.reserve(n + 1);
    run.series.push_back(make_record(run.state, cs.gamma));
    if (cb) cb(0, run.state);
    for (int k = 1; k <= n; ++k) {
        try {
            stepper.step(run.state);
        } catch (const SolverError& e) {
            throw SolverError("step " + std::to_string(k) + " (t=" +
                              std::to_string(run.state.t) + "): " + e.what());
        }
        run.series.push_back(make_record(run.state, cs.gamma));
        if (cb) cb(k, run.state);
    }
    return run;
}

RelaxRun simulate_relax(const CaseSpec& cs, double alpha, double beta, double delta,
                        const KrylovConfig& kc,
                        const std::function<void(int, const RelaxState&)>& cb) {
    RelaxParams rp{alpha, beta, delta, cs.gamma, cs.dt};
    RelaxStepper stepper(cs.grid, rp, kc);
    CellField c0(cs.grid);
    FaceFieldX u0(cs.grid);
    FaceFieldY v0(cs.grid);
    init_case(cs, c0, u0, v0);

    RelaxRun run{stepper.init(c0, u0, v0), {}};
    const int n = n_steps(cs);
    run.series.reserve(n + 1);
    run.series.push_back(make_record(run.state, rp));
    if (cb) cb(0, run.state);
    for (int k = 1; k <= n; ++k) {
        try {
            stepper.step(run.state);
        } catch (const SolverError& e) {
            throw SolverError("step " + std::to_string(k) + " (t=" +
                              std::to_string(run.state.t) + "): " + e.what());
        }
        run.series.push_back(make_record(run.state, rp));
        if (cb) cb(k, run.state);
    }
    return run;
}

std::vector<SweepRow> run_sweep_rows(const SweepConfig& sc) {
    std::vector<SweepRow> rows;
    for (double a : sc.alphas)
        for (double b : sc.betas)
            for (double d : sc.deltas) rows.push_back({a, b, d, {}, "ok"});
    std::sort(rows.begin(), rows.end(), [](const SweepRow& l, const SweepRow& r) {
        return std::tie(l.alpha, l.beta, l.delta) < std::tie(r.alpha, r.beta, r.delta);
    });

    const NschRun ref = simulate_nsch(sc.cs, sc.krylov);

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const size_t k = next.fetch_add(1);
            if (k >= rows.size()) return;
            SweepRow& row = rows[k];
            try {
                RelaxRun run = simulate_relax(sc.cs, row.alpha, row.beta, row.delta, sc.krylov);
                RelaxParams rp{row.alpha, row.beta, row.delta, sc.cs.gamma, sc.cs.dt};
                row.err = error_report(run.state, ref.state, rp);
            } catch (const std::exception& e) {
                std::string msg = e.what();
                std::replace(msg.begin(), msg.end(), ',', ';');
                row.status = msg;
            }
        }
    };

    const int nthreads = std::max(1, std::min<int>(sc.workers, static_cast<int>(rows.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

void write_energy_series(const std::string& path, const std::vector<StepRecord>& series,
                         bool relax_cols) {
    auto out = open_out(path);
    out << "t,E_total,E_kin,E_well,E_grad";
    if (relax_cols) out << ",E_penalty,E_pressure,E_flux";
    out << "\n";
    for (const auto& r : series) {
        out << fmt(r.t) << ',' << fmt(r.energy.total) << ',' << fmt(r.energy.kinetic) << ','
            << fmt(r.energy.doublewell) << ',' << fmt(r.energy.gradient);
        if (relax_cols)
            out << ',' << fmt(r.energy.penalty) << ',' << fmt(r.energy.pressure) << ','
                << fmt(r.energy.flux);
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_mass_series(const std::string& path, const std::vector<StepRecord>& series) {
    auto out = open_out(path);
    out << "t,mass,div_inf,overshoot\n";
    for (const auto& r : series)
        out << fmt(r.t) << ',' << fmt(r.mass) << ',' << fmt(r.div_inf) << ','
            << fmt(r.overshoot) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

namespace {

void write_snapshot_rows(std::ofstream& out, const GridSpec& g, const CellField& c,
                         const CellField& p, const FaceFieldX& u, const FaceFieldY& v,
                         const CellField* omega, const FaceFieldX* mx, const FaceFieldY* my) {
    CellField uc(g), vc(g), mxc(g), myc(g);
    average_u_to_cell(u, uc);
    average_v_to_cell(v, vc);
    if (mx) average_u_to_cell(*mx, mxc);
    if (my) average_v_to_cell(*my, myc);
    out << "x,y,c,p,u_cell,v_cell";
    if (omega) out << ",omega,mx_cell,my_cell";
    out << "\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int k = g.idx(i, j);
            out << fmt(g.xc(i)) << ',' << fmt(g.yc(j)) << ',' << fmt(c[k]) << ',' << fmt(p[k])
                << ',' << fmt(uc[k]) << ',' << fmt(vc[k]);
            if (omega) out << ',' << fmt((*omega)[k]) << ',' << fmt(mxc[k]) << ',' << fmt(myc[k]);
            out << "\n";
        }
}

} // namespace

void write_snapshot(const std::string& path, const NschState& s) {
    auto out = open_out(path);
    write_snapshot_rows(out, s.c.grid(), s.c, s.p, s.u, s.v, nullptr, nullptr, nullptr);
    if (!out) throw IoError("write failed: " + path);
}

void write_snapshot(const std::string& path, const RelaxState& s) {
    auto out = open_out(path);
    write_snapshot_rows(out, s.c.grid(), s.c, s.p, s.u, s.v, &s.omega, &s.mx, &s.my);
    if (!out) throw IoError("write failed: " + path);
}

void write_error_series(const std::string& path, const std::vector<ErrorReport>& rows) {
    auto out = open_out(path);
    out << "t,p_err,c_err,c_sq_err,penalty_err,u_err,flux_err,grad_err\n";
    for (const auto& r : rows)
        out << fmt(r.t) << ',' << fmt(r.p_err) << ',' << fmt(r.c_err) << ',' << fmt(r.c_sq_err)
            << ',' << fmt(r.penalty_err) << ',' << fmt(r.u_err) << ',' << fmt(r.flux_err) << ','
            << fmt(r.grad_err) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

void write_error_table(const std::string& path, const std::vector<SweepRow>& rows) {
    auto out = open_out(path);
    out << "alpha,beta,delta,p_err,c_err,c_sq_err,penalty_err,u_err,flux_err,grad_err,status\n";
    for (const auto& r : rows)
        out << fmt(r.alpha) << ',' << fmt(r.beta) << ',' << fmt(r.delta) << ',' << fmt(r.err.p_err)
            << ',' << fmt(r.err.c_err) << ',' << fmt(r.err.c_sq_err) << ','
            << fmt(r.err.penalty_err) << ',' << fmt(r.err.u_err) << ',' << fmt(r.err.flux_err)
            << ',' << fmt(r.err.grad_err) << ',' << r.status << "\n";
    if (!out) throw IoError("write failed: " + path);
}

namespace {

std::string snap_name(const std::string& dir, double t) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "snapshot_t%g.csv", t);
    return dir + "/" + buf;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir);
}

} // namespace

void run_single(const RunConfig& rc) {
    ensure_dir(rc.out_dir);
    const int n = n_steps(rc.cs);

    // Snapshot step indices from requested times.
    std::vector<std::pair<int, double>> snaps;
    if (rc.out_snapshots)
        for (double t : rc.snapshot_times) {
            int k = static_cast<int>(std::llround(t / rc.cs.dt));
            k = std::clamp(k, 0, n);
            snaps.emplace_back(k, t);
        }

    if (rc.solver == "nsch") {
        auto cb = [&](int step, const NschState& s) {
            for (const auto& [k, t] : snaps)
                if (k == step) write_snapshot(snap_name(rc.out_dir, t), s);
        };
        NschRun run = simulate_nsch(rc.cs, rc.krylov, cb);
        if (rc.out_energy)
            write_energy_series(rc.out_dir + "/energy.csv", run.series, false);
        if (rc.out_mass) write_mass_series(rc.out_dir + "/mass.csv", run.series);
        return;
    }

    // Relaxation run, optionally tracking the reference solver in lockstep.
    std::unique_ptr<NschStepper> ref_stepper;
    std::unique_ptr<NschState> ref_state;
    std::vector<ErrorReport> err_rows;
    if (rc.out_error_vs_reference) {
        ref_stepper = std::make_unique<NschStepper>(rc.cs.grid,
                                                    ModelParams{rc.cs.gamma, rc.cs.dt}, rc.krylov);
        CellField c0(rc.cs.grid);
        FaceFieldX u0(rc.cs.grid);
        FaceFieldY v0(rc.cs.grid);
        init_case(rc.cs, c0, u0, v0);
        ref_state = std::make_unique<NschState>(ref_stepper->make_state(c0, u0, v0));
    }
    RelaxParams rp{rc.alpha, rc.beta, rc.delta, rc.cs.gamma, rc.cs.dt};
    auto cb = [&](int step, const RelaxState& s) {
        for (const auto& [k, t] : snaps)
            if (k == step) write_snapshot(snap_name(rc.out_dir, t), s);
        if (ref_state) {
            if (step > 0) ref_stepper->step(*ref_state);
            err_rows.push_back(error_report(s, *ref_state, rp));
        }
    };
    RelaxRun run = simulate_relax(rc.cs, rc.alpha, rc.beta, rc.delta, rc.krylov, cb);
    if (rc.out_energy) write_energy_series(rc.out_dir + "/energy.csv", run.series, true);
    if (rc.out_mass) write_mass_series(rc.out_dir + "/mass.csv", run.series);
    if (rc.out_error_vs_reference)
        write_error_series(rc.out_dir + "/error_series.csv", err_rows);
}

void run_sweep(const SweepConfig& sc) {
    ensure_dir(sc.out_dir);
    const auto rows = run_sweep_rows(sc);
    write_error_table(sc.out_dir + "/" + sc.report, rows);
}

} // namespace nschr
