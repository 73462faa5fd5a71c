// Batch front-end: every harness is a subcommand emitting deterministic CSV.
// Exit codes: 0 success, 2 validation/usage error, 3 flagged non-convergence.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "hardylab/atoms.hpp"
#include "hardylab/counterexamples.hpp"
#include "hardylab/csv.hpp"
#include "hardylab/fourier.hpp"
#include "hardylab/grid_io.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/inequalities.hpp"
#include "hardylab/netspace.hpp"
#include "hardylab/rearrange.hpp"
#include "hardylab/rng.hpp"

namespace {

using namespace hardylab;

std::unique_ptr<std::ostream> open_out(const std::string& path, std::ostream*& os) {
    if (path.empty()) {
        os = &std::cout;
        return nullptr;
    }
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw std::runtime_error("cannot open for writing: " + path);
    os = f.get();
    return f;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

struct NormsOpts {
    std::string in, out;
    double lp = 0.0;
    std::vector<double> weighted;  // alpha p
    std::vector<double> lorentz;   // p q  (q <= 0 means infinity)
    std::vector<double> net;       // p q
    int k_min = -16, k_max = 12;
    bool sup = false;
    std::string profile_out;
};

int run_norms(const NormsOpts& o) {
    const GridFunction f = load_grid_csv(o.in);
    CsvTable t;
    t.header = {"norm", "value"};
    if (o.lp > 0.0) {
        auto& r = t.add_row();
        r = {"lp", csv_num(lp_norm(f, o.lp))};
    }
    if (o.sup) {
        auto& r = t.add_row();
        r = {"sup", csv_num(sup_norm(f))};
    }
    if (o.weighted.size() == 2) {
        WeightedNormSpec w;
        w.exponent_per_axis.assign(f.dim(), o.weighted[0]);
        w.outer_power = o.weighted[1];
        auto& r = t.add_row();
        r = {"weighted", csv_num(weighted_integral(f, w))};
    }
    if (o.lorentz.size() == 2) {
        LorentzParams lp;
        lp.p.assign(f.dim(), o.lorentz[0]);
        lp.q.assign(f.dim(), o.lorentz[1] <= 0.0 ? INFINITY : o.lorentz[1]);
        auto& r = t.add_row();
        r = {"lorentz", csv_num(lorentz_norm(f, lp))};
    }
    if (o.net.size() == 2 || !o.profile_out.empty()) {
        DyadicLattice lat;
        lat.k_min.assign(f.dim(), o.k_min);
        lat.k_max.assign(f.dim(), o.k_max);
        const NetProfile prof = net_profile(f, lat);
        if (!o.profile_out.empty()) {
            std::ofstream pos(o.profile_out);
            if (!pos) throw std::runtime_error("cannot open: " + o.profile_out);
            write_net_profile_csv(pos, prof);
        }
        if (o.net.size() == 2) {
            const NetNormResult nn =
                net_norm(prof, o.net[0], o.net[1] <= 0.0 ? INFINITY : o.net[1]);
            auto& r = t.add_row();
            r = {"net", csv_num(nn.value)};
        }
    }
    if (t.rows.empty() && o.profile_out.empty())
        throw std::invalid_argument("norms: no norm requested");
    std::ostream* os = nullptr;
    auto keep = open_out(o.out, os);
    t.write(*os);
    return 0;
}

struct FourierOpts {
    std::string in, out;
    double n = 4.0, xi_extent = 16.0;
    std::size_t xi_half_cells = 256;
};

int run_fourier(const FourierOpts& o) {
    const GridFunction f = load_grid_csv(o.in);
    std::vector<Axis> freq(f.dim(), symmetric_axis(o.xi_extent, o.xi_half_cells));
    const GridFunction g = truncated_fourier(f, o.n, freq);
    std::ostream* os = nullptr;
    auto keep = open_out(o.out, os);
    write_grid_csv(*os, g);
    return 0;
}

struct HardyOpts {
    std::string in, out, field_out;
    std::string eps = "0";
    int component_axis = -1, component_bit = 0;
    bool teps = false;
    std::string schedule = "1,2,4,8";
    double tol = 1e-8;
    double xi_extent = 16.0;
    std::size_t xi_half_cells = 256;
};

int run_hardy(const HardyOpts& o) {
    const GridFunction f = load_grid_csv(o.in);
    if (o.teps) {
        std::vector<Axis> freq(f.dim(), symmetric_axis(o.xi_extent, o.xi_half_cells));
        const auto sched = parse_list(o.schedule);
        const TepsResult tr =
            t_epsilon(f, EpsilonMask::parse(o.eps), sched, freq, o.tol);
        CsvTable t;
        t.header = {"stage", "N", "gap", "converged"};
        for (std::size_t s = 0; s < tr.n.size(); ++s) {
            auto& r = t.add_row();
            r = {csv_num(static_cast<int>(s)), csv_num(tr.n[s]),
                 s == 0 ? "" : csv_num(tr.gaps[s - 1]),
                 s + 1 == tr.n.size() ? (tr.converged ? "1" : "0") : ""};
        }
        std::ostream* os = nullptr;
        auto keep = open_out(o.out, os);
        t.write(*os);
        if (!o.field_out.empty()) save_grid_csv(o.field_out, tr.field);
        return tr.converged ? 0 : 3;
    }
    GridFunction h = o.component_axis >= 0
                         ? hardy_component(f, static_cast<std::size_t>(o.component_axis),
                                           o.component_bit)
                         : hardy_eps(f, EpsilonMask::parse(o.eps));
    std::ostream* os = nullptr;
    auto keep = open_out(o.out, os);
    write_grid_csv(*os, h);
    return 0;
}

struct VerifyOpts {
    std::string config, kind, out;
    int levels = 0;
};

int run_verify(const VerifyOpts& o) {
    std::ifstream is(o.config);
    if (!is) throw std::runtime_error("cannot open config: " + o.config);
    VerifyConfig cfg = parse_verify_config(is);
    if (o.levels > 0) cfg.levels = o.levels;

    CsvTable t;
    t.header = {"kind", "level", "N", "lhs", "rhs", "ratio", "tail_lhs", "tail_rhs", "flags"};
    bool flagged = false;
    auto emit = [&](const InequalityReport& rep) {
        auto& r = t.add_row();
        r = {rep.kind,          csv_num(rep.level),    csv_num(rep.n),
             csv_num(rep.lhs),  csv_num(rep.rhs),      csv_num(rep.ratio),
             csv_num(rep.tail_lhs), csv_num(rep.tail_rhs), rep.flags_str()};
        flagged = flagged || rep.flagged("nonconverged");
    };

    if (o.kind == "hlp_net") {
        // net-vs-Lorentz transform ratio, swept over the truncation schedule
        // at every refinement level
        for (int level = 0; level < cfg.levels; ++level) {
            const GridFunction f = make_family_function(cfg.family, level);
            for (double N : cfg.settings.schedule) {
                InequalityReport rep =
                    hlp_net_ratio(f, cfg.settings.p, cfg.settings.q, N, cfg.settings);
                rep.level = level;
                emit(rep);
            }
        }
    } else {
        const auto kind = kind_from_name(o.kind);
        if (!kind) throw std::invalid_argument("verify: unknown kind '" + o.kind + "'");
        const SweepResult sw =
            refinement_sweep(*kind, cfg.family, cfg.levels, cfg.settings);
        flagged = sw.growth_flagged;
        for (const auto& rep : sw.reports) emit(rep);
    }

    std::ostream* os = nullptr;
    auto keep = open_out(o.out, os);
    t.write(*os);
    return flagged ? 3 : 0;
}

struct AtomsOpts {
    std::string out;
    double p = 1.0;
    int d = 1;
    std::uint64_t seed = 1;
    std::size_t cells = 16;
    std::vector<double> interval{0.0, 1.0};
    std::vector<double> a_box;
    std::string scan = "fourier";  // fourier|hardy|both
    std::string side = "interior";
    int r_lo = 1, r_hi = 8;
};

int run_atoms(const AtomsOpts& o) {
    AtomSpec spec;
    spec.p = o.p;
    spec.cells_per_axis = o.cells;
    spec.moment_intervals.push_back({o.interval[0], o.interval[1]});
    if (o.d == 2) {
        if (o.a_box.size() != 2)
            throw std::invalid_argument("atoms: d=2 needs --a-box lo hi");
        spec.a_box.push_back({o.a_box[0], o.a_box[1]});
    } else if (o.d != 1) {
        throw std::invalid_argument("atoms: d must be 1 or 2");
    }
    const GridFunction a = make_simple_atom(spec, o.seed);
    const DecaySide side =
        o.side == "exterior" ? DecaySide::exterior : DecaySide::interior;

    CsvTable t;
    t.header = {"op", "p", "N", "r", "J", "slope_fit", "slope_pred"};
    auto emit = [&](DecayOp op, const char* name) {
        const DecayScan scan = atom_decay_scan(a, spec, o.r_lo, o.r_hi, side, op);
        for (std::size_t i = 0; i < scan.r.size(); ++i) {
            auto& r = t.add_row();
            r = {name,
                 csv_num(o.p),
                 csv_num(atom_moment_order(o.p)),
                 csv_num(scan.r[i]),
                 csv_num(scan.j_value[i]),
                 csv_num(scan.slope),
                 csv_num(scan.predicted)};
        }
    };
    if (o.scan == "fourier" || o.scan == "both") emit(DecayOp::fourier, "fourier");
    if (o.scan == "hardy" || o.scan == "both") emit(DecayOp::hardy_fourier, "hardy");
    std::ostream* os = nullptr;
    auto keep = open_out(o.out, os);
    t.write(*os);
    return 0;
}

struct CounterOpts {
    std::string out;
    std::string mode = "reverse_hardy";
    double p = 0.5;
    int n_max = 8;
    std::string n_list = "16,64,256";
};

int run_counterexample(const CounterOpts& o) {
    CsvTable t;
    if (o.mode == "reverse_hardy") {
        t.header = {"n", "I1", "I2", "log2_I2"};
        for (int n = 1; n <= o.n_max; ++n) {
            const ReverseHardyResult rr = reverse_hardy_pair(o.p, n);
            auto& r = t.add_row();
            r = {csv_num(n), csv_num(rr.i1), csv_num(rr.i2), csv_num(rr.log2_i2)};
        }
    } else if (o.mode == "signed") {
        t.header = {"N", "I1", "I2", "I1_over_logN"};
        for (double nv : parse_list(o.n_list)) {
            const int N = static_cast<int>(nv);
            const SignedHardyResult sr = signed_hardy_pair(o.p, N);
            auto& r = t.add_row();
            r = {csv_num(N), csv_num(sr.i1), csv_num(sr.i2),
                 csv_num(sr.i1 / std::log(static_cast<double>(N)))};
        }
    } else {
        throw std::invalid_argument("counterexample: mode must be reverse_hardy or signed");
    }
    std::ostream* os = nullptr;
    auto keep = open_out(o.out, os);
    t.write(*os);
    return 0;
}

struct CarlemanOpts {
    std::string out;
    std::string task = "divergence";  // divergence|partial|cauchy
    int n = 256;
    int m_max = 1 << 17;
    int t_samples = 500;
    std::uint64_t seed = 7;
};

int run_carleman(const CarlemanOpts& o) {
    CsvTable t;
    int code = 0;
    if (o.task == "divergence") {
        t.header = {"scan", "m", "partial_sum", "slope"};
        auto emit = [&](CarlemanSumKind kind, double p, const char* name) {
            const PartialSumScan s = carleman_partial_sums(kind, p, o.m_max);
            for (std::size_t i = 0; i < s.m.size(); ++i) {
                auto& r = t.add_row();
                r = {name, csv_num(s.m[i]), csv_num(s.value[i]), csv_num(s.slope)};
            }
        };
        emit(CarlemanSumKind::l2, 2.0, "l2");
        emit(CarlemanSumKind::lp, 1.5, "lp_1.5");
        emit(CarlemanSumKind::weighted, 3.0, "weighted_3");
    } else if (o.task == "partial") {
        Rng rng(o.seed);
        std::vector<double> ts(static_cast<std::size_t>(o.t_samples));
        for (double& v : ts) v = rng.uniform(-20.0, 20.0);
        const CarlemanField cf = carleman_partial_f(o.n, ts);
        t.header = {"t", "re_direct", "im_direct", "re_abel", "im_abel"};
        for (std::size_t i = 0; i < cf.t.size(); ++i) {
            auto& r = t.add_row();
            r = {csv_num(cf.t[i]), csv_num(cf.direct[i].real()),
                 csv_num(cf.direct[i].imag()), csv_num(cf.abel[i].real()),
                 csv_num(cf.abel[i].imag())};
        }
    } else if (o.task == "cauchy") {
        const CarlemanCauchy cc = carleman_cauchy_gap(o.n, o.t_samples, o.seed);
        t.header = {"n", "sup_gap", "tail_bound", "ok"};
        auto& r = t.add_row();
        r = {csv_num(o.n), csv_num(cc.sup_gap), csv_num(cc.tail_bound),
             cc.ok ? "1" : "0"};
        if (!cc.ok) code = 3;
    } else {
        throw std::invalid_argument("carleman: task must be divergence, partial or cauchy");
    }
    std::ostream* os = nullptr;
    auto keep = open_out(o.out, os);
    t.write(*os);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Hardy-Cesaro/Bellman averaging operators, truncated Fourier transforms, "
        "rearrangement/net norms and weighted-inequality checks"};
    app.require_subcommand(1);

    NormsOpts no;
    auto* norms = app.add_subcommand("norms", "norms of a serialized grid function");
    norms->add_option("--in", no.in, "input grid CSV")->required();
    norms->add_option("--out", no.out, "output CSV (default stdout)");
    norms->add_option("--lp", no.lp, "L_p norm exponent");
    norms->add_flag("--sup", no.sup, "sup norm");
    norms->add_option("--weighted", no.weighted, "power-weight norm: alpha p")->expected(2);
    norms->add_option("--lorentz", no.lorentz, "Lorentz norm: p q (q<=0 for sup)")->expected(2);
    norms->add_option("--net", no.net, "net norm: p q (q<=0 for sup)")->expected(2);
    norms->add_option("--k-min", no.k_min, "net lattice lower exponent");
    norms->add_option("--k-max", no.k_max, "net lattice upper exponent");
    norms->add_option("--profile-out", no.profile_out, "dump the net profile CSV");

    FourierOpts fo;
    auto* four = app.add_subcommand("fourier", "truncated Fourier transform dump");
    four->add_option("--in", fo.in)->required();
    four->add_option("--out", fo.out);
    four->add_option("--N", fo.n, "truncation cube edge length");
    four->add_option("--xi-extent", fo.xi_extent);
    four->add_option("--xi-half-cells", fo.xi_half_cells);

    HardyOpts ho;
    auto* har = app.add_subcommand("hardy", "Hardy/Bellman averages and their limits");
    har->add_option("--in", ho.in)->required();
    har->add_option("--out", ho.out);
    har->add_option("--eps", ho.eps, "per-axis 0/1 mask");
    har->add_option("--component-axis", ho.component_axis, "apply one component only");
    har->add_option("--component-bit", ho.component_bit);
    har->add_flag("--teps", ho.teps, "limit along a truncation schedule");
    har->add_option("--schedule", ho.schedule, "comma-separated N schedule");
    har->add_option("--tol", ho.tol, "convergence tolerance for the last gap");
    har->add_option("--xi-extent", ho.xi_extent);
    har->add_option("--xi-half-cells", ho.xi_half_cells);
    har->add_option("--field-out", ho.field_out, "also dump the final field");

    VerifyOpts vo;
    auto* ver = app.add_subcommand("verify", "inequality refinement sweeps");
    ver->add_option("--config", vo.config)->required();
    ver->add_option("--kind", vo.kind)->required();
    ver->add_option("--levels", vo.levels, "override the config level count");
    ver->add_option("--out", vo.out);

    AtomsOpts ao;
    auto* ato = app.add_subcommand("atoms", "simple p-atoms and decay scans");
    ato->add_option("--p", ao.p)->required();
    ato->add_option("--d", ao.d);
    ato->add_option("--seed", ao.seed);
    ato->add_option("--cells", ao.cells);
    ato->add_option("--interval", ao.interval, "moment interval lo hi")->expected(2);
    ato->add_option("--a-box", ao.a_box, "A-axis box lo hi (d=2)")->expected(2);
    ato->add_option("--scan", ao.scan, "fourier|hardy|both");
    ato->add_option("--side", ao.side, "interior|exterior");
    ato->add_option("--r-lo", ao.r_lo);
    ato->add_option("--r-hi", ao.r_hi);
    ato->add_option("--out", ao.out);

    CounterOpts co;
    auto* cnt = app.add_subcommand("counterexample", "reverse-Hardy and signed examples");
    cnt->add_option("--mode", co.mode, "reverse_hardy|signed");
    cnt->add_option("--p", co.p);
    cnt->add_option("--n-max", co.n_max, "largest index for reverse_hardy");
    cnt->add_option("--N-list,--N", co.n_list, "comma list of N for signed");
    cnt->add_option("--out", co.out);

    CarlemanOpts co2;
    auto* car = app.add_subcommand("carleman", "step-function example scans");
    car->add_option("--task", co2.task, "divergence|partial|cauchy");
    car->add_option("--n", co2.n, "partial-sum index");
    car->add_option("--m-max", co2.m_max, "divergence sum cutoff");
    car->add_option("--t-samples", co2.t_samples);
    car->add_option("--seed", co2.seed);
    car->add_option("--out", co2.out);

    try {
        app.parse(argc, argv);
        if (norms->parsed()) return run_norms(no);
        if (four->parsed()) return run_fourier(fo);
        if (har->parsed()) return run_hardy(ho);
        if (ver->parsed()) return run_verify(vo);
        if (ato->parsed()) return run_atoms(ao);
        if (cnt->parsed()) return run_counterexample(co);
        if (car->parsed()) return run_carleman(co2);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << app.help() << '\n';
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
