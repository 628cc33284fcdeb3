// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "emlame/auxmap.hpp"
#include "emlame/model.hpp"
#include "emlame/oracle.hpp"
#include "emlame/spectrum.hpp"
#include "emlame/wavefunction.hpp"

using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kInvalidConfig = 1, kNumericalFailure = 2, kVerifyFailure = 3 };

struct Options {
    double alpha = -1.0;
    double beta = 0.0;
    double k2 = 0.0;
    bool alpha_eq_gamma = false;
    std::string sweep;           // var:from:to:step
    int grid_points = 2000;
    double lambda_depth = 60.0;
    std::string format = "json";
    std::string out;
    bool paper_mode = false;
    bool with_oracle = false;
    int state = 0;
    int samples = 400;
    double xmax = 0.0;
    double tol = 1e-3;
};

std::string fmt_value(double v, bool paper_mode)
{
    char buf[64];
    if (paper_mode) {
        // round half to even at two decimals
        const double r = std::nearbyint(v*100.0)/100.0;
        std::snprintf(buf, sizeof buf, "%.2f", r);
    } else {
        std::snprintf(buf, sizeof buf, "%.12g", v);
    }
    return buf;
}

emlame::ModelParams make_params(const Options& o, double beta, double k2)
{
    if (o.alpha_eq_gamma)
        return emlame::ModelParams::alpha_eq_gamma(beta, k2);
    return emlame::ModelParams(o.alpha, beta, k2);
}

struct Row {
    std::string var;
    double value = 0.0;
    double x0 = 0.0, vmin = 0.0, v0 = 0.0;
    std::vector<double> energies;
    std::array<double, 3> band_edges{};
    emlame::BetaCase beta_case = emlame::BetaCase::Barrier;
    std::optional<double> oracle_delta;
    std::optional<std::string> error;
};

Row compute_row(const Options& o, const std::string& var, double beta, double k2)
{
    Row row;
    row.var = var;
    row.value = (var == "beta") ? beta : k2;
    try {
        const auto params = make_params(o, beta, k2);
        const auto dc = emlame::derive(params);
        row.x0 = dc.x0;
        row.vmin = dc.Vmin_interior;
        row.v0 = dc.V0;
        row.beta_case = emlame::classify_beta(beta);
        row.band_edges = {2.0 + k2 - 2.0*dc.kprime, 2.0 + k2 + 2.0*dc.kprime, 4.0};
        emlame::ScanOptions opts;
        opts.grid_points = o.grid_points;
        opts.lambda_depth = o.lambda_depth;
        try {
            for (const auto& s : emlame::find_bound_states(params, opts))
                row.energies.push_back(s.E);
        } catch (const emlame::window_error&) {
            // empty admissible window: legitimate empty spectrum
        }
        if (o.with_oracle) {
            const auto vr = emlame::verify_config(params, o.tol, o.grid_points, o.lambda_depth);
            row.oracle_delta = vr.pass ? vr.max_delta
                                       : std::numeric_limits<double>::quiet_NaN();
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

const char* beta_case_name(emlame::BetaCase c)
{
    switch (c) {
        case emlame::BetaCase::Barrier: return "barrier";
        case emlame::BetaCase::Neutral: return "neutral";
        case emlame::BetaCase::Well: return "well";
    }
    return "?";
}

void emit_rows(const Options& o, const std::vector<Row>& rows, std::ostream& os)
{
    if (o.format == "csv") {
        os << "var,value,x0,Vmin,V0,energies\n";
        for (const auto& r : rows) {
            os << r.var << ',' << fmt_value(r.value, o.paper_mode) << ',';
            if (r.error) {
                os << ",,,error:" << *r.error << '\n';
                continue;
            }
            os << fmt_value(r.x0, o.paper_mode) << ','
               << fmt_value(r.vmin, o.paper_mode) << ','
               << fmt_value(r.v0, o.paper_mode) << ',';
            for (std::size_t i = 0; i < r.energies.size(); ++i)
                os << (i ? ";" : "") << fmt_value(r.energies[i], o.paper_mode);
            os << '\n';
        }
        return;
    }
    json out = json::array();
    for (const auto& r : rows) {
        json j;
        j["var"] = r.var;
        j["value"] = r.value;
        if (r.error) {
            j["error"] = *r.error;
        } else {
            j["x0"] = r.x0;
            j["Vmin"] = r.vmin;
            j["V0"] = r.v0;
            j["energies"] = r.energies;
            j["band_edges"] = r.band_edges;
            j["beta_case"] = beta_case_name(r.beta_case);
            if (r.oracle_delta)
                j["oracle_delta"] = *r.oracle_delta;
        }
        out.push_back(std::move(j));
    }
    os << out.dump(2) << '\n';
}

struct SweepSpec {
    std::string var;
    double from, to, step;
};

std::optional<SweepSpec> parse_sweep(const std::string& s)
{
    SweepSpec sp;
    std::istringstream is(s);
    std::string tok;
    if (!std::getline(is, sp.var, ':')) return std::nullopt;
    if (!std::getline(is, tok, ':')) return std::nullopt;
    sp.from = std::stod(tok);
    if (!std::getline(is, tok, ':')) return std::nullopt;
    sp.to = std::stod(tok);
    if (!std::getline(is, tok, ':')) return std::nullopt;
    sp.step = std::stod(tok);
    if (sp.var != "beta" && sp.var != "k2") return std::nullopt;
    if (sp.step <= 0.0) return std::nullopt;
    return sp;
}

std::vector<double> sweep_values(const SweepSpec& sp)
{
    // integer stepping avoids accumulated drift at grid points like 0.1
    std::vector<double> vals;
    const int n = int(std::llround((sp.to - sp.from)/sp.step));
    for (int i = 0; i <= n; ++i)
        vals.push_back(sp.from + i*sp.step);
    return vals;
}

int with_output(const Options& o, const std::function<void(std::ostream&)>& writer)
{
    if (o.out.empty()) {
        writer(std::cout);
        return kOk;
    }
    std::ofstream f(o.out);
    if (!f) {
        std::cerr << "cannot open output file: " << o.out << '\n';
        return kInvalidConfig;
    }
    writer(f);
    return kOk;
}

int cmd_solve(const Options& o)
{
    const std::string var = o.alpha_eq_gamma || o.sweep == "beta" ? "beta" : "k2";
    const Row row = compute_row(o, var, o.beta, o.k2);
    const int rc = with_output(o, [&](std::ostream& os) {
        emit_rows(o, {row}, os);
    });
    if (rc != kOk) return rc;
    return row.error ? kNumericalFailure : kOk;
}

int cmd_sweep(const Options& o)
{
    const auto sp = parse_sweep(o.sweep);
    if (!sp) {
        std::cerr << "invalid --sweep spec, expected var:from:to:step with var in {beta,k2}\n";
        return kInvalidConfig;
    }
    const auto vals = sweep_values(*sp);
    for (double v : vals) {
        if (sp->var == "k2" && (v < 0.0 || v >= 1.0)) {
            std::cerr << "sweep leaves the admissible k2 domain [0,1)\n";
            return kInvalidConfig;
        }
    }
    std::vector<std::future<Row>> fut;
    fut.reserve(vals.size());
    for (double v : vals) {
        fut.push_back(std::async(std::launch::async, [&, v] {
            return (sp->var == "beta") ? compute_row(o, "beta", v, o.k2)
                                       : compute_row(o, "k2", o.beta, v);
        }));
    }
    std::vector<Row> rows;
    rows.reserve(vals.size());
    for (auto& f : fut)
        rows.push_back(f.get());   // input order regardless of completion order
    return with_output(o, [&](std::ostream& os) { emit_rows(o, rows, os); });
}

int cmd_bands(const Options& o)
{
    std::vector<double> k2s;
    if (!o.sweep.empty()) {
        const auto sp = parse_sweep(o.sweep);
        if (!sp || sp->var != "k2") {
            std::cerr << "bands sweeps over k2 only\n";
            return kInvalidConfig;
        }
        k2s = sweep_values(*sp);
    } else {
        k2s.push_back(o.k2);
    }
    return with_output(o, [&](std::ostream& os) {
        if (o.format == "csv") {
            os << "k2,E0,E1,E2\n";
            for (double k2 : k2s) {
                const double kp = std::sqrt(1.0 - k2);
                os << fmt_value(k2, o.paper_mode) << ','
                   << fmt_value(2.0 + k2 - 2.0*kp, o.paper_mode) << ','
                   << fmt_value(2.0 + k2 + 2.0*kp, o.paper_mode) << ','
                   << fmt_value(4.0, o.paper_mode) << '\n';
            }
        } else {
            json out = json::array();
            for (double k2 : k2s) {
                const double kp = std::sqrt(1.0 - k2);
                out.push_back({{"k2", k2},
                               {"E0", 2.0 + k2 - 2.0*kp},
                               {"E1", 2.0 + k2 + 2.0*kp},
                               {"E2", 4.0}});
            }
            os << out.dump(2) << '\n';
        }
    });
}

int cmd_wavefunction(const Options& o)
{
    try {
        const auto params = make_params(o, o.beta, o.k2);
        const auto dc = emlame::derive(params);
        emlame::ScanOptions opts;
        opts.grid_points = o.grid_points;
        opts.lambda_depth = o.lambda_depth;
        const auto states = emlame::find_bound_states(params, opts);
        if (o.state < 0 || o.state >= int(states.size())) {
            std::cerr << "state index " << o.state << " out of range (found "
                      << states.size() << " bound states)\n";
            return kInvalidConfig;
        }
        const emlame::EllipticContext ctx(o.k2);
        const auto wf = emlame::assemble(states[std::size_t(o.state)], dc, ctx);
        const double kappa = wf.bound_state.kappa;
        const double xmax = (o.xmax > 0.0) ? o.xmax : dc.x0 + 8.0/kappa;
        const char* parity = wf.parity == emlame::Parity::Even ? "even"
                           : wf.parity == emlame::Parity::Odd ? "odd" : "none";
        return with_output(o, [&](std::ostream& os) {
            if (o.format == "csv") {
                os << "# E=" << fmt_value(wf.bound_state.E, false)
                   << " C=" << fmt_value(wf.bound_state.C_norm, false)
                   << " parity=" << parity
                   << " nodes=" << wf.node_count() << '\n';
                os << "x,psi\n";
                for (int i = 0; i <= o.samples; ++i) {
                    const double x = -xmax + 2.0*xmax*i/o.samples;
                    os << fmt_value(x, false) << ',' << fmt_value(wf.evaluate(x), false) << '\n';
                }
            } else {
                json j;
                j["E"] = wf.bound_state.E;
                j["C"] = wf.bound_state.C_norm;
                j["kappa"] = kappa;
                j["parity"] = parity;
                j["nodes"] = wf.node_count();
                json pts = json::array();
                for (int i = 0; i <= o.samples; ++i) {
                    const double x = -xmax + 2.0*xmax*i/o.samples;
                    pts.push_back({x, wf.evaluate(x)});
                }
                j["samples"] = std::move(pts);
                os << j.dump(2) << '\n';
            }
        });
    } catch (const emlame::window_error&) {
        std::cerr << "no bound states: empty admissible window\n";
        return kInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

int cmd_verify(const Options& o)
{
    std::vector<std::pair<std::string, emlame::ModelParams>> configs;
    try {
        if (!o.sweep.empty()) {
            const auto sp = parse_sweep(o.sweep);
            if (!sp) {
                std::cerr << "invalid --sweep spec\n";
                return kInvalidConfig;
            }
            for (double v : sweep_values(*sp)) {
                if (sp->var == "beta")
                    configs.emplace_back("beta=" + fmt_value(v, false),
                                         make_params(o, v, o.k2));
                else
                    configs.emplace_back("k2=" + fmt_value(v, false),
                                         make_params(o, o.beta, v));
            }
        } else {
            configs.emplace_back("k2=" + fmt_value(o.k2, false),
                                 make_params(o, o.beta, o.k2));
        }
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kInvalidConfig;
    }

    bool all_pass = true;
    json report = json::array();
    for (const auto& [label, params] : configs) {
        try {
            const auto row = emlame::verify_config(params, o.tol, o.grid_points, o.lambda_depth);
            all_pass = all_pass && row.pass;
            json j;
            j["config"] = label;
            j["analytic"] = row.analytic;
            j["oracle"] = row.oracle;
            j["max_delta"] = row.max_delta;
            j["pass"] = row.pass;
            report.push_back(std::move(j));
            std::cerr << (row.pass ? "PASS " : "FAIL ") << label
                      << "  levels=" << row.analytic.size()
                      << "  max|dE|=" << row.max_delta << '\n';
        } catch (const std::exception& e) {
            all_pass = false;
            report.push_back({{"config", label}, {"error", e.what()}, {"pass", false}});
            std::cerr << "FAIL " << label << "  error: " << e.what() << '\n';
        }
    }
    const int rc = with_output(o, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    if (rc != kOk) return rc;
    return all_pass ? kOk : kVerifyFailure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bound states of a rational effective-mass model via the "
                 "one-period associated Lame equation"};
    app.set_config("--config");
    Options o;

    app.add_option("--alpha", o.alpha, "kinetic ordering parameter alpha");
    app.add_option("--beta", o.beta, "kinetic ordering parameter beta");
    app.add_flag("--alpha-eq-gamma", o.alpha_eq_gamma,
                 "use the alpha = gamma family (alpha derived from beta)");
    app.add_option("--k2", o.k2, "squared elliptic modulus in [0,1)");
    app.add_option("--sweep", o.sweep, "sweep spec var:from:to:step (var = beta|k2)");
    app.add_option("--grid-points", o.grid_points, "energy-scan grid resolution");
    app.add_option("--lambda-depth", o.lambda_depth,
                   "well-case scan depth below V0 (finite truncation)");
    app.add_option("--format", o.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", o.out, "output path (default stdout)");
    app.add_flag("--paper-mode", o.paper_mode,
                 "two-decimal table output (round half to even)");
    app.add_flag("--with-oracle", o.with_oracle, "include oracle_delta in rows");
    app.add_option("--state", o.state, "bound-state index for wavefunction");
    app.add_option("--samples", o.samples, "sample count for wavefunction");
    app.add_option("--xmax", o.xmax, "half-range for wavefunction sampling");
    app.add_option("--tol", o.tol, "verification tolerance");

    auto* solve = app.add_subcommand("solve", "solve one parameter set");
    auto* sweep = app.add_subcommand("sweep", "solve a parameter sweep");
    auto* bands = app.add_subcommand("bands", "band-edge energies");
    auto* wavef = app.add_subcommand("wavefunction", "sampled bound-state wave function");
    auto* verify = app.add_subcommand("verify", "cross-check against the shooting solver");
    app.require_subcommand(1);
    for (auto* sc : {solve, sweep, bands, wavef, verify})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalidConfig;
    }

    try {
        if (solve->parsed()) return cmd_solve(o);
        if (sweep->parsed()) return cmd_sweep(o);
        if (bands->parsed()) return cmd_bands(o);
        if (wavef->parsed()) return cmd_wavefunction(o);
        if (verify->parsed()) return cmd_verify(o);
    } catch (const std::domain_error& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kInvalidConfig;
}
