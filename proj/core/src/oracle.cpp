// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#include "emlame/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "emlame/spectrum.hpp"

namespace emlame {

namespace {

// Energy-independent pieces of the interior coefficient, sampled once on
// the RK4 nodes and midpoints: W(x; E) = W0(x) - f_m(x) E.
struct ShootingGrid {
    double x0, h, kprime, beta, m0, V0;
    int n;
    std::vector<double> W0n, fmn;   // nodes 0..n
    std::vector<double> W0m, fmm;   // midpoints 0..n-1

    ShootingGrid(const DerivedConstants& dc, double step_h)
    {
        x0 = dc.x0;
        n = (step_h > 0.0) ? std::max(16, int(std::ceil(2.0*dc.x0/step_h)))
                           : 8000;
        h = 2.0*dc.x0/n;
        kprime = dc.kprime;
        beta = dc.beta;
        m0 = dc.m0;
        V0 = dc.V0;
        W0n.resize(n + 1);
        fmn.resize(n + 1);
        W0m.resize(n);
        fmm.resize(n);
        auto W0 = [&](double x) {
            const double r1 = fm_logderiv1(x, dc);
            const double r2 = fm_logderiv2(x, dc);
            return f_m(x, dc)*(f_V(x, dc) + dc.lame_shift)
                   + 0.5*dc.beta*r2 + (0.75 - dc.eta)*r1*r1;
        };
        for (int i = 0; i <= n; ++i) {
            const double x = -dc.x0 + h*i;
            W0n[std::size_t(i)] = W0(x);
            fmn[std::size_t(i)] = f_m(x, dc);
        }
        for (int i = 0; i < n; ++i) {
            const double x = -dc.x0 + h*(i + 0.5);
            W0m[std::size_t(i)] = W0(x);
            fmm[std::size_t(i)] = f_m(x, dc);
        }
    }

    double mismatch(double E) const
    {
        const double kappa = std::sqrt(m0*(V0 - E));
        double u = 1.0;
        double v = kappa + beta*std::sqrt(kprime);  // jump at -x0 applied
        for (int i = 0; i < n; ++i) {
            const double Wa = W0n[std::size_t(i)] - fmn[std::size_t(i)]*E;
            const double Wm = W0m[std::size_t(i)] - fmm[std::size_t(i)]*E;
            const double Wb = W0n[std::size_t(i + 1)] - fmn[std::size_t(i + 1)]*E;
            const double k1u = v,             k1v = Wa*u;
            const double k2u = v + 0.5*h*k1v, k2v = Wm*(u + 0.5*h*k1u);
            const double k3u = v + 0.5*h*k2v, k3v = Wm*(u + 0.5*h*k2u);
            const double k4u = v + h*k3v,     k4v = Wb*(u + h*k3u);
            u += h/6.0*(k1u + 2.0*k2u + 2.0*k3u + k4u);
            v += h/6.0*(k1v + 2.0*k2v + 2.0*k3v + k4v);
            const double m = std::max(std::abs(u), std::abs(v));
            if (m > 1e100) {    // scale-invariant renormalization
                u /= m;
                v /= m;
            }
        }
        const double vout = v + beta*std::sqrt(kprime)*u;  // jump at +x0
        return (vout + kappa*u)/std::max(std::abs(u), std::abs(vout));
    }
};

std::vector<double> roots_on_grid(const ShootingGrid& grid, double lower,
                                  double upper, int e_grid)
{
    std::vector<double> roots;
    double prevE = lower;
    double prevF = grid.mismatch(lower);
    for (int i = 1; i <= e_grid; ++i) {
        const double Ei = lower + (upper - lower)*i/e_grid;
        const double Fi = grid.mismatch(Ei);
        if (std::isfinite(prevF) && std::isfinite(Fi)
            && std::signbit(prevF) != std::signbit(Fi)) {
            double a = prevE, b = Ei, fa = prevF;
            while (b - a > 1e-12) {
                const double c = 0.5*(a + b);
                const double fc = grid.mismatch(c);
                if (std::signbit(fa) == std::signbit(fc)) { a = c; fa = fc; }
                else b = c;
            }
            const double root = 0.5*(a + b);
            if (std::abs(grid.mismatch(root)) < 1e-4)
                roots.push_back(root);
        }
        prevE = Ei;
        prevF = Fi;
    }
    return roots;
}

} // namespace

double shoot_determinant(double E, const DerivedConstants& dc, const ShootingConfig& cfg)
{
    if (E >= dc.V0)
        throw std::domain_error("shoot_determinant: E must lie below V0");
    const ShootingGrid grid(dc, cfg.step_h);
    return grid.mismatch(E);
}

std::vector<double> oracle_find_roots(const DerivedConstants& dc, double lower,
                                      double upper, const ShootingConfig& cfg)
{
    const ShootingGrid grid(dc, cfg.step_h);
    return roots_on_grid(grid, lower, upper, cfg.e_grid > 0 ? cfg.e_grid : 600);
}

ConvergenceReport convergence_study(double E_root, const DerivedConstants& dc,
                                    const ShootingConfig& cfg)
{
    const double h0 = (cfg.step_h > 0.0) ? cfg.step_h : dc.x0/1000.0;
    auto refine = [&](double h) {
        const ShootingGrid grid(dc, h);
        double a = E_root - 5e-3, b = E_root + 5e-3;
        double fa = grid.mismatch(a), fb = grid.mismatch(b);
        if (std::signbit(fa) == std::signbit(fb))
            return std::numeric_limits<double>::quiet_NaN();
        while (b - a > 1e-13) {
            const double c = 0.5*(a + b);
            const double fc = grid.mismatch(c);
            if (std::signbit(fa) == std::signbit(fc)) { a = c; fa = fc; }
            else b = c;
        }
        return 0.5*(a + b);
    };
    ConvergenceReport r{};
    r.root_h = refine(h0);
    r.root_h2 = refine(0.5*h0);
    r.root_h4 = refine(0.25*h0);
    r.root_h8 = refine(0.125*h0);
    const double d1 = std::abs(r.root_h - r.root_h2);
    const double d2 = std::abs(r.root_h2 - r.root_h4);
    r.observed_order = (d2 > 0.0) ? std::log2(d1/d2) : 4.0;
    // one Richardson step at fourth order from the two finest roots
    r.richardson_root = r.root_h8 + (r.root_h8 - r.root_h4)/15.0;
    r.converged = std::isfinite(r.richardson_root)
               && std::abs(r.richardson_root - r.root_h8) < 1e-5;
    return r;
}

VerifyRow verify_config(const ModelParams& params, double tol,
                        int grid_points, double lambda_depth,
                        const ShootingConfig& cfg)
{
    VerifyRow row{};
    row.var_value = params.k2;
    const DerivedConstants dc = derive(params);

    ScanOptions opts;
    opts.grid_points = grid_points;
    opts.lambda_depth = lambda_depth;

    bool window_empty = false;
    try {
        const auto states = find_bound_states(params, opts);
        for (const auto& s : states)
            row.analytic.push_back(s.E);
    } catch (const window_error&) {
        window_empty = true;
    }
    if (!window_empty) {
        const EnergyWindow w = energy_window(dc, lambda_depth);
        row.oracle = oracle_find_roots(dc, w.lower + 1e-9, w.upper, cfg);
        // the k2 = 0 pipeline rejects the trivial E = 0 zero; mirror that
        std::erase_if(row.oracle, [](double e) { return std::abs(e) < 1e-7; });
    }
    row.max_delta = 0.0;
    row.pass = (row.analytic.size() == row.oracle.size());
    if (row.pass) {
        for (std::size_t i = 0; i < row.analytic.size(); ++i)
            row.max_delta = std::max(row.max_delta,
                                     std::abs(row.analytic[i] - row.oracle[i]));
        row.pass = row.max_delta < tol;
    }
    return row;
}

} // namespace emlame
