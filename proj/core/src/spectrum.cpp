// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#include "emlame/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace emlame {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double kEdgeGuard = 1e-6;     // exclusion radius around band edges
constexpr double kZeroGuard = 1e-8;     // E = 0 is never accepted at k2 = 0
} // namespace

EnergyWindow energy_window(const DerivedConstants& dc, double lambda_depth)
{
    EnergyWindow w{};
    w.beta_case = classify_beta(dc.beta);
    w.upper = dc.V0 - 1e-9;
    w.lower = (w.beta_case == BetaCase::Well) ? dc.V0 - lambda_depth
                                              : 2.0*dc.k2;
    if (w.lower >= w.upper)
        throw window_error("energy_window: empty admissible range");
    return w;
}

double b_coefficient(double E, const DerivedConstants& dc)
{
    if (E >= dc.V0)
        throw std::domain_error("b_coefficient: E must lie below V0");
    const double kappa = std::sqrt(dc.m0*(dc.V0 - E));
    return (2.0*dc.beta + 1.0)*std::sqrt(dc.kprime) + 2.0*kappa;
}

cplx residual_general(double E, const DerivedConstants& dc, const EllipticContext& ctx)
{
    const LameSolutionPair p(E, ctx);
    const double B = b_coefficient(E, dc);
    const double sm = std::sqrt(dc.m0);
    const cplx Am = p.Aminus, Ap = p.Aplus;
    return (4.0*dc.m0*Am*Am - 4.0*B*sm*Am + B*B)*p.T1_minus
         - (4.0*dc.m0*Ap*Ap + 4.0*B*sm*Ap + B*B)*p.T1_plus;
}

cplx residual_unreduced(double E, const DerivedConstants& dc, const EllipticContext& ctx)
{
    const LameSolutionPair p(E, ctx);
    const double B = b_coefficient(E, dc);
    const double sm = std::sqrt(dc.m0);
    const cplx T2p = p.dchi1_plus*p.dchi2_minus;
    const cplx T2m = p.dchi1_minus*p.dchi2_plus;
    const cplx dT1p = p.dchi1_plus*p.chi2_minus - p.chi1_plus*p.dchi2_minus;
    const cplx dT1m = p.dchi1_minus*p.chi2_plus - p.chi1_minus*p.dchi2_plus;
    return 4.0*dc.m0*(T2m - T2p) + 2.0*sm*B*(dT1m + dT1p)
         + B*B*(p.T1_plus - p.T1_minus);
}

double residual_band_edge(int j, const DerivedConstants& dc, const EllipticContext& ctx)
{
    const auto edges = band_edges(ctx);
    const double E = edges[std::size_t(j)].E;
    const auto bd = band_edge_boundary(j, ctx);
    // kappa may turn imaginary when the edge lies above V0; the certificate
    // only needs the magnitude of the combination
    const cplx kappa = std::sqrt(cplx(dc.m0*(dc.V0 - E), 0.0));
    const cplx B = (2.0*dc.beta + 1.0)*std::sqrt(dc.kprime) + 2.0*kappa;
    const double sm = std::sqrt(dc.m0);
    const cplx T1p = bd.chi1p*bd.chi2m, T1m = bd.chi1m*bd.chi2p;
    const cplx T2p = bd.dchi1p*bd.dchi2m, T2m = bd.dchi1m*bd.dchi2p;
    const cplx dT1p = bd.dchi1p*bd.chi2m - bd.chi1p*bd.dchi2m;
    const cplx dT1m = bd.dchi1m*bd.chi2p - bd.chi1m*bd.dchi2p;
    const cplx r = 4.0*dc.m0*(T2m - T2p) + 2.0*sm*B*(dT1m + dT1p) + B*B*(T1p - T1m);
    return std::abs(r);
}

double residual_k0(double E, const DerivedConstants& dc)
{
    if (E >= dc.V0)
        throw std::domain_error("residual_k0: E must lie below V0");
    const double kappa = 0.5*std::sqrt(dc.V0 - E);
    const double B = (2.0*dc.beta + 1.0) + 2.0*kappa;
    if (E > 0.0) {
        const double s = std::sqrt(E);
        return (B*B - E)*std::sin(0.5*pi*s) + 2.0*B*s*std::cos(0.5*pi*s);
    }
    if (E == 0.0)
        return 0.0;
    const double s = std::sqrt(-E);
    return (B*B - E)*std::sinh(0.5*pi*s) + 2.0*B*s*std::cosh(0.5*pi*s);
}

ZeroEnergyDiagnostics zero_energy_check(const DerivedConstants& dc)
{
    ZeroEnergyDiagnostics d{};
    const double c1 = (2.0*dc.beta + 1.0)*(2.0*dc.beta + 1.0);
    const double t2 = 2.0*dc.beta + 1.0 + 4.0/pi;
    const double c2 = t2*t2;
    d.v0_delta_case1 = dc.V0 - c1;
    d.v0_delta_case2 = dc.V0 - c2;
    d.beta_admits_case1 = dc.beta < -0.5;
    d.beta_admits_case2 = dc.beta < -(0.5 + 2.0/pi);
    d.exists = (d.beta_admits_case1 && std::abs(d.v0_delta_case1) < 1e-9)
            || (d.beta_admits_case2 && std::abs(d.v0_delta_case2) < 1e-9);
    return d;
}

namespace {

// Mixing ratio d2/d1 from the first row of the junction system, with the
// second row as a consistency cross-check.
cplx mixing_ratio(const LameSolutionPair& p, double B, double m0, double* row_gap)
{
    const double m14 = std::pow(m0, 0.25);
    const double m14i = 1.0/m14;
    const cplx num1 = 2.0*m14*p.dchi1_plus + m14i*B*p.chi1_plus;
    const cplx den1 = 2.0*m14*p.dchi2_plus + m14i*B*p.chi2_plus;
    const cplx r1 = -num1/den1;
    const cplx num2 = 2.0*m14*p.dchi1_minus - m14i*B*p.chi1_minus;
    const cplx den2 = 2.0*m14*p.dchi2_minus - m14i*B*p.chi2_minus;
    const cplx r2 = -num2/den2;
    if (row_gap)
        *row_gap = std::abs(r1 - r2)/std::max(1e-300, std::abs(r1));
    return r1;
}

struct Bracket { double a, b; };

// Generic scan-and-bisect over a real residual. accept() sees the refined
// candidate and the bracket-endpoint residual scale, so sign flips that do
// not pass through zero (branch switches, T1 poles) can be rejected: at a
// genuine root the residual magnitude collapses relative to the endpoints.
template <typename F, typename Accept>
std::vector<double> scan_roots(F&& f, double lo, double hi, int grid,
                               const std::vector<double>& split_points,
                               Accept&& accept)
{
    std::vector<double> roots;
    std::vector<Bracket> brackets;
    double prevE = lo;
    double prevF = f(lo);
    for (int i = 1; i <= grid; ++i) {
        const double Ei = lo + (hi - lo)*i/grid;
        const double Fi = f(Ei);
        if (std::isfinite(prevF) && std::isfinite(Fi) && prevF != 0.0 && Fi != 0.0
            && std::signbit(prevF) != std::signbit(Fi))
            brackets.push_back({prevE, Ei});
        prevE = Ei;
        prevF = Fi;
    }
    for (const Bracket& br : brackets) {
        // split at any excluded point (band edge) inside the bracket
        std::vector<double> pts{br.a};
        for (double s : split_points)
            if (br.a < s && s < br.b)
                pts.push_back(s);
        pts.push_back(br.b);
        std::sort(pts.begin(), pts.end());
        for (std::size_t seg = 0; seg + 1 < pts.size(); ++seg) {
            double a = pts[seg], b = pts[seg + 1];
            if (seg > 0) a += kEdgeGuard;
            if (seg + 2 < pts.size()) b -= kEdgeGuard;
            if (a >= b)
                continue;
            double fa = f(a), fb = f(b);
            if (!std::isfinite(fa) || !std::isfinite(fb)
                || std::signbit(fa) == std::signbit(fb))
                continue;
            const double bracket_scale = std::max(std::abs(fa), std::abs(fb));
            while (b - a > 1e-10) {
                const double c = 0.5*(a + b);
                const double fc = f(c);
                if (!std::isfinite(fc))
                    break;
                if (std::signbit(fa) == std::signbit(fc)) { a = c; fa = fc; }
                else b = c;
            }
            const double root = 0.5*(a + b);
            if (accept(root, bracket_scale))
                roots.push_back(root);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<BoundState> solve_k0(const DerivedConstants& dc, const ScanOptions& opts)
{
    const EnergyWindow w = energy_window(dc, opts.lambda_depth);
    auto f = [&](double E) { return residual_k0(E, dc); };
    auto accept = [&](double root, double bracket_scale) {
        if (std::abs(root) < kZeroGuard)
            return false;   // the trivial E = 0 zero of the k2 = 0 equation
        return std::abs(f(root)) < 1e-5*std::max(bracket_scale, 1e-300);
    };
    const auto roots = scan_roots(f, w.lower, w.upper, opts.grid_points, {}, accept);

    std::vector<BoundState> out;
    for (double E : roots) {
        BoundState bs{};
        bs.n = int(out.size());
        bs.E = E;
        bs.kappa = std::sqrt(dc.m0*(dc.V0 - E));
        // d2/d1 = -e^{2 i theta} (B + i sqrt(E)) / (B - i sqrt(E)), theta = pi sqrt(E)/4
        const double B = b_coefficient(E, dc);
        const cplx sE = std::sqrt(cplx(E, 0.0));
        const cplx ph = std::exp(cplx(0.0, 1.0)*sE*pi*0.5);
        bs.d_ratio = -ph*(B + cplx(0.0, 1.0)*sE)/(B - cplx(0.0, 1.0)*sE);
        // tails: chi(+-pi/4) = d1 e^{+- i theta} + d2 e^{-+ i theta} with d2 = d_ratio, d1 = 1
        const cplx eip = std::exp(cplx(0.0, 0.25)*pi*sE);
        const cplx chip = eip + bs.d_ratio/eip;
        const cplx chim = 1.0/eip + bs.d_ratio*eip;
        const double m14 = std::pow(dc.m0, 0.25);
        const double ex = std::exp(bs.kappa*dc.x0);
        bs.N_plus = chip*ex/m14;
        bs.N_minus = chim*ex/m14;
        bs.C_norm = 0.0;
        out.push_back(bs);
    }
    return out;
}

std::vector<BoundState> solve_general(const DerivedConstants& dc, const ScanOptions& opts)
{
    const EllipticContext ctx(dc.k2);
    const EnergyWindow w = energy_window(dc, opts.lambda_depth);
    const auto edges = band_edge_energies(ctx);
    std::vector<double> splits(edges.begin(), edges.end());

    auto raw = [&](double E) -> cplx {
        for (double e : edges)
            if (std::abs(E - e) < kEdgeGuard)
                E = e + ((E >= e) ? kEdgeGuard : -kEdgeGuard);
        return residual_general(E, dc, ctx);
    };
    auto f = [&](double E) {
        try {
            return raw(E).real();
        } catch (const degenerate_error&) {
            return std::numeric_limits<double>::quiet_NaN();
        } catch (const pole_error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    auto accept = [&](double root, double bracket_scale) {
        for (double e : edges)
            if (std::abs(root - e) < 10.0*kEdgeGuard)
                return false;
        double v;
        try {
            v = std::abs(raw(root));   // full complex magnitude, not just Re
        } catch (const std::exception&) {
            return false;
        }
        return std::isfinite(v) && v < 1e-5*std::max(bracket_scale, 1e-300);
    };
    const auto roots = scan_roots(f, w.lower, w.upper, opts.grid_points, splits, accept);

    std::vector<BoundState> out;
    for (double E : roots) {
        const LameSolutionPair p(E, ctx);
        BoundState bs{};
        bs.n = int(out.size());
        bs.E = E;
        bs.kappa = std::sqrt(dc.m0*(dc.V0 - E));
        const double B = b_coefficient(E, dc);
        double row_gap = 0.0;
        bs.d_ratio = mixing_ratio(p, B, dc.m0, &row_gap);
        // chi = chi2 + (d1/d2) chi1 with d2 = d_ratio, d1 = 1
        const cplx d12 = 1.0/bs.d_ratio;
        const cplx chip = p.chi2_plus + d12*p.chi1_plus;
        const cplx chim = p.chi2_minus + d12*p.chi1_minus;
        const double m14 = std::pow(dc.m0, 0.25);
        const double ex = std::exp(bs.kappa*dc.x0);
        bs.N_plus = chip*ex/m14;
        bs.N_minus = chim*ex/m14;
        bs.C_norm = 0.0;
        out.push_back(bs);
    }
    return out;
}

} // namespace

std::vector<BoundState> find_bound_states(const ModelParams& params, const ScanOptions& opts)
{
    if (params.mu != 1 || params.nu != 1)
        throw std::domain_error("find_bound_states: solution machinery requires mu = nu = 1");
    const DerivedConstants dc = derive(params);
    return (params.k2 == 0.0) ? solve_k0(dc, opts) : solve_general(dc, opts);
}

} // namespace emlame
