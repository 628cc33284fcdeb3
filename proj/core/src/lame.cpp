// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#include "emlame/lame.hpp"

#include <cmath>
#include <numbers>

#include "emlame/quadrature.hpp"

namespace emlame {

std::pair<cplx, cplx> auxiliary_quadratic(double E, const EllipticContext& ctx)
{
    const double b = E - 4.0 + ctx.e1;
    const double c0 = 3.0*ctx.e1 - ctx.e2 - 2.0*ctx.e1*ctx.e3 - ctx.e1*E;
    const cplx sq = std::sqrt(cplx(b*b - 4.0*c0, 0.0));
    cplx r1 = 0.5*(-b + sq);
    cplx r2 = 0.5*(-b - sq);
    if (r1.real() > r2.real() ||
        (r1.real() == r2.real() && r1.imag() > r2.imag()))
        std::swap(r1, r2);
    return {r1, r2};
}

std::pair<cplx, cplx> locate_ai(double E, const EllipticContext& ctx)
{
    const auto [c1, c2] = auxiliary_quadratic(E, ctx);
    cplx a1 = invert_p(c1, ctx);
    cplx a2 = invert_p(c2, ctx);
    const cplx t1 = weier_p_prime(a1, ctx)/(c1 - ctx.e1);
    const cplx t2 = weier_p_prime(a2, ctx)/(c2 - ctx.e1);
    if (std::abs(t1 + t2) > std::abs(t1 - t2))
        a2 = -a2;
    if (a1.imag() < 0.0 || (a1.imag() == 0.0 && a1.real() < 0.0)) {
        a1 = -a1;
        a2 = -a2;
    }
    return {a1, a2};
}

namespace {

struct ChiCore {
    cplx a1, a2, rho;   // rho = zeta(om1) -+ [zeta(a1) + zeta(a2)]
    const EllipticContext* ctx;

    cplx value(double z) const
    {
        const cplx w = cplx(z, 0.0) - ctx->omega3;
        return weier_sigma(w + a1, *ctx)*weier_sigma(w + a2, *ctx)
               / (weier_sigma(w + ctx->omega1, *ctx)*weier_sigma(w, *ctx))
               * std::exp(w*rho);
    }

    cplx log_deriv(double z) const
    {
        const cplx w = cplx(z, 0.0) - ctx->omega3;
        return weier_zeta(w + a1, *ctx) + weier_zeta(w + a2, *ctx)
               - weier_zeta(w + ctx->omega1, *ctx) - weier_zeta(w, *ctx) + rho;
    }
};

} // namespace

LameSolutionPair::LameSolutionPair(double E_in, const EllipticContext& ctx)
    : E(E_in), ctx_(&ctx)
{
    auto [aa1, aa2] = locate_ai(E, ctx);
    a1 = aa1;
    a2 = aa2;
    c1 = weier_p(a1, ctx);
    c2 = weier_p(a2, ctx);
    const cplx zs = weier_zeta(a1, ctx) + weier_zeta(a2, ctx);
    rho1_ = cplx(ctx.zeta_omega1, 0.0) - zs;
    rho2_ = cplx(ctx.zeta_omega1, 0.0) + zs;

    const ChiCore f1{a1, a2, rho1_, &ctx};
    const ChiCore f2{-a1, -a2, rho2_, &ctx};
    const double K2 = 0.5*ctx.K;
    chi1_plus = f1.value(K2);
    chi1_minus = f1.value(-K2);
    chi2_plus = f2.value(K2);
    chi2_minus = f2.value(-K2);
    dchi1_plus = f1.log_deriv(K2)*chi1_plus;
    dchi1_minus = f1.log_deriv(-K2)*chi1_minus;
    dchi2_plus = f2.log_deriv(K2)*chi2_plus;
    dchi2_minus = f2.log_deriv(-K2)*chi2_minus;
    T1_plus = chi1_plus*chi2_minus;
    T1_minus = chi1_minus*chi2_plus;

    const cplx x1 = f1.value(0.0), x2 = f2.value(0.0);
    wronskian = x1*f2.log_deriv(0.0)*x2 - f1.log_deriv(0.0)*x1*x2;
    if (std::abs(wronskian) < 1e-10)
        throw degenerate_error("LameSolutionPair: degenerate solutions (band-edge energy)");

    const cplx s = 0.5*ctx.omega1 + ctx.omega3;
    const cplx ps = weier_p(s, ctx);
    const cplx pps = weier_p_prime(s, ctx);
    if (std::abs(ps - c1) < 1e-12 || std::abs(ps - c2) < 1e-12)
        throw pole_error("LameSolutionPair: wp(om1/2 + om3) coincides with an auxiliary root");
    const cplx p1 = weier_p_prime(a1, ctx);
    const cplx p2 = weier_p_prime(a2, ctx);
    const cplx corner = pps/(ps - ctx.e1);
    Aplus = 0.5*((pps - p1)/(ps - c1) + (pps - p2)/(ps - c2) - corner);
    Aminus = -0.5*((pps + p1)/(ps - c1) + (pps + p2)/(ps - c2) - corner);
}

std::pair<cplx, cplx> boundary_coefficients(double E, const EllipticContext& ctx)
{
    const LameSolutionPair pair(E, ctx);
    return {pair.Aplus, pair.Aminus};
}

cplx LameSolutionPair::chi(double z, int which) const
{
    const ChiCore f{which == 1 ? a1 : -a1, which == 1 ? a2 : -a2,
                    which == 1 ? rho1_ : rho2_, ctx_};
    return f.value(z);
}

cplx LameSolutionPair::chi_dot(double z, int which) const
{
    const ChiCore f{which == 1 ? a1 : -a1, which == 1 ? a2 : -a2,
                    which == 1 ? rho1_ : rho2_, ctx_};
    return f.log_deriv(z)*f.value(z);
}

cplx chi_general(double E, double z, int which, const EllipticContext& ctx)
{
    return LameSolutionPair(E, ctx).chi(z, which);
}

namespace {

double chi_edge0(double z, const EllipticContext& ctx)
{
    const double dn = jacobi(cplx(z, 0.0), ctx).dn.real();
    return dn + ctx.kprime/dn;
}
double chi_edge0_dot(double z, const EllipticContext& ctx)
{
    const auto j = jacobi(cplx(z, 0.0), ctx);
    const double sn = j.sn.real(), cn = j.cn.real(), dn = j.dn.real();
    return -ctx.k2*sn*cn*(1.0 - ctx.kprime/(dn*dn));
}
double chi_edge1(double z, const EllipticContext& ctx)
{
    const double dn = jacobi(cplx(z, 0.0), ctx).dn.real();
    return dn - ctx.kprime/dn;
}
double chi_edge1_dot(double z, const EllipticContext& ctx)
{
    const auto j = jacobi(cplx(z, 0.0), ctx);
    const double sn = j.sn.real(), cn = j.cn.real(), dn = j.dn.real();
    return -ctx.k2*sn*cn*(1.0 + ctx.kprime/(dn*dn));
}
double chi_edge2(double z, const EllipticContext& ctx)
{
    const auto j = jacobi(cplx(z, 0.0), ctx);
    return j.sn.real()*j.cn.real()/j.dn.real();
}
double chi_edge2_dot(double z, const EllipticContext& ctx)
{
    const auto j = jacobi(cplx(z, 0.0), ctx);
    const double sn = j.sn.real(), cn = j.cn.real(), dn = j.dn.real();
    return cn*cn - sn*sn + ctx.k2*sn*sn*cn*cn/(dn*dn);
}

cplx chi_edge2_cplx(cplx z, const EllipticContext& ctx)
{
    const auto j = jacobi(z, ctx);
    return j.sn*j.cn/j.dn;
}

} // namespace

std::array<BandEdge, 3> band_edges(const EllipticContext& ctx)
{
    const cplx om1 = ctx.omega1, om3 = ctx.omega3;
    return {BandEdge{0, 2.0 + ctx.k2 - 2.0*ctx.kprime, 0.5*om1, -0.5*om1,
                     &chi_edge0, &chi_edge0_dot},
            BandEdge{1, 2.0 + ctx.k2 + 2.0*ctx.kprime, -om3 + 0.5*om1, om3 - 0.5*om1,
                     &chi_edge1, &chi_edge1_dot},
            BandEdge{2, 4.0, om3, ctx.omega2,
                     &chi_edge2, &chi_edge2_dot}};
}

cplx second_solution_at_band_edge(int j, double z, const EllipticContext& ctx)
{
    const auto edges = band_edges(ctx);
    const BandEdge& be = edges[std::size_t(j)];
    if (j != 2) {
        const double F = integrate([&](double t) {
            const double c = be.chi(t, ctx);
            return 1.0/(c*c);
        }, 0.0, z, 1e-12);
        return be.chi(z, ctx)*F;
    }
    // base point K/4; for z below the pole at 0 take a semicircular detour
    const double base = 0.25*ctx.K;
    const double r = 0.125*ctx.K;
    cplx F;
    if (z >= 2.0*r) {
        F = integrate([&](double t) {
            const double c = be.chi(t, ctx);
            return cplx(1.0/(c*c), 0.0);
        }, base, z, 1e-12);
    } else {
        const cplx seg1 = integrate([&](double t) {
            const double c = be.chi(t, ctx);
            return cplx(1.0/(c*c), 0.0);
        }, base, r, 1e-12);
        const cplx seg2 = integrate([&](double th) {
            const cplx zt = r*std::exp(cplx(0.0, th));
            const cplx c = chi_edge2_cplx(zt, ctx);
            return (cplx(0.0, 1.0)*zt)/(c*c);
        }, 0.0, std::numbers::pi, 1e-12);
        const cplx seg3 = integrate([&](double t) {
            const double c = be.chi(t, ctx);
            return cplx(1.0/(c*c), 0.0);
        }, -r, z, 1e-12);
        F = seg1 + seg2 + seg3;
    }
    return be.chi(z, ctx)*F;
}

BandEdgeBoundary band_edge_boundary(int j, const EllipticContext& ctx)
{
    const auto edges = band_edges(ctx);
    const BandEdge& be = edges[std::size_t(j)];
    const double K2 = 0.5*ctx.K;
    BandEdgeBoundary bd{};
    bd.chi1p = be.chi(K2, ctx);
    bd.chi1m = be.chi(-K2, ctx);
    bd.dchi1p = be.chi_dot(K2, ctx);
    bd.dchi1m = be.chi_dot(-K2, ctx);

    if (j == 1) {
        // chi^{(1)}(+-K/2) = 0 exactly: chi2 and chi2' at the junctions are
        // the finite limits of the product construction,
        //   chi2(+-K/2) = -1/chi1'(+-K/2),
        //   chi2'(+-K/2) = chi1'(+-K/2) * F0(+-),
        // with F0 the pole-subtracted value of int_0 dt/chi1^2.
        const double cP = bd.dchi1p.real();
        const double cM = bd.dchi1m.real();
        const double h = 1e-3*ctx.K;
        auto subP = [&](double t) {
            const double c = be.chi(t, ctx);
            const double s = t - K2;
            return 1.0/(c*c) - 1.0/(cP*cP*s*s);
        };
        auto subM = [&](double t) {
            const double c = be.chi(t, ctx);
            const double s = t + K2;
            return 1.0/(c*c) - 1.0/(cM*cM*s*s);
        };
        const double F0p = integrate(subP, 0.0, K2 - h, 1e-12)
                           + subP(K2 - h)*h - 1.0/(cP*cP*K2);
        const double F0m = integrate(subM, 0.0, -K2 + h, 1e-12)
                           - subM(-K2 + h)*h + 1.0/(cM*cM*K2);
        bd.chi2p = cplx(-1.0/cP, 0.0);
        bd.chi2m = cplx(-1.0/cM, 0.0);
        bd.dchi2p = cplx(cP*F0p, 0.0);
        bd.dchi2m = cplx(cM*F0m, 0.0);
        return bd;
    }

    const cplx x2p = second_solution_at_band_edge(j, K2, ctx);
    const cplx x2m = second_solution_at_band_edge(j, -K2, ctx);
    bd.chi2p = x2p;
    bd.chi2m = x2m;
    // chi2' = chi1' F + 1/chi1, with F recovered from chi2 = chi1 F
    bd.dchi2p = bd.dchi1p*(x2p/bd.chi1p) + 1.0/bd.chi1p;
    bd.dchi2m = bd.dchi1m*(x2m/bd.chi1m) + 1.0/bd.chi1m;
    return bd;
}

} // namespace emlame
