// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#include "emlame/auxmap.hpp"

#include <cmath>

namespace emlame {

BetaCase classify_beta(double beta)
{
    if (beta > -0.5) return BetaCase::Barrier;
    if (beta < -0.5) return BetaCase::Well;
    return BetaCase::Neutral;
}

std::array<double, 3> band_edge_energies(const EllipticContext& ctx)
{
    return {2.0 + ctx.k2 - 2.0*ctx.kprime,
            2.0 + ctx.k2 + 2.0*ctx.kprime,
            4.0};
}

AuxiliaryPicture make_auxiliary(const DerivedConstants& dc, const EllipticContext& ctx)
{
    AuxiliaryPicture ap{};
    const double half = 0.5*ctx.K - std::sqrt(dc.m0)*dc.x0;
    ap.lambda_plus = half;
    ap.lambda_minus = -half;
    ap.delta_weight = (dc.beta + 0.5)*(1.0 + dc.kprime);
    ap.vtilde_min = 2.0*dc.k2;
    ap.beta_case = classify_beta(dc.beta);
    ap.band_edges = band_edge_energies(ctx);
    return ap;
}

double x_of_z(double z, const DerivedConstants& dc, const EllipticContext& ctx)
{
    const double K2 = 0.5*ctx.K;
    if (z > K2)
        return dc.x0 + (z - K2)/std::sqrt(dc.m0);
    if (z < -K2)
        return -dc.x0 + (z + K2)/std::sqrt(dc.m0);
    const auto j = jacobi(cplx(z, 0.0), ctx);
    return j.sn.real()/j.cn.real();
}

double z_of_x(double x, const DerivedConstants& dc, const EllipticContext& ctx)
{
    const double K2 = 0.5*ctx.K;
    if (x > dc.x0)
        return K2 + (x - dc.x0)*std::sqrt(dc.m0);
    if (x < -dc.x0)
        return -K2 + (x + dc.x0)*std::sqrt(dc.m0);
    // monotone interior branch; Newton seeded by the arctangent image,
    // with a bisection fallback keeping the bracket valid
    double lo = -K2, hi = K2;
    double z = std::atan(x)*(2.0*K2)/(2.0*std::atan(dc.x0));
    for (int it = 0; it < 100; ++it) {
        const auto j = jacobi(cplx(z, 0.0), ctx);
        const double sn = j.sn.real(), cn = j.cn.real(), dn = j.dn.real();
        const double g = sn/cn - x;
        if (std::abs(g) < 1e-14*(1.0 + std::abs(x)))
            return z;
        if (g > 0) hi = z; else lo = z;
        const double step = g/(dn/(cn*cn));
        double znew = z - step;
        if (!(znew > lo && znew < hi))
            znew = 0.5*(lo + hi);
        if (std::abs(znew - z) < 1e-15*ctx.K)
            return znew;
        z = znew;
    }
    return z;
}

double vtilde(double z, const DerivedConstants& dc, const EllipticContext& ctx)
{
    const double K2 = 0.5*ctx.K;
    if (std::abs(z) > K2)
        return dc.V0;
    if (ctx.degenerate())
        return 0.0;
    const auto j = jacobi(cplx(z, 0.0), ctx);
    const double sn = j.sn.real(), cn = j.cn.real(), dn = j.dn.real();
    return 2.0*ctx.k2*(sn*sn + cn*cn/(dn*dn));
}

std::array<DeltaTerm, 2> delta_terms(const DerivedConstants& dc, const EllipticContext& ctx)
{
    const double K2 = 0.5*ctx.K;
    const double w = (dc.beta + 0.5)*(1.0 + dc.kprime);
    return {DeltaTerm{-K2, w}, DeltaTerm{K2, w}};
}

double chi_jump(const DerivedConstants& dc)
{
    return (dc.beta + 0.5)*(1.0 + dc.kprime);
}

} // namespace emlame
