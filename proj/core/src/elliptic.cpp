// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#include "emlame/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace emlame {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kMaxTerms = 64;
constexpr double kSeriesTol = 1e-16;

double agm(double a, double g)
{
    for (int i = 0; i < 64; ++i) {
        if (std::abs(a - g) <= 2.0*std::numeric_limits<double>::epsilon()*std::abs(a))
            break;
        const double an = 0.5*(a + g);
        g = std::sqrt(a*g);
        a = an;
    }
    return a;
}

} // namespace

double complete_K(double k2)
{
    if (k2 < 0.0 || k2 >= 1.0)
        throw std::domain_error("complete_K: squared modulus must lie in [0, 1)");
    return pi/(2.0*agm(1.0, std::sqrt(1.0 - k2)));
}

namespace detail {

// th1(u) / (2 q^{1/4}) = sum (-1)^n q^{n(n+1)} sin((2n+1)u).
// Trig recurrences as in the DLMF 20.2 sums; termination when the last
// term drops below kSeriesTol relative to the partial sum.
cplx theta1_reduced(cplx u, double q)
{
    const cplx s1 = std::sin(u), c1 = std::cos(u);
    cplx sn = s1, cn = c1;              // sin((2n+1)u), cos((2n+1)u)
    const cplx s2 = 2.0*s1*c1, c2 = c1*c1 - s1*s1;
    cplx acc = s1;
    const double q2 = q*q;
    double qp = 1.0, m = 1.0;           // q^{n(n+1)}, with m = q^{2n}
    double sign = 1.0;
    for (int n = 1; n < kMaxTerms; ++n) {
        m *= q2;
        qp *= m;
        sign = -sign;
        const cplx snew = sn*c2 + cn*s2;
        const cplx cnew = cn*c2 - sn*s2;
        sn = snew; cn = cnew;
        const cplx term = sign*qp*sn;
        acc += term;
        if (std::abs(term) < kSeriesTol*std::abs(acc))
            break;
    }
    return acc;
}

cplx theta1_reduced_du(cplx u, double q)
{
    const cplx s1 = std::sin(u), c1 = std::cos(u);
    cplx sn = s1, cn = c1;
    const cplx s2 = 2.0*s1*c1, c2 = c1*c1 - s1*s1;
    cplx acc = c1;
    const double q2 = q*q;
    double qp = 1.0, m = 1.0;
    double sign = 1.0;
    for (int n = 1; n < kMaxTerms; ++n) {
        m *= q2;
        qp *= m;
        sign = -sign;
        const cplx snew = sn*c2 + cn*s2;
        const cplx cnew = cn*c2 - sn*s2;
        sn = snew; cn = cnew;
        const cplx term = sign*qp*double(2*n + 1)*cn;
        acc += term;
        if (std::abs(term) < kSeriesTol*std::abs(acc))
            break;
    }
    return acc;
}

cplx theta2_reduced(cplx u, double q)
{
    const cplx s1 = std::sin(u), c1 = std::cos(u);
    cplx sn = s1, cn = c1;
    const cplx s2 = 2.0*s1*c1, c2 = c1*c1 - s1*s1;
    cplx acc = c1;
    const double q2 = q*q;
    double qp = 1.0, m = 1.0;
    for (int n = 1; n < kMaxTerms; ++n) {
        m *= q2;
        qp *= m;
        const cplx snew = sn*c2 + cn*s2;
        const cplx cnew = cn*c2 - sn*s2;
        sn = snew; cn = cnew;
        const cplx term = qp*cn;
        acc += term;
        if (std::abs(term) < kSeriesTol*std::abs(acc))
            break;
    }
    return acc;
}

cplx theta3(cplx u, double q)
{
    cplx acc = 1.0;
    const cplx s2 = std::sin(2.0*u), c2 = std::cos(2.0*u);
    cplx sn = s2, cn = c2;              // sin(2nu), cos(2nu)
    const double q2 = q*q;
    double qp = 1.0, m = 0.0;           // m tracks q^{2n-1}
    for (int n = 1; n < kMaxTerms; ++n) {
        m = (n == 1) ? q : m*q2;
        qp *= m;
        const cplx term = 2.0*qp*cn;
        acc += term;
        if (std::abs(term) < kSeriesTol*std::abs(acc))
            break;
        const cplx snew = sn*c2 + cn*s2;
        const cplx cnew = cn*c2 - sn*s2;
        sn = snew; cn = cnew;
    }
    return acc;
}

cplx theta4(cplx u, double q)
{
    cplx acc = 1.0;
    const cplx s2 = std::sin(2.0*u), c2 = std::cos(2.0*u);
    cplx sn = s2, cn = c2;
    const double q2 = q*q;
    double qp = 1.0, m = 0.0;
    double sign = 1.0;
    for (int n = 1; n < kMaxTerms; ++n) {
        m = (n == 1) ? q : m*q2;
        qp *= m;
        sign = -sign;
        const cplx term = 2.0*sign*qp*cn;
        acc += term;
        if (std::abs(term) < kSeriesTol*std::abs(acc))
            break;
        const cplx snew = sn*c2 + cn*s2;
        const cplx cnew = cn*c2 - sn*s2;
        sn = snew; cn = cnew;
    }
    return acc;
}

double theta1_reduced_d1_at0(double q)
{
    const double q2 = q*q;
    double acc = 1.0, qp = 1.0, m = 1.0, sign = 1.0;
    for (int n = 1; n < kMaxTerms; ++n) {
        m *= q2;
        qp *= m;
        sign = -sign;
        const double term = sign*qp*double(2*n + 1);
        acc += term;
        if (std::abs(term) < kSeriesTol*std::abs(acc))
            break;
    }
    return acc;
}

double theta1_reduced_d3_at0(double q)
{
    const double q2 = q*q;
    double acc = -1.0, qp = 1.0, m = 1.0, sign = 1.0;
    for (int n = 1; n < kMaxTerms; ++n) {
        m *= q2;
        qp *= m;
        sign = -sign;
        const double f = double(2*n + 1);
        const double term = -sign*qp*f*f*f;
        acc += term;
        if (std::abs(term) < kSeriesTol*std::abs(acc))
            break;
    }
    return acc;
}

} // namespace detail

EllipticContext::EllipticContext(double k2_in)
{
    if (k2_in < 0.0 || k2_in >= 1.0)
        throw std::domain_error("EllipticContext: squared modulus must lie in [0, 1)");
    k2 = k2_in;
    kprime = std::sqrt(1.0 - k2);
    K = complete_K(k2);
    Kprime = (k2 == 0.0) ? std::numeric_limits<double>::infinity()
                         : complete_K(1.0 - k2);
    omega1 = cplx(K, 0.0);
    omega3 = cplx(0.0, Kprime);
    omega2 = omega1 + omega3;
    g2 = (4.0/3.0)*(k2*k2 - k2 + 1.0);
    g3 = (4.0/27.0)*(k2 - 2.0)*(2.0*k2 - 1.0)*(k2 + 1.0);
    e1 = (2.0 - k2)/3.0;
    e2 = (2.0*k2 - 1.0)/3.0;
    e3 = -(1.0 + k2)/3.0;
    nome_q = (k2 == 0.0) ? 0.0 : std::exp(-pi*Kprime/K);
    // DLMF 23.6.8
    zeta_omega1 = -(pi*pi/(12.0*K))
                  * detail::theta1_reduced_d3_at0(nome_q)
                  / detail::theta1_reduced_d1_at0(nome_q);
}

JacobiTriple jacobi(cplx z, const EllipticContext& ctx)
{
    if (ctx.degenerate())
        return {std::sin(z), std::cos(z), cplx(1.0, 0.0)};
    const double q = ctx.nome_q;
    cplx u = pi*z/(2.0*ctx.K);
    // reduce Re(u) mod pi; th1, th2 flip sign together so quotients are safe,
    // but sn/cn need the flip tracked explicitly
    double flips = std::floor(u.real()/pi + 0.5);
    u -= flips*pi;
    const double sgn = (std::fmod(std::abs(flips), 2.0) < 0.5) ? 1.0 : -1.0;

    const cplx t1 = detail::theta1_reduced(u, q);
    const cplx t2 = detail::theta2_reduced(u, q);
    const cplx t3 = detail::theta3(u, q);
    const cplx t4 = detail::theta4(u, q);
    const double z2 = detail::theta2_reduced(0.0, q).real();
    const double z3 = detail::theta3(0.0, q).real();
    const double z4 = detail::theta4(0.0, q).real();

    JacobiTriple r;
    r.sn = sgn*(z3/z2)*(t1/t4);
    r.cn = sgn*(z4/z2)*(t2/t4);
    r.dn = (z4/z3)*(t3/t4);
    return r;
}

double lattice_distance(cplx z, const EllipticContext& ctx)
{
    const double px = 2.0*ctx.K;
    double x = std::fmod(z.real(), px);
    if (x < 0) x += px;
    x = std::min(x, px - x);
    if (ctx.degenerate())
        return std::hypot(x, z.imag());
    const double py = 2.0*ctx.Kprime;
    double y = std::fmod(z.imag(), py);
    if (y < 0) y += py;
    y = std::min(y, py - y);
    return std::hypot(x, y);
}

namespace {

constexpr double kPoleGuard = 1e-10;

// true if z is closer to the sn-pole sublattice (iK' + lattice) than to
// the wp-pole lattice; such points are evaluated through the iK' shift
bool near_sn_pole_line(cplx z, const EllipticContext& ctx)
{
    if (ctx.degenerate())
        return false;
    const double py = 2.0*ctx.Kprime;
    double y = std::fmod(z.imag(), py);
    if (y < 0) y += py;
    const double d_pole_line = std::min(std::abs(y - ctx.Kprime), std::abs(y + ctx.Kprime - py));
    const double d_lattice_line = std::min(y, py - y);
    return d_pole_line < d_lattice_line;
}

} // namespace

cplx weier_p(cplx z, const EllipticContext& ctx)
{
    if (lattice_distance(z, ctx) < kPoleGuard)
        throw pole_error("weier_p: argument within guard radius of a lattice point");
    if (near_sn_pole_line(z, ctx)) {
        const cplx s = jacobi(z - ctx.omega3, ctx).sn;  // 1/sn(z) = k sn(z - iK')
        return ctx.e3 + ctx.k2*s*s;
    }
    const cplx s = jacobi(z, ctx).sn;
    return ctx.e3 + 1.0/(s*s);
}

cplx weier_p_prime(cplx z, const EllipticContext& ctx)
{
    if (lattice_distance(z, ctx) < kPoleGuard)
        throw pole_error("weier_p_prime: argument within guard radius of a lattice point");
    if (near_sn_pole_line(z, ctx)) {
        const auto j = jacobi(z - ctx.omega3, ctx);
        return 2.0*ctx.k2*j.sn*j.cn*j.dn;
    }
    const auto j = jacobi(z, ctx);
    return -2.0*j.cn*j.dn/(j.sn*j.sn*j.sn);
}

cplx weier_zeta(cplx z, const EllipticContext& ctx)
{
    if (lattice_distance(z, ctx) < kPoleGuard)
        throw pole_error("weier_zeta: argument within guard radius of a lattice point");
    if (ctx.degenerate()) {
        // omega1 = pi/2, omega3 -> i inf: zeta(z) = eta1 z / omega1 + ... -> z/3 + cot z
        return z/3.0 + 1.0/std::tan(z);
    }
    const cplx u = pi*z/(2.0*ctx.K);
    // th1 is entire; the quotient form has no strip restriction
    const cplx t1 = detail::theta1_reduced(u, ctx.nome_q);
    const cplx t1p = detail::theta1_reduced_du(u, ctx.nome_q);
    return ctx.zeta_omega1*z/ctx.K + (pi/(2.0*ctx.K))*t1p/t1;
}

cplx weier_sigma(cplx z, const EllipticContext& ctx)
{
    if (ctx.degenerate()) {
        // sigma(z) = (2 om1/pi) exp(eta1 z^2/(2 om1)) sin(pi z/(2 om1)), om1 = pi/2
        return std::exp(z*z/6.0)*std::sin(z);
    }
    const cplx u = pi*z/(2.0*ctx.K);
    const cplx t1 = detail::theta1_reduced(u, ctx.nome_q);
    const double t1p0 = detail::theta1_reduced_d1_at0(ctx.nome_q);
    return (2.0*ctx.K/pi)*std::exp(ctx.zeta_omega1*z*z/(2.0*ctx.K))*t1/t1p0;
}

cplx invert_p(cplx c, const EllipticContext& ctx)
{
    if (ctx.degenerate())
        throw std::domain_error("invert_p: undefined in the degenerate k2 = 0 limit");
    // exact half-period hits (wp' vanishes there, Newton cannot start)
    const double snap = 1e-9;
    if (std::abs(c - cplx(ctx.e1)) < snap) return ctx.omega1;
    if (std::abs(c - cplx(ctx.e2)) < snap) return ctx.omega2;
    if (std::abs(c - cplx(ctx.e3)) < snap) return ctx.omega3;

    const cplx w = 1.0/std::sqrt(c - cplx(ctx.e3));   // sn(a) for the sought a
    const cplx seeds[] = {
        std::asin(w),
        std::asin(w) + 0.5*ctx.omega3,
        0.5*ctx.omega1 + 0.5*ctx.omega3,
        cplx(0.31*ctx.K, 0.41*ctx.Kprime),
        cplx(1.27*ctx.K, 0.83*ctx.Kprime),
        cplx(0.77*ctx.K, 1.39*ctx.Kprime),
    };
    const double tol = 1e-13*std::max(1.0, std::abs(c));
    for (const cplx& seed : seeds) {
        cplx a = seed;
        bool ok = false;
        for (int it = 0; it < 50; ++it) {
            if (lattice_distance(a, ctx) < 1e-8) {
                a += cplx(0.05*ctx.K, 0.05*ctx.Kprime);
                continue;
            }
            const cplx f = weier_p(a, ctx) - c;
            if (std::abs(f) < tol) { ok = true; break; }
            const cplx fp = weier_p_prime(a, ctx);
            if (std::abs(fp) < 1e-14) {
                a += cplx(0.05*ctx.K, 0.05*ctx.Kprime);
                continue;
            }
            cplx step = f/fp;
            // keep the iterate from leaping many cells at once
            const double maxstep = 2.0*std::max(ctx.K, ctx.Kprime);
            if (std::abs(step) > maxstep)
                step *= maxstep/std::abs(step);
            a -= step;
        }
        if (!ok)
            continue;
        // canonical cell: Re in [0, 2K), Im in [0, 2K')
        double re = std::fmod(a.real(), 2.0*ctx.K);
        if (re < 0) re += 2.0*ctx.K;
        double im = std::fmod(a.imag(), 2.0*ctx.Kprime);
        if (im < 0) im += 2.0*ctx.Kprime;
        return {re, im};
    }
    throw convergence_error("invert_p: Newton iteration failed for all seeds");
}

} // namespace emlame
