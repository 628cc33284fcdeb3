// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#include "emlame/wavefunction.hpp"

#include <cmath>
#include <numbers>

#include "emlame/auxmap.hpp"
#include "emlame/quadrature.hpp"

namespace emlame {

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

WaveFunction::WaveFunction(const BoundState& bs, const DerivedConstants& dc,
                           const EllipticContext& ctx)
    : bound_state(bs), parity(Parity::None), dc_(dc),
      ctx_(std::make_shared<EllipticContext>(ctx)),
      d12_(1.0/bs.d_ratio), phase_(1.0, 0.0), sE_re_(0.0), sE_im_(0.0)
{
    const cplx sE = std::sqrt(cplx(bs.E, 0.0));
    sE_re_ = sE.real();
    sE_im_ = sE.imag();
    if (!ctx.degenerate())
        pair_ = std::make_shared<LameSolutionPair>(bs.E, ctx);

    auto chi_comb = [&](double z) -> cplx {
        if (pair_)
            return pair_->chi(z, 2) + d12_*pair_->chi(z, 1);
        const cplx e = std::exp(cplx(0.0, 1.0)*cplx(sE_re_, sE_im_)*z);
        return 1.0/e + d12_*e;
    };

    // global phase from the largest sample; falls back across the grid if
    // the nominal real part is numerically null
    const double K2 = 0.5*ctx.K;
    const int ns = 33;
    double best = -1.0;
    cplx best_val(1.0, 0.0);
    for (int i = 0; i <= ns; ++i) {
        const double z = -K2 + 2.0*K2*i/ns;
        const cplx v = chi_comb(z);
        if (std::abs(v) > best) {
            best = std::abs(v);
            best_val = v;
        }
    }
    phase_ = std::conj(best_val)/std::abs(best_val);

    uK2_ = (phase_*chi_comb(K2)).real();
    umK2_ = (phase_*chi_comb(-K2)).real();

    // deterministic sign: largest-|u| sample positive
    double umax = 0.0;
    for (int i = 0; i <= ns; ++i) {
        const double z = -K2 + 2.0*K2*i/ns;
        const double v = (phase_*chi_comb(z)).real();
        if (std::abs(v) > std::abs(umax))
            umax = v;
    }
    if (umax < 0.0) {
        phase_ = -phase_;
        uK2_ = -uK2_;
        umK2_ = -umK2_;
    }

    // parity classification at matched sample pairs
    double even_dev = 0.0, odd_dev = 0.0, scale = 0.0;
    for (int i = 1; i <= 8; ++i) {
        const double z = K2*i/8.5;
        const double up = u(z), um = u(-z);
        even_dev = std::max(even_dev, std::abs(up - um));
        odd_dev = std::max(odd_dev, std::abs(up + um));
        scale = std::max({scale, std::abs(up), std::abs(um)});
    }
    if (even_dev < 1e-6*scale) parity = Parity::Even;
    else if (odd_dev < 1e-6*scale) parity = Parity::Odd;

    bound_state.C_norm = normalize(*this);
}

double WaveFunction::u(double z) const
{
    cplx v;
    if (pair_) {
        v = pair_->chi(z, 2) + d12_*pair_->chi(z, 1);
    } else {
        const cplx e = std::exp(cplx(0.0, 1.0)*cplx(sE_re_, sE_im_)*z);
        v = 1.0/e + d12_*e;
    }
    return (phase_*v).real();
}

double WaveFunction::evaluate(double x) const
{
    const double C = bound_state.C_norm;
    const double m14 = std::pow(dc_.m0, 0.25);
    if (x < -dc_.x0)
        return C*m14*umK2_*std::exp(bound_state.kappa*(dc_.x0 + x));
    if (x > dc_.x0)
        return C*m14*uK2_*std::exp(bound_state.kappa*(dc_.x0 - x));
    const double z = z_of_x(x, dc_, *ctx_);
    return C*std::pow(f_m(x, dc_), 0.25)*u(z);
}

int WaveFunction::node_count() const
{
    const int n = 10000;
    int count = 0;
    double prev = u(-0.5*ctx_->K + 1e-8);
    for (int i = 1; i <= n; ++i) {
        const double z = -0.5*ctx_->K + ctx_->K*i/n;
        const double v = u(std::min(z, 0.5*ctx_->K - 1e-8));
        if (prev != 0.0 && v != 0.0 && std::signbit(prev) != std::signbit(v))
            ++count;
        prev = v;
    }
    return count;
}

WaveFunction assemble(const BoundState& bs, const DerivedConstants& dc,
                      const EllipticContext& ctx)
{
    return WaveFunction(bs, dc, ctx);
}

double normalize(const WaveFunction& wf)
{
    const auto& dc = wf.constants();
    const auto& bs = wf.bound_state;
    const double K2 = 0.5*wf.context().K;
    const double up = wf.u(K2), um = wf.u(-K2);
    const double tails = (up*up + um*um)/(2.0*std::sqrt(dc.V0 - bs.E));
    double scale = 0.0;
    for (int i = 0; i <= 8; ++i)
        scale = std::max(scale, std::abs(wf.u(-K2 + 2.0*K2*i/8.0)));
    const double interior = integrate([&](double z) {
        const double v = wf.u(z);
        return v*v;
    }, -K2, K2, 1e-10*std::max(1.0, scale*scale*2.0*K2));
    return 1.0/std::sqrt(tails + interior);
}

double k0_norm_closed_form(int n, double E, const DerivedConstants& dc)
{
    const double theta = 0.25*pi*std::sqrt(E);
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    const double inv = pi + 2.0*((1.0 + sgn*std::cos(2.0*theta))/std::sqrt(dc.V0 - E)
                               + sgn*std::sin(2.0*theta)/std::sqrt(E));
    return 1.0/std::sqrt(inv);
}

} // namespace emlame
