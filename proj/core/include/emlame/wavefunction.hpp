// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#ifndef EMLAME_WAVEFUNCTION_HPP
#define EMLAME_WAVEFUNCTION_HPP

#include <memory>
#include <vector>

#include "emlame/elliptic.hpp"
#include "emlame/model.hpp"
#include "emlame/spectrum.hpp"

namespace emlame {

enum class Parity { Even, Odd, None };

/// Normalized bound-state envelope wave function.
///
/// The interior factor u(z) is the real representative of the solution
/// combination chi2 + (d1/d2) chi1: the combination is a complex multiple
/// of the real eigenfunction (its real and imaginary parts are
/// proportional), so u is obtained by removing the global phase, sampled
/// where |chi| is largest, and fixing a deterministic sign. The three
/// regions are
///   psi(x) = C m0^{1/4} u(-K/2) e^{kappa (x0 + x)}        x < -x0
///   psi(x) = C f_m(x)^{1/4} u(z(x))                       |x| <= x0
///   psi(x) = C m0^{1/4} u(+K/2) e^{kappa (x0 - x)}        x > x0
/// which makes continuity at the junctions exact by construction.
class WaveFunction {
public:
    WaveFunction(const BoundState& bs, const DerivedConstants& dc,
                 const EllipticContext& ctx);

    BoundState bound_state;   ///< with C_norm filled in
    Parity parity;

    /// Normalized psi(x).
    double evaluate(double x) const;

    /// Interior real combination u(z), z in [-K/2, K/2], pre-normalization.
    double u(double z) const;

    /// Normalization constant 1/sqrt(tail term + int u^2 dz).
    double C_norm() const { return bound_state.C_norm; }

    /// Number of interior sign changes on a 10^4-point grid.
    int node_count() const;

    const DerivedConstants& constants() const { return dc_; }
    const EllipticContext& context() const { return *ctx_; }

private:
    DerivedConstants dc_;
    std::shared_ptr<const EllipticContext> ctx_;
    std::shared_ptr<const LameSolutionPair> pair_;  // null in the k2 = 0 limit
    cplx d12_;        // d1/d2
    cplx phase_;      // e^{-i theta} removing the global phase of chi
    double sE_re_, sE_im_;  // sqrt(E) for the k2 = 0 closed form
    double uK2_, umK2_;     // u(+-K/2)
};

/// Assemble and normalize the wave function of a solved level.
WaveFunction assemble(const BoundState& bs, const DerivedConstants& dc,
                      const EllipticContext& ctx);

/// Recompute the normalization constant of an assembled wave function
/// (tails in closed form, interior by adaptive quadrature).
double normalize(const WaveFunction& wf);

/// Closed-form 1/C_n for the k2 = 0 limit,
/// [pi + 2((1 + (-1)^n cos 2 theta_n)/sqrt(V0-E) + (-1)^n sin(2 theta_n)/sqrt(E))]^{1/2},
/// theta_n = (pi/4) sqrt(E_n). Cross-checks the quadrature path.
double k0_norm_closed_form(int n, double E, const DerivedConstants& dc);

} // namespace emlame

#endif
