// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#ifndef EMLAME_LAME_HPP
#define EMLAME_LAME_HPP

#include <array>
#include <utility>

#include "emlame/elliptic.hpp"

namespace emlame {

/// Thrown when a requested energy collides with a band edge, where the two
/// general solutions degenerate (vanishing Wronskian).
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Roots of c^2 + (E - 4 + e1) c + (3 e1 - e2 - 2 e1 e3 - e1 E) = 0,
/// ordered ascending by (real part, imaginary part).
std::pair<cplx, cplx> auxiliary_quadratic(double E, const EllipticContext& ctx);

/// The pair (a1, a2) with wp(a_i) = c_i, signs fixed jointly so that the
/// product ansatz solves the mu = nu = 1 equation: the residue conditions
/// at the ansatz poles reduce to
///     wp'(a1)/(c1 - e1) + wp'(a2)/(c2 - e1) = 0,
/// which pins the relative sign; a1 keeps the canonical-cell representative.
std::pair<cplx, cplx> locate_ai(double E, const EllipticContext& ctx);

/// The two independent solutions of the one-period associated Lame equation
/// (mu = nu = 1) at a non-band-edge energy E, with their boundary data at
/// z = +-K/2 precomputed. Construction is pure; the evaluators capture only
/// immutable data and are safe for parallel energy scans.
class LameSolutionPair {
public:
    LameSolutionPair(double E, const EllipticContext& ctx);

    double E;
    cplx c1, c2;       ///< auxiliary quadratic roots
    cplx a1, a2;       ///< wp(a_i) = c_i, sign-normalized
    cplx chi1_plus, chi1_minus, chi2_plus, chi2_minus;       ///< chi_i(+-K/2)
    cplx dchi1_plus, dchi1_minus, dchi2_plus, dchi2_minus;   ///< chi_i'(+-K/2)
    cplx Aplus, Aminus;            ///< boundary log-derivative coefficients
    cplx T1_plus, T1_minus;        ///< chi1(+-K/2) chi2(-+K/2)
    cplx wronskian;                ///< chi1 chi2' - chi1' chi2 (z-independent)

    /// chi_{1,2}(z) for z in [-K/2, K/2].
    cplx chi(double z, int which) const;

    /// d chi_{1,2} / dz via the exact logarithmic derivative (zeta sums).
    cplx chi_dot(double z, int which) const;

private:
    const EllipticContext* ctx_;
    cplx rho1_, rho2_;   ///< exponent constants zeta(om1) -+ [zeta(a1)+zeta(a2)]
};

/// Convenience wrapper evaluating chi_{1,2}(z) at energy E.
cplx chi_general(double E, double z, int which, const EllipticContext& ctx);

/// Boundary coefficients A+- entering the reduced energy equation;
/// built from wp, wp' at om1/2 + om3 and at the a_i.
std::pair<cplx, cplx> boundary_coefficients(double E, const EllipticContext& ctx);

/// Closed-form band-edge solution records.
struct BandEdge {
    int j;           ///< 0, 1, 2
    double E;        ///< 2 + k^2 - 2k', 2 + k^2 + 2k', 4
    cplx a1, a2;     ///< limiting a-values
    double (*chi)(double z, const EllipticContext& ctx);
    double (*chi_dot)(double z, const EllipticContext& ctx);
};

std::array<BandEdge, 3> band_edges(const EllipticContext& ctx);

/// Reduction-of-order second solution at a band edge:
/// chi2(z) = chi^{(j)}(z) * int_b^z dt / chi^{(j)}(t)^2, base b = 0 for
/// j = 0, 1 and b = K/4 for j = 2 (whose chi vanishes at z = 0; the
/// integration path detours around that double pole, which has zero
/// residue, so the value is path-independent).
cplx second_solution_at_band_edge(int j, double z, const EllipticContext& ctx);

/// Boundary samples of (chi^{(j)}, chi2) and their derivatives at +-K/2.
/// For j = 1 the band-edge solution vanishes exactly at the junctions and
/// the chi2 data are the finite limits, extracted by pole subtraction.
struct BandEdgeBoundary {
    cplx chi1p, chi1m, dchi1p, dchi1m;
    cplx chi2p, chi2m, dchi2p, dchi2m;
};

BandEdgeBoundary band_edge_boundary(int j, const EllipticContext& ctx);

} // namespace emlame

#endif
