// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#ifndef EMLAME_SPECTRUM_HPP
#define EMLAME_SPECTRUM_HPP

#include <optional>
#include <vector>

#include "emlame/auxmap.hpp"
#include "emlame/elliptic.hpp"
#include "emlame/lame.hpp"
#include "emlame/model.hpp"

namespace emlame {

struct window_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Admissible energy range for the bound-state scan. For beta >= -1/2 the
/// floor is the auxiliary-potential minimum 2k^2; for beta < -1/2 the range
/// is unbounded below and is truncated at V0 - lambda_depth (an explicit,
/// user-visible cutoff, not a physical bound).
struct EnergyWindow {
    double lower;
    double upper;          ///< V0 - 1e-9
    BetaCase beta_case;
};

EnergyWindow energy_window(const DerivedConstants& dc, double lambda_depth = 60.0);

/// One solved level.
struct BoundState {
    int n;                 ///< level index (0-based, ascending energy)
    double E;
    double kappa;          ///< sqrt(m0 (V0 - E))
    cplx d_ratio;          ///< d2/d1 mixing ratio
    cplx N_plus, N_minus;  ///< tail amplitudes before normalization
    double C_norm;         ///< normalization constant (filled by wavefunc)
};

/// kappa and the boundary coefficient B = (2 beta + 1) sqrt(k') + 2 kappa.
double b_coefficient(double E, const DerivedConstants& dc);

/// Left-hand side of the reduced transcendental energy equation
/// [4 m0 A-^2 - 4 B sqrt(m0) A- + B^2] T1- - [4 m0 A+^2 + 4 B sqrt(m0) A+ + B^2] T1+.
/// Real for real E in exact arithmetic with the sign conventions of
/// locate_ai; callers scan the real part and check the imaginary part.
cplx residual_general(double E, const DerivedConstants& dc, const EllipticContext& ctx);

/// Same combination evaluated at an arbitrary non-band-edge E through the
/// unreduced form 4 m0 (T2- - T2+) + 2 sqrt(m0) B (T1'- + T1'+) + B^2 (T1+ - T1-),
/// with the chi derivatives taken from the exact zeta-sum logarithmic
/// derivative rather than from A+-. Cross-checks the reduction identity.
cplx residual_unreduced(double E, const DerivedConstants& dc, const EllipticContext& ctx);

/// Unreduced energy equation evaluated at band edge j with the closed-form
/// chi^{(j)} and its reduction-of-order partner. Returns the magnitude;
/// a nonzero value certifies that E^{(j)} is not a bound state.
double residual_band_edge(int j, const DerivedConstants& dc, const EllipticContext& ctx);

/// k^2 = 0 closed-form energy equation
/// (B^2 - E) sin(pi sqrt(E)/2) + 2 B sqrt(E) cos(pi sqrt(E)/2).
/// For E < 0 the unique analytic continuation (hyperbolic form) is used,
/// so the well case can scan below zero. Domain error for E >= V0.
double residual_k0(double E, const DerivedConstants& dc);

/// Existence test for a zero-energy state at k^2 = 0 (it requires
/// V0 = (2 beta + 1)^2 with beta < -1/2, or V0 = (2 beta + 1 + 4/pi)^2 with
/// beta < -(1/2 + 2/pi)).
struct ZeroEnergyDiagnostics {
    bool exists;
    double v0_delta_case1;
    double v0_delta_case2;
    bool beta_admits_case1;
    bool beta_admits_case2;
};
ZeroEnergyDiagnostics zero_energy_check(const DerivedConstants& dc);

struct ScanOptions {
    int grid_points = 2000;
    double lambda_depth = 60.0;
};

/// All bound states in the admissible window, ascending. Sign-change
/// brackets on the scan grid are refined by bisection to |dE| < 1e-10;
/// brackets straddling a band edge are split at it, and refined candidates
/// must pass a scaled residual-magnitude test (spurious sign flips from
/// T1 poles or branch jumps fail it). Band-edge energies themselves are
/// excluded and certified non-roots separately.
std::vector<BoundState> find_bound_states(const ModelParams& params,
                                          const ScanOptions& opts = {});

} // namespace emlame

#endif
