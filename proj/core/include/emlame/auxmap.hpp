// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#ifndef EMLAME_AUXMAP_HPP
#define EMLAME_AUXMAP_HPP

#include <array>

#include "emlame/elliptic.hpp"
#include "emlame/model.hpp"

namespace emlame {

/// Sign of beta + 1/2 decides whether the junction delta terms of the
/// auxiliary constant-mass potential act as barriers or wells.
enum class BetaCase { Barrier, Neutral, Well };

BetaCase classify_beta(double beta);

/// The auxiliary constant-mass picture: piecewise x <-> z map, the smooth
/// part of the Schroedinger potential Vtilde(z), and the delta-term data.
/// Delta terms are carried symbolically as (location, weight) pairs.
struct AuxiliaryPicture {
    double lambda_plus;    ///< +(K/2 - sqrt(m0) x0)
    double lambda_minus;   ///< -(K/2 - sqrt(m0) x0)
    double delta_weight;   ///< (beta + 1/2)(1 + k')
    double vtilde_min;     ///< 2 k^2 for mu = nu = 1
    BetaCase beta_case;
    std::array<double, 3> band_edges;  ///< E0, E1, E2 of the periodic problem
};

AuxiliaryPicture make_auxiliary(const DerivedConstants& dc, const EllipticContext& ctx);

/// Piecewise map: x = sn z / cn z for |z| < K/2, linear continuation outside.
double x_of_z(double z, const DerivedConstants& dc, const EllipticContext& ctx);

/// Inverse map (Newton with bisection fallback on the interior branch).
double z_of_x(double x, const DerivedConstants& dc, const EllipticContext& ctx);

/// Smooth part of the auxiliary potential: 2k^2 [sn^2 z + cn^2 z / dn^2 z]
/// inside |z| < K/2, V0 outside. The junction values jump; both one-sided
/// values are well defined (f_V side equals 4k^2/(1+k')).
double vtilde(double z, const DerivedConstants& dc, const EllipticContext& ctx);

struct DeltaTerm {
    double location;
    double weight;
};

/// The two junction delta terms of Vtilde, symbolically.
std::array<DeltaTerm, 2> delta_terms(const DerivedConstants& dc, const EllipticContext& ctx);

/// Coefficient of the derivative jump of chi at z = +-K/2:
/// Delta[chi'] = (beta + 1/2)(1 + k') chi(+-K/2).
double chi_jump(const DerivedConstants& dc);

/// Band-edge energies E^(j) = {2 + k^2 - 2k', 2 + k^2 + 2k', 4}.
std::array<double, 3> band_edge_energies(const EllipticContext& ctx);

} // namespace emlame

#endif
