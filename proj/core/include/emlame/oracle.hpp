// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#ifndef EMLAME_ORACLE_HPP
#define EMLAME_ORACLE_HPP

#include <vector>

#include "emlame/model.hpp"

namespace emlame {

/// Fixed-step RK4 shooting configuration. step_h <= 0 selects the default
/// x0/4000; x_far records the tail truncation used when sampling phi
/// outside the junctions (the determinant itself uses exact tail data, so
/// it only matters for exported profiles).
struct ShootingConfig {
    double step_h = 0.0;
    double x_far = 0.0;
    int e_grid = 600;
};

/// Scaled tail mismatch of the transformed second-order equation
///   phi'' = [ f_m (f_V + lame_shift - E) + (beta/2) f_m''/f_m
///             + (3/4 - eta) (f_m'/f_m)^2 ] phi
/// integrated from -x0 to +x0 with exact decaying-tail initial data and the
/// derivative jumps Delta phi' = -+ (beta/2)(f_m'/f_m)(+-x0) phi applied at
/// the junctions. Zero exactly at the bound-state energies. This module
/// shares no code with the elliptic pipeline.
double shoot_determinant(double E, const DerivedConstants& dc,
                         const ShootingConfig& cfg = {});

/// All mismatch roots in (lower, upper), bracketed on cfg.e_grid points and
/// refined by bisection.
std::vector<double> oracle_find_roots(const DerivedConstants& dc,
                                      double lower, double upper,
                                      const ShootingConfig& cfg = {});

/// Step-halving study at a solved root: observed convergence order of the
/// root location (expected ~4 for RK4) and the Richardson-extrapolated
/// root.
struct ConvergenceReport {
    double root_h, root_h2, root_h4, root_h8;
    double observed_order;
    double richardson_root;
    bool converged;   ///< extrapolated root stable to 1e-5
};

ConvergenceReport convergence_study(double E_root, const DerivedConstants& dc,
                                    const ShootingConfig& cfg = {});

/// One row of the machine-readable verification report.
struct VerifyRow {
    double var_value;            ///< sweep variable (beta or k2)
    std::vector<double> analytic;
    std::vector<double> oracle;
    double max_delta;            ///< max |E_analytic - E_oracle| over paired roots
    bool pass;                   ///< paired, same count, max_delta < tol
};

/// Compare the analytic spectrum with the shooting spectrum for one
/// parameter set at tolerance tol (criterion threshold 1e-3).
VerifyRow verify_config(const ModelParams& params, double tol = 1e-3,
                        int grid_points = 2000, double lambda_depth = 60.0,
                        const ShootingConfig& cfg = {});

} // namespace emlame

#endif
