// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#ifndef EMLAME_MODEL_HPP
#define EMLAME_MODEL_HPP

#include <stdexcept>

namespace emlame {

/// User-facing model parameters. The kinetic-operator ordering parameters
/// obey alpha + beta + gamma = -1; the constructor takes (alpha, beta) and
/// derives gamma so the constraint cannot be violated.
struct ModelParams {
    double alpha;
    double beta;
    double gamma;
    double k2;      ///< squared elliptic modulus, in [0, 1); k2 -> 1 rejected
    int mu = 1;     ///< Lame parameters; the solver pipeline requires mu = nu = 1
    int nu = 1;

    ModelParams(double alpha_, double beta_, double k2_, int mu_ = 1, int nu_ = 1)
        : alpha(alpha_), beta(beta_), gamma(-1.0 - alpha_ - beta_),
          k2(k2_), mu(mu_), nu(nu_)
    {
        if (!(k2 >= 0.0) || k2 >= 1.0)
            throw std::domain_error("ModelParams: k2 must lie in [0, 1)");
        if (mu < 1 || nu < 1)
            throw std::domain_error("ModelParams: Lame parameters must be positive integers");
    }

    /// The alpha = gamma one-parameter family: alpha = gamma = -(1+beta)/2.
    static ModelParams alpha_eq_gamma(double beta_, double k2_)
    {
        return ModelParams(-(1.0 + beta_)/2.0, beta_, k2_);
    }
};

/// Everything computed from ModelParams.
///
/// The rational potential inside |x| <= x0 is
///   f_V(x) = A k^2/(1+x^2) + B k^2/(1+k'^2 x^2) + C k'^2 x^2 + D,
/// constant V0 = f_V(x0) outside; the mass is
///   f_m(x) = [(1+x^2)(1+k'^2 x^2)]^{-1}, constant m0 = f_m(x0) outside.
///
/// lame_shift is the constant by which the Liouville transform of the
/// interior equation differs from the associated-Lame normal form at the
/// same energy: the transformed equation reads
///   -chi'' + k^2[ mu(mu+1) sn^2 + nu(nu+1) cn^2/dn^2 ] chi = E chi
/// exactly when f_V + lame_shift is used for the interior coefficient.
/// It vanishes for k2 = 0 and for mu = nu = 1 equals k^2 (4 eta - 4 beta - 7/4).
struct DerivedConstants {
    double alpha, beta, gamma;
    double k2, kprime2, kprime;
    int mu, nu;
    double eta;              ///< 1 + beta + alpha (alpha + beta + 1)
    double A, B, C, D;       ///< potential coefficients
    double x0;               ///< junction position 1/sqrt(k')
    double m0;               ///< asymptotic mass k'/(1+k')^2
    double V0;               ///< asymptotic potential f_V(x0)
    double Vmin_interior;    ///< numerical minimum of f_V on [-x0, x0]
    double lame_shift;       ///< see above
};

/// Populate all derived constants.
DerivedConstants derive(const ModelParams& params);

/// Piecewise potential: f_V inside, exactly V0 for |x| > x0.
double potential(double x, const DerivedConstants& dc);

/// Piecewise mass: f_m inside, exactly m0 for |x| > x0.
double mass(double x, const DerivedConstants& dc);

/// Interior rational parts and their closed-form log-derivatives.
double f_V(double x, const DerivedConstants& dc);
double f_m(double x, const DerivedConstants& dc);
double fm_logderiv1(double x, const DerivedConstants& dc);  ///< f_m'/f_m
double fm_logderiv2(double x, const DerivedConstants& dc);  ///< f_m''/f_m

} // namespace emlame

#endif
