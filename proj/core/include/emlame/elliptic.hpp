// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#ifndef EMLAME_ELLIPTIC_HPP
#define EMLAME_ELLIPTIC_HPP

#include <complex>
#include <stdexcept>

namespace emlame {

using cplx = std::complex<double>;

/// Thrown when an evaluation point falls inside the guard ball around a
/// lattice point (simple or double pole of the requested function).
struct pole_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an iterative inversion fails to converge.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Complete elliptic integral K as a function of the squared modulus,
/// K(k) = int_0^{pi/2} dt / sqrt(1 - k^2 sin^2 t), computed via the AGM.
/// The complementary integral K' is complete_K(1 - k2).
double complete_K(double k2);

/// Precomputed data for elliptic evaluation at a fixed modulus.
///
/// Periods follow the rectangular-lattice convention omega1 = K (real),
/// omega3 = i K'; the Weierstrass roots satisfy e1 > e2 > e3 with the
/// normalization e1 - e3 = 1, so that wp(z) = e3 + 1/sn^2(z,k) holds with
/// no argument rescaling (DLMF 23.6.16 with our scale).
///
/// The context is immutable after construction and can be shared freely
/// across threads.
class EllipticContext {
public:
    /// k2 = 0 is accepted as the degenerate trigonometric limit
    /// (K' = inf, q = 0, e2 = e3); k2 >= 1 or k2 < 0 throws.
    explicit EllipticContext(double k2);

    double k2;          ///< squared modulus
    double kprime;      ///< complementary modulus k' = sqrt(1-k2)
    double K;           ///< quarter period K(k)
    double Kprime;      ///< quarter period K(k'), +inf for k2 = 0
    cplx omega1;        ///< real half-period (= K)
    cplx omega2;        ///< omega1 + omega3
    cplx omega3;        ///< imaginary half-period (= iK')
    double g2, g3;      ///< Weierstrass invariants
    double e1, e2, e3;  ///< cubic roots, e1 > e2 > e3, e1 - e3 = 1
    double nome_q;      ///< exp(-pi K'/K)
    double zeta_omega1; ///< eta1 = zeta(omega1)

    bool degenerate() const { return k2 == 0.0; }
};

struct JacobiTriple {
    cplx sn, cn, dn;
};

/// Jacobi sn, cn, dn at complex argument (theta quotients, DLMF 22.2).
JacobiTriple jacobi(cplx z, const EllipticContext& ctx);

/// Weierstrass elliptic function wp(z; g2, g3) with half-periods (K, iK').
/// Throws pole_error within 1e-10 of a lattice point.
cplx weier_p(cplx z, const EllipticContext& ctx);

/// Derivative wp'(z).
cplx weier_p_prime(cplx z, const EllipticContext& ctx);

/// Weierstrass zeta, zeta' = -wp. Simple poles at lattice points (guarded).
cplx weier_zeta(cplx z, const EllipticContext& ctx);

/// Weierstrass sigma (entire), sigma'/sigma = zeta.
cplx weier_sigma(cplx z, const EllipticContext& ctx);

/// Solve wp(a) = c for one representative a in the canonical cell
/// Re a in [0, 2K), Im a in [0, 2K'). Newton iteration seeded from the
/// arcsine inverse of wp = e3 + 1/sn^2; deterministic for a given c.
cplx invert_p(cplx c, const EllipticContext& ctx);

/// Distance from z to the nearest period-lattice point.
double lattice_distance(cplx z, const EllipticContext& ctx);

namespace detail {

/// Reduced theta series at fixed nome: th1/th2 carry the conventional
/// factor 2 q^{1/4} stripped so that quotients stay finite as q -> 0.
struct ThetaWorkspace {
    double q;
    double eta1_over_pi2;  // th1'''(0)/th1'(0) term cache
    double th1p0;          // reduced th1'(0)
};

cplx theta1_reduced(cplx u, double q);
cplx theta1_reduced_du(cplx u, double q);
cplx theta2_reduced(cplx u, double q);
cplx theta3(cplx u, double q);
cplx theta4(cplx u, double q);
double theta1_reduced_d1_at0(double q);
double theta1_reduced_d3_at0(double q);

} // namespace detail

} // namespace emlame

#endif
