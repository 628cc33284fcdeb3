// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#ifndef EMLAME_QUADRATURE_HPP
#define EMLAME_QUADRATURE_HPP

#include <cmath>
#include <stdexcept>

namespace emlame {

// Gauss-Kronrod 15(7) nodes/weights on [-1, 1] (positive half; symmetric).
namespace gk15 {
inline constexpr double xk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};
} // namespace gk15

/// One GK15 panel on [a, b]; returns the Kronrod value and writes the
/// Gauss-Kronrod discrepancy estimate into err.
template <typename F>
auto gk15_panel(F&& f, double a, double b, double& err)
{
    const double h = 0.5*(b - a), c = 0.5*(a + b);
    using R = decltype(f(c));
    R kron{}, gauss{};
    for (int i = 0; i < 8; ++i) {
        const R fa = f(c - h*gk15::xk[i]);
        const R fb = (i < 7) ? f(c + h*gk15::xk[i]) : R{};
        const R s = (i < 7) ? fa + fb : fa;
        kron += gk15::wk[i]*s;
        if (i % 2 == 1)
            gauss += gk15::wg[i/2]*s;
    }
    kron *= h;
    gauss *= h;
    err = std::abs(kron - gauss);
    return kron;
}

/// Adaptive bisection-refined Gauss-Kronrod integration of f over [a, b].
/// Works for real- or complex-valued integrands.
template <typename F>
auto integrate(F&& f, double a, double b, double abs_tol = 1e-12, int max_depth = 48)
{
    using R = decltype(f(a));
    struct Seg { double a, b; int depth; };
    R total{};
    double err_total = 0.0;
    // explicit stack; worst case 2^depth segments is bounded by the budget below
    Seg stack[2048];
    int top = 0;
    stack[top++] = {a, b, 0};
    int budget = 20000;
    while (top > 0) {
        if (--budget < 0)
            throw std::runtime_error("integrate: refinement budget exhausted");
        const Seg s = stack[--top];
        double err = 0.0;
        const R val = gk15_panel(f, s.a, s.b, err);
        const double local_tol = abs_tol*std::abs(s.b - s.a)/std::max(1e-300, std::abs(b - a));
        if (err < local_tol || s.depth >= max_depth) {
            total += val;
            err_total += err;
            continue;
        }
        if (top + 2 > 2048)
            throw std::runtime_error("integrate: segment stack overflow");
        const double m = 0.5*(s.a + s.b);
        stack[top++] = {s.a, m, s.depth + 1};
        stack[top++] = {m, s.b, s.depth + 1};
    }
    (void)err_total;
    return total;
}

} // namespace emlame

#endif
