// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#include "emlame/model.hpp"

#include <algorithm>
#include <cmath>

namespace emlame {

double f_V(double x, const DerivedConstants& dc)
{
    const double p = 1.0 + x*x;
    const double q = 1.0 + dc.kprime2*x*x;
    return dc.A*dc.k2/p + dc.B*dc.k2/q + dc.C*dc.kprime2*x*x + dc.D;
}

double f_m(double x, const DerivedConstants& dc)
{
    return 1.0/((1.0 + x*x)*(1.0 + dc.kprime2*x*x));
}

double fm_logderiv1(double x, const DerivedConstants& dc)
{
    const double p = 1.0 + x*x;
    const double q = 1.0 + dc.kprime2*x*x;
    return -(2.0*x/p + 2.0*dc.kprime2*x/q);
}

double fm_logderiv2(double x, const DerivedConstants& dc)
{
    const double p = 1.0 + x*x;
    const double q = 1.0 + dc.kprime2*x*x;
    const double lp = 2.0*x/p + 2.0*dc.kprime2*x/q;
    return lp*lp - (2.0/p - (2.0*x/p)*(2.0*x/p) + 2.0*dc.kprime2/q
                    - (2.0*dc.kprime2*x/q)*(2.0*dc.kprime2*x/q));
}

namespace {

double interior_minimum(const DerivedConstants& dc)
{
    // dense scan, then golden-section refinement of the best bracket
    const int n = 10000;
    double best = f_V(-dc.x0, dc);
    int ibest = 0;
    for (int i = 0; i <= n; ++i) {
        const double x = -dc.x0 + 2.0*dc.x0*i/n;
        const double v = f_V(x, dc);
        if (v < best) { best = v; ibest = i; }
    }
    double a = -dc.x0 + 2.0*dc.x0*std::max(0, ibest - 1)/n;
    double b = -dc.x0 + 2.0*dc.x0*std::min(n, ibest + 1)/n;
    const double phi = (std::sqrt(5.0) - 1.0)/2.0;
    while (b - a > 1e-10) {
        const double c = b - phi*(b - a);
        const double d = a + phi*(b - a);
        if (f_V(c, dc) < f_V(d, dc)) b = d;
        else a = c;
    }
    return f_V(0.5*(a + b), dc);
}

} // namespace

DerivedConstants derive(const ModelParams& params)
{
    DerivedConstants dc{};
    dc.alpha = params.alpha;
    dc.beta = params.beta;
    dc.gamma = params.gamma;
    dc.k2 = params.k2;
    dc.kprime2 = 1.0 - params.k2;
    dc.kprime = std::sqrt(dc.kprime2);
    dc.mu = params.mu;
    dc.nu = params.nu;
    dc.eta = 1.0 + dc.beta + dc.alpha*(dc.alpha + dc.beta + 1.0);

    const double muh = dc.mu + 0.5, nuh = dc.nu + 0.5;
    dc.A = 4.0*(1.0 + dc.beta - dc.eta) - muh*muh;
    dc.B = nuh*nuh - 4.0*(1.0 + dc.beta - dc.eta);
    dc.C = 2.0*(8.0*dc.eta - 5.0*dc.beta - 6.0);
    dc.D = (1.0 + dc.beta)*(3.0*dc.k2 + 2.0) - 4.0*dc.eta*dc.k2 + dc.k2/4.0 - 1.0;

    dc.x0 = 1.0/std::sqrt(dc.kprime);
    dc.m0 = dc.kprime/((1.0 + dc.kprime)*(1.0 + dc.kprime));
    dc.V0 = f_V(dc.x0, dc);
    dc.Vmin_interior = interior_minimum(dc);
    dc.lame_shift = dc.k2*(4.0*dc.eta - 4.0*dc.beta + double(dc.mu)*(dc.mu + 1) - 15.0/4.0);
    return dc;
}

double potential(double x, const DerivedConstants& dc)
{
    return (std::abs(x) > dc.x0) ? dc.V0 : f_V(x, dc);
}

double mass(double x, const DerivedConstants& dc)
{
    return (std::abs(x) > dc.x0) ? dc.m0 : f_m(x, dc);
}

} // namespace emlame
