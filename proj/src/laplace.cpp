#include "resurge/laplace.hpp"

#include "resurge/errors.hpp"
#include "resurge/quadrature.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace resurge {

namespace {

struct RayPlan {
    double tmax;
    Real mu;
};

RayPlan plan_ray(const Real& C0, const Real& R0, double re_gamma,
                 const Real& theta, const Cplx& z, const Real& tol)
{
    Cplx u = polar(Real(1), theta);
    Real mu = (z * u).re - R0;
    if (mu < Real(0.25))
        throw DivergentLaplace("Re(z e^{i theta}) exceeds the type bound by less than the margin");
    // |g| <= C0 t^{re_gamma} e^{R0 t}; solve C0 t^g e^{-mu t}/mu <= tol
    double m = to_double(mu);
    double lc = C0.is_zero() ? -700.0 : std::log(to_double(C0));
    double lt = std::log(std::max(to_double(tol), 1e-280));
    double t = 1.0;
    for (int it = 0; it < 60; ++it)
        t = (lc - lt - std::log(m) + std::max(re_gamma, 0.0) * std::log(1.0 + t)) / m + 1.0;
    RayPlan p;
    p.tmax = std::max(t, 2.0);
    p.mu = mu;
    return p;
}

// Composite GL panels on [0, tmax]: graded toward 0, capped by the
// oscillation scale 2/|z|.
std::vector<std::pair<double, double>> ray_panels(double tmax, double absz)
{
    double cap = std::min(0.5, 2.0 / std::max(absz, 1e-6));
    std::vector<std::pair<double, double>> out;
    double a = 0.0;
    double first = std::min(cap, tmax) * 1e-10;
    double b = first;
    // geometric growth from the graded start
    while (a < tmax) {
        b = std::min(a + std::max((a + first) * 1.0, first), a + cap);
        if (b > tmax)
            b = tmax;
        out.emplace_back(a, b);
        a = b;
    }
    return out;
}

EvalResult ray_integrate(const std::function<EvalResult(const Cplx&, const Real&)>& g,
                         double re_gamma, const Real& C0, const Real& R0,
                         const Real& theta, const Cplx& z, const Real& tol)
{
    RayPlan plan = plan_ray(C0, R0, re_gamma, theta, z, tol);
    Cplx u = polar(Real(1), theta);
    GLRule rule = make_gl_rule(16);
    auto panels = ray_panels(plan.tmax, to_double(abs(z)));
    Cplx acc;
    Real errsum(0);
    Real eval_tol = tol / Real(8 * static_cast<long>(panels.size() * rule.p));
    CplxScratch sc;
    for (auto& [a, b] : panels) {
        Real h2 = Real(b - a) * Real(0.5);
        Real mid = Real(a + b) * Real(0.5);
        Cplx panel_acc;
        for (int l = 0; l < rule.p; ++l) {
            Real t = mid + h2 * rule.x[l];
            Cplx zeta = u * t;
            EvalResult gv = g(zeta, theta);
            Cplx damp = exp(-(z * zeta));
            Cplx term = damp * gv.value;
            mul_acc(panel_acc, Cplx(rule.w[l]), term, sc);
            errsum += gv.err * abs(damp) * rule.w[l] * h2;
        }
        acc += panel_acc * (u * h2);
    }
    // certified exponential tail beyond tmax
    double m = to_double(plan.mu);
    double lc = C0.is_zero() ? -700.0 : std::log(to_double(C0));
    double log_tail = lc + std::max(re_gamma, 0.0) * std::log(1.0 + plan.tmax) -
                      m * plan.tmax - std::log(m);
    EvalResult r;
    r.value = acc;
    r.err = Real(std::exp(std::max(log_tail, -700.0))) + errsum;
    return r;
}

} // namespace

EvalResult laplace_ray(const EntireFn& g, const Real& theta, const Cplx& z,
                       const Real& tol)
{
    auto f = [&](const Cplx& zeta, const Real&) { return eval_entire(g, zeta, tol); };
    return ray_integrate(f, 0.0, g.C0, g.R0, theta, z, tol);
}

EvalResult laplace_ray(const BranchedGerm& g, const Real& theta, const Cplx& z,
                       const Real& tol)
{
    double re_gamma = to_double(g.gamma.re);
    auto f = [&](const Cplx& zeta, const Real& lift) {
        return eval_branched(g, abs(zeta), lift, tol);
    };
    // the branch magnitude inflates the effective type constant; fold the
    // worst |zeta^gamma| growth into re_gamma via the plan above
    Real C0 = g.h.C0 * (Real(1) + exp(abs(g.gamma.im) * abs(theta)));
    return ray_integrate(f, re_gamma, C0, g.h.R0, theta, z, tol);
}

} // namespace resurge
