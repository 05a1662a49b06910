#include "resurge/borel.hpp"

#include "resurge/errors.hpp"
#include "resurge/gamma.hpp"

#include <cmath>

namespace resurge {

namespace {

double log_abs_d(const Cplx& z)
{
    double r = std::abs(to_double(z.re)), i = std::abs(to_double(z.im));
    double m = std::max(r, i);
    if (m == 0)
        return -1e300;
    return std::log(std::hypot(r / m, i / m)) + std::log(m);
}

// log of the type tail C0 (R0 M)^{T+1}/(T+1)! e^{R0 M}
double log_tail(double log_c0, double r0m, int T)
{
    if (r0m <= 0)
        return -1e300;
    return log_c0 + (T + 1) * std::log(r0m) - lgamma_d(T + 2.0) + r0m;
}

} // namespace

EntireFn borel_int(const IntSeries& phi, const Real& R0)
{
    if (phi.val < 1)
        throw ValTooLow("Borel transform needs val >= 1");
    EntireFn f;
    f.R0 = R0;
    int T = phi.order(); // coefficients a_0 .. a_{T-1}
    f.a.resize(std::max(T, 0));
    Real fact(1);
    for (int n = 0; n < T; ++n) {
        f.a[n] = phi.c[n + 1] / fact;
        fact *= Real(n + 1);
    }
    refresh_type_bound(f);
    return f;
}

BranchedGerm borel_frac(const FracSeries& phi, const Real& R0)
{
    BranchedGerm g;
    g.gamma = phi.gamma - Cplx(1);
    g.h.R0 = R0;
    int T = phi.order() + 1;
    g.h.a.resize(T);
    std::vector<Cplx> gl = gamma_ladder(phi.gamma, T);
    for (int n = 0; n < T; ++n)
        g.h.a[n] = phi.c[n] / gl[n];
    refresh_type_bound(g.h);
    return g;
}

void refresh_type_bound(EntireFn& f)
{
    double lr = std::log(to_double(f.R0));
    double logc = -1e300;
    for (int n = 0; n < f.terms(); ++n) {
        double la = log_abs_d(f.a[n]);
        if (la > -1e290)
            logc = std::max(logc, la + lgamma_d(n + 1.0) - n * lr);
    }
    f.C0 = logc < -1e290 ? Real(0) : Real(std::exp(logc));
}

EvalResult eval_entire(const EntireFn& g, const Cplx& zeta, const Real& tol)
{
    EvalResult r;
    double m = to_double(abs(zeta));
    double r0m = to_double(g.R0) * m;
    double log_c0 = g.C0.is_zero() ? -1e300 : std::log(to_double(g.C0));
    double log_tol = std::log(std::max(to_double(tol), 1e-300));
    unsigned P = precision_bits();

    Cplx acc;
    Cplx zp(1);
    Real maxmag(0);
    CplxScratch sc;
    int T = g.terms();
    int stop = T;
    for (int n = 0; n < T; ++n) {
        Cplx term;
        mul_set(term, g.a[n], zp, sc);
        acc += term;
        Real tm = max(abs(term.re), abs(term.im));
        if (tm > maxmag)
            maxmag = tm;
        if (log_tail(log_c0, r0m, n) < log_tol) {
            stop = n;
            break;
        }
        Cplx nz;
        mul_set(nz, zp, zeta, sc);
        zp = nz;
    }
    if (stop >= T && log_tail(log_c0, r0m, T - 1) >= log_tol)
        throw InsufficientTerms("entire evaluation cannot certify the requested tolerance");
    Real rounding = maxmag * pow(Real(2), -static_cast<long>(P) + 8);
    if (rounding > tol && tol > 0)
        throw PrecisionBudgetExceeded("cancellation exceeds the precision reserve");
    r.value = acc;
    double lt = log_tail(log_c0, r0m, stop);
    r.err = Real(std::exp(std::max(lt, -700.0))) + rounding;
    if (lt < -700.0)
        r.err = rounding;
    return r;
}

EvalResult eval_branched(const BranchedGerm& g, const Real& modulus,
                         const Real& lifted_arg, const Real& tol)
{
    if (modulus.is_zero()) {
        // zeta^gamma H -> 0 for Re gamma > 0; exactly H(0) for gamma = 0
        EvalResult r;
        if (is_zero(g.gamma)) {
            r.value = g.h.terms() ? g.h.a[0] : Cplx();
            r.err = Real(0);
        } else {
            r.value = Cplx();
            r.err = Real(0);
        }
        return r;
    }
    Cplx zeta = polar(modulus, lifted_arg);
    Cplx logz(log(modulus), lifted_arg);
    Cplx branch = exp(g.gamma * logz);
    Real bmag = abs(branch);
    Real inner_tol = bmag.is_zero() ? tol : tol / bmag;
    EvalResult inner = eval_entire(g.h, zeta, inner_tol);
    EvalResult r;
    r.value = branch * inner.value;
    r.err = inner.err * bmag;
    return r;
}

std::vector<Cplx> convolve_taylor(const std::vector<Cplx>& f,
                                  const std::vector<Cplx>& g, int order)
{
    // B(phi1 phi2) = phi1 * phi2 with (f*g)_n = sum_{i+j=n-1} f_i g_j B(i+1,j+1)
    std::vector<Cplx> out(static_cast<size_t>(order) + 1, Cplx());
    std::vector<Real> fact(static_cast<size_t>(order) + 2);
    fact[0] = Real(1);
    for (int n = 1; n <= order + 1; ++n)
        fact[n] = fact[n - 1] * Real(n);
    for (int n = 1; n <= order; ++n) {
        Cplx acc;
        for (int i = 0; i <= n - 1; ++i) {
            int j = n - 1 - i;
            if (i >= static_cast<int>(f.size()) || j >= static_cast<int>(g.size()))
                continue;
            acc += f[i] * g[j] * (fact[i] * fact[j] / fact[n]);
        }
        out[n] = acc;
    }
    return out;
}

int required_terms(double r0m, double log_c0, double log_tol)
{
    int T = 4;
    while (T < 100000 && log_tail(log_c0, r0m, T) >= log_tol)
        ++T;
    return T + 1;
}

} // namespace resurge
