#include "resurge/kernel.hpp"

#include "resurge/errors.hpp"
#include "resurge/gamma.hpp"

#include <cmath>

namespace resurge {

EntireFn KernelTable::row_at(const Cplx& xi) const
{
    EntireFn row;
    row.R0 = R0;
    size_t len = 0;
    for (const auto& f : u)
        len = std::max(len, f.a.size());
    row.a.assign(len, Cplx());
    CplxScratch sc;
    Cplx t(1); // (-xi)^k / k!
    Real c0(0);
    for (int k = 0; k <= k_max(); ++k) {
        if (k > 0)
            t = t * (-xi) / Real(k);
        const EntireFn& f = u[static_cast<size_t>(k)];
        for (size_t n = 0; n < f.a.size(); ++n)
            mul_acc(row.a[n], t, f.a[n], sc);
        c0 += abs(t) * f.C0;
    }
    row.C0 = c0;
    return row;
}

EvalResult KernelTable::eval_direct(const Cplx& xi, const Cplx& zeta,
                                    const Real& tol) const
{
    Cplx w = zeta - xi;
    Real each = tol / Real(k_max() + 1);
    Cplx t(1);
    EvalResult total;
    total.value = Cplx();
    total.err = Real(0);
    for (int k = 0; k <= k_max(); ++k) {
        if (k > 0)
            t = t * (-xi) / Real(k);
        Real tm = abs(t);
        Real sub_tol = tm.is_zero() ? each : each / tm;
        EvalResult e = eval_entire(u[static_cast<size_t>(k)], w, sub_tol);
        total.value += t * e.value;
        total.err += tm * e.err;
    }
    return total;
}

KernelTable build_kernel(const AlphaCtx& actx, double xi_max, double w_max,
                         double tol)
{
    const FatouCtx& ctx = *actx.base;
    KernelTable kt;
    kt.alpha = actx.alpha;
    kt.rho = ctx.data.rho;
    kt.R0 = ctx.data.radius_r;
    double r0w = to_double(kt.R0) * w_max;
    double log_tol = std::log(std::max(tol, 1e-300));

    IntSeries cm1 = actx.c_alpha; // c_alpha - 1
    cm1.c[0] = Cplx();
    cm1.val = std::max(cm1.val, 1);
    refresh_val(cm1);
    kt.u.push_back(borel_int(cm1, kt.R0));

    IntSeries pk = ctx.data.b; // b^k running product
    int consecutive_small = 0;
    for (int k = 1; k <= 200; ++k) {
        kt.u.push_back(borel_int(mul(actx.c_alpha, pk, ctx.depth()), kt.R0));
        const EntireFn& row = kt.u.back();
        // contribution bound: xi_max^k/k! * C0_k e^{R0 w_max}
        double log_c0 = row.C0.is_zero() ? -1e300 : std::log(to_double(row.C0));
        double bound = k * std::log(std::max(xi_max, 1e-30)) - lgamma_d(k + 1.0) +
                       log_c0 + r0w;
        if (bound < log_tol) {
            if (++consecutive_small >= 2)
                break;
        } else {
            consecutive_small = 0;
        }
        if (k == 200)
            throw InsufficientTerms("kernel k-truncation did not certify; raise depth");
        pk = mul(pk, ctx.data.b, ctx.depth());
    }
    return kt;
}

} // namespace resurge
