#include "resurge/series.hpp"

#include "resurge/errors.hpp"

#include <algorithm>
#include <cmath>

namespace resurge {

namespace {

Real tiny_rel()
{
    // structural-cancellation threshold: half the working mantissa
    return pow(Real(2), -static_cast<long>(precision_bits() / 2));
}

} // namespace

IntSeries int_zero(int order)
{
    IntSeries s;
    s.c.assign(static_cast<size_t>(order) + 1, Cplx());
    s.val = order + 1;
    return s;
}

IntSeries int_one(int order)
{
    IntSeries s = int_zero(order);
    s.c[0] = Cplx(1);
    s.val = 0;
    return s;
}

IntSeries int_monomial(int n, const Cplx& coeff, int order)
{
    IntSeries s = int_zero(order);
    s.c[static_cast<size_t>(n)] = coeff;
    s.val = n;
    return s;
}

void refresh_val(IntSeries& s)
{
    int v = s.val;
    while (v <= s.order() && is_zero(s.c[static_cast<size_t>(v)]))
        ++v;
    s.val = v;
}

IntSeries add(const IntSeries& a, const IntSeries& b)
{
    IntSeries r = int_zero(std::min(a.order(), b.order()));
    for (int n = 0; n <= r.order(); ++n)
        r.c[n] = a.c[n] + b.c[n];
    r.val = std::min(a.val, b.val);
    return r;
}

IntSeries sub(const IntSeries& a, const IntSeries& b)
{
    IntSeries r = int_zero(std::min(a.order(), b.order()));
    for (int n = 0; n <= r.order(); ++n)
        r.c[n] = a.c[n] - b.c[n];
    r.val = std::min(a.val, b.val);
    return r;
}

IntSeries scale(const IntSeries& a, const Cplx& s)
{
    IntSeries r = a;
    for (auto& x : r.c)
        x = x * s;
    return r;
}

IntSeries mul(const IntSeries& a, const IntSeries& b, int cap)
{
    int ord = std::min(a.order() + b.val, b.order() + a.val);
    if (cap >= 0)
        ord = std::min(ord, cap);
    ord = std::max(ord, 0);
    IntSeries r = int_zero(ord);
    r.val = std::min(a.val + b.val, ord + 1);
    CplxScratch sc;
    for (int n = r.val; n <= ord; ++n) {
        int ilo = std::max(a.val, n - b.order());
        int ihi = std::min(a.order(), n - b.val);
        Cplx acc;
        for (int i = ilo; i <= ihi; ++i)
            mul_acc(acc, a.c[i], b.c[n - i], sc);
        r.c[n] = acc;
    }
    return r;
}

IntSeries mul_z_pow(const IntSeries& a, int j)
{
    IntSeries r = int_zero(a.order() + j);
    for (int n = 0; n <= a.order(); ++n)
        r.c[n + j] = a.c[n];
    r.val = a.val + j;
    return r;
}

IntSeries inverse(const IntSeries& a)
{
    if (is_zero(a.c[0]))
        throw NonUnitLeadingTerm("inverse needs a nonzero constant term");
    IntSeries r = int_zero(a.order());
    r.val = 0;
    Cplx c0inv = Cplx(1) / a.c[0];
    r.c[0] = c0inv;
    CplxScratch sc;
    for (int n = 1; n <= a.order(); ++n) {
        Cplx acc;
        for (int i = 1; i <= std::min(n, a.order()); ++i)
            mul_acc(acc, a.c[i], r.c[n - i], sc);
        r.c[n] = -(c0inv * acc);
    }
    return r;
}

IntSeries exp_series(const IntSeries& u)
{
    if (!is_zero(u.c[0]))
        throw NonUnitLeadingTerm("exp needs val >= 1 input");
    IntSeries r = int_zero(u.order());
    r.val = 0;
    r.c[0] = Cplx(1);
    CplxScratch sc;
    for (int m = 1; m <= u.order(); ++m) {
        Cplx acc;
        for (int i = std::max(1, u.val); i <= m; ++i) {
            Cplx t = u.c[i] * Real(i);
            mul_acc(acc, t, r.c[m - i], sc);
        }
        r.c[m] = acc / Real(m);
    }
    return r;
}

IntSeries log_series(const IntSeries& f)
{
    if (f.c[0] != Cplx(1))
        throw NonUnitLeadingTerm("log needs 1 + O(z^{-1}) input");
    IntSeries r = int_zero(f.order());
    r.val = 1;
    std::vector<Cplx> B(static_cast<size_t>(f.order()) + 1); // B_m = m g_m
    CplxScratch sc;
    for (int m = 1; m <= f.order(); ++m) {
        Cplx acc = f.c[m] * Real(m); // A_m
        for (int i = 1; i < m; ++i)
            mul_sub(acc, f.c[i], B[m - i], sc);
        B[m] = acc;
        r.c[m] = acc / Real(m);
    }
    return r;
}

IntSeries pow_alpha(const IntSeries& f, const Cplx& alpha)
{
    if (f.c[0] != Cplx(1))
        throw NonUnitLeadingTerm("pow needs 1 + O(z^{-1}) input");
    IntSeries r = int_zero(f.order());
    r.val = 0;
    r.c[0] = Cplx(1);
    CplxScratch sc;
    for (int m = 1; m <= f.order(); ++m) {
        Cplx acc;
        for (int i = 1; i <= m; ++i) {
            Cplx w = alpha * Real(i) - Cplx(Real(m - i));
            Cplx t = w * f.c[i];
            mul_acc(acc, t, r.c[m - i], sc);
        }
        r.c[m] = acc / Real(m);
    }
    return r;
}

IntSeries derivative(const IntSeries& f)
{
    IntSeries r = int_zero(f.order() + 1);
    for (int n = 1; n <= f.order(); ++n)
        r.c[n + 1] = f.c[n] * Real(-n);
    r.val = std::max(2, f.val + 1);
    refresh_val(r);
    return r;
}

FracSeries derivative(const FracSeries& f)
{
    FracSeries r;
    r.gamma = f.gamma + Cplx(1);
    r.c.resize(f.c.size());
    for (int n = 0; n <= f.order(); ++n)
        r.c[n] = -((f.gamma + Cplx(Real(n))) * f.c[n]);
    return r;
}

IntSeries compose_shift(const IntSeries& f, const Cplx& cshift)
{
    IntSeries r = int_zero(f.order());
    r.val = f.val;
    CplxScratch sc;
    for (int n = std::max(f.val, 0); n <= f.order(); ++n) {
        if (n == 0) {
            r.c[0] += f.c[0];
            continue;
        }
        Cplx t = f.c[n];
        r.c[n] += t;
        for (int j = 1; n + j <= f.order(); ++j) {
            // binom(-n, j) c^j  recurrence
            Cplx factor = cshift * (Cplx(Real(-n - j + 1)) / Real(j));
            Cplx nt;
            mul_set(nt, t, factor, sc);
            t = nt;
            r.c[n + j] += t;
        }
    }
    return r;
}

FracSeries compose_shift(const FracSeries& f, const Cplx& cshift)
{
    FracSeries r;
    r.gamma = f.gamma;
    r.c.assign(f.c.size(), Cplx());
    CplxScratch sc;
    for (int n = 0; n <= f.order(); ++n) {
        Cplx t = f.c[n];
        r.c[n] += t;
        for (int j = 1; n + j <= f.order(); ++j) {
            Cplx factor = cshift * ((-(f.gamma + Cplx(Real(n + j - 1)))) / Real(j));
            Cplx nt;
            mul_set(nt, t, factor, sc);
            t = nt;
            r.c[n + j] += t;
        }
    }
    return r;
}

FracSeries frac_from_int(const IntSeries& a, int base, const Cplx& extra)
{
    FracSeries r;
    r.gamma = extra + Cplx(Real(base));
    int ord = a.order() - base;
    r.c.assign(static_cast<size_t>(std::max(ord, -1)) + 1, Cplx());
    for (int n = 0; n <= ord; ++n)
        r.c[n] = a.c[n + base];
    return r;
}

FracSeries frac_from_int(const IntSeries& a, int base)
{
    return frac_from_int(a, base, Cplx(0));
}

FracSeries frac_embed(const IntSeries& a)
{
    return frac_from_int(a, 0);
}

IntSeries int_from_frac(const FracSeries& a)
{
    Real g = a.gamma.re;
    long gi = lround(to_double(g));
    if (abs(a.gamma - Cplx(Real(gi))) > tiny_rel() * (Real(1) + abs(a.gamma)) || gi < 0)
        throw InternalInconsistency("int_from_frac: gamma is not a nonnegative integer");
    IntSeries r = int_zero(static_cast<int>(gi) + a.order());
    for (int n = 0; n <= a.order(); ++n)
        r.c[n + gi] = a.c[n];
    r.val = static_cast<int>(gi);
    refresh_val(r);
    return r;
}

namespace {

void check_same_gamma(const FracSeries& a, const FracSeries& b)
{
    if (abs(a.gamma - b.gamma) > tiny_rel() * (Real(1) + abs(a.gamma)))
        throw InternalInconsistency("incompatible fractional grids");
}

} // namespace

FracSeries f_add(const FracSeries& a, const FracSeries& b)
{
    check_same_gamma(a, b);
    FracSeries r;
    r.gamma = a.gamma;
    int ord = std::min(a.order(), b.order());
    r.c.resize(static_cast<size_t>(ord) + 1);
    for (int n = 0; n <= ord; ++n)
        r.c[n] = a.c[n] + b.c[n];
    return r;
}

FracSeries f_sub(const FracSeries& a, const FracSeries& b)
{
    check_same_gamma(a, b);
    FracSeries r;
    r.gamma = a.gamma;
    int ord = std::min(a.order(), b.order());
    r.c.resize(static_cast<size_t>(ord) + 1);
    for (int n = 0; n <= ord; ++n)
        r.c[n] = a.c[n] - b.c[n];
    return r;
}

FracSeries f_scale(const FracSeries& a, const Cplx& s)
{
    FracSeries r = a;
    for (auto& x : r.c)
        x = x * s;
    return r;
}

FracSeries mul_int_frac(const IntSeries& a, const FracSeries& b, int cap)
{
    int ord = std::min(a.order(), b.order() + a.val);
    if (cap >= 0)
        ord = std::min(ord, cap);
    FracSeries r;
    r.gamma = b.gamma;
    r.c.assign(static_cast<size_t>(std::max(ord, 0)) + 1, Cplx());
    CplxScratch sc;
    for (int n = 0; n <= ord; ++n) {
        Cplx acc;
        int ilo = std::max(a.val, n - b.order());
        for (int i = ilo; i <= std::min(n, a.order()); ++i)
            mul_acc(acc, a.c[i], b.c[n - i], sc);
        r.c[n] = acc;
    }
    return r;
}

// ---------------------------------------------------------------------------

CidbCache::CidbCache(const IntSeries& b, int depth) : depth_(depth)
{
    if (b.val < 1)
        throw ValTooLow("composition id+b needs val(b) >= 1");
    if (b.order() < depth)
        throw TruncationOverflow("composition cache needs b expanded to the working depth");
    b_ = b;
    u_ = mul_z_pow(b_, 1);
    u_.c.resize(static_cast<size_t>(depth) + 1);
    IntSeries one_plus_u = u_;
    one_plus_u.c[0] = Cplx(1);
    one_plus_u.val = 0;
    IntSeries inv1 = inverse(one_plus_u);
    pw_.reserve(static_cast<size_t>(depth) + 1);
    pw_.push_back(int_one(depth));
    for (int n = 1; n <= depth; ++n)
        pw_.push_back(mul(pw_.back(), inv1, depth));
}

IntSeries CidbCache::apply(const IntSeries& f) const
{
    int ord = std::min(f.order(), depth_);
    IntSeries r = int_zero(ord);
    r.val = f.val;
    CplxScratch sc;
    for (int m = std::max(0, f.val); m <= ord; ++m) {
        Cplx acc;
        for (int n = std::max(0, f.val); n <= m; ++n)
            mul_acc(acc, f.c[n], pw_[n].c[m - n], sc);
        r.c[m] = acc;
    }
    return r;
}

FracSeries CidbCache::apply(const FracSeries& f, const IntSeries& W) const
{
    int ord = std::min(f.order(), depth_);
    FracSeries g;
    g.gamma = f.gamma;
    g.c.assign(static_cast<size_t>(ord) + 1, Cplx());
    CplxScratch sc;
    for (int m = 0; m <= ord; ++m) {
        Cplx acc;
        for (int n = 0; n <= m; ++n)
            mul_acc(acc, f.c[n], pw_[n].c[m - n], sc);
        g.c[m] = acc;
    }
    return mul_int_frac(W, g);
}

IntSeries CidbCache::pow_one_plus_u(const Cplx& alpha) const
{
    IntSeries one_plus_u = u_;
    one_plus_u.c[0] = Cplx(1);
    one_plus_u.val = 0;
    return pow_alpha(one_plus_u, alpha);
}

// ---------------------------------------------------------------------------

IntSeries op_E(const IntSeries& psi)
{
    if (psi.val < 2)
        throw ValTooLow("E needs val >= 2");
    int dp = psi.order();
    IntSeries r = int_zero(std::max(dp - 1, 0));
    r.val = std::max(1, psi.val - 1);
    std::vector<Cplx> adj(psi.c.begin(), psi.c.end());
    for (int m = 2; m <= dp; ++m) {
        int n = m - 1;
        Cplx an = adj[m] / Real(n);
        r.c[n] = an;
        // push a_n * binom(n+j-1, j) into rows n+j
        Real binom(n);
        for (int j = 2; n + j <= dp; ++j) {
            binom *= Real(n + j - 1);
            binom /= Real(j);
            adj[n + j] -= an * binom;
        }
    }
    refresh_val(r);
    return r;
}

FracSeries op_E_beta(const FracSeries& psi)
{
    FracSeries r;
    Cplx g = psi.gamma - Cplx(1);
    r.gamma = g;
    r.c.assign(psi.c.size(), Cplx());
    std::vector<Cplx> adj(psi.c.begin(), psi.c.end());
    Real guard = tiny_rel();
    for (int m = 0; m <= psi.order(); ++m) {
        Cplx div = g + Cplx(Real(m));
        if (abs(div) < guard * (Real(1) + abs(g)))
            throw ZeroDivisor("E_beta: gamma + n vanishes");
        Cplx an = adj[m] / div;
        r.c[m] = an;
        // rising-factorial pushes: R(g+m, j) = (g+m)(g+m+1)...(g+m+j-1)/j!
        Cplx rf = div;
        for (int j = 2; m + j - 1 <= psi.order(); ++j) {
            rf = rf * ((g + Cplx(Real(m + j - 1))) / Real(j));
            adj[m + j - 1] -= an * rf;
        }
    }
    return r;
}

IntSeries op_B_omega(const IntSeries& psi, const IntSeries& exp_mwbs,
                     const CidbCache& comp)
{
    IntSeries t = comp.apply(psi);
    t = mul(exp_mwbs, t);
    IntSeries r = sub(t, psi);
    int vexp = std::min(psi.val + 2, r.order() + 1);
    Real scale = coeff_scale(r);
    Real thresh = scale * tiny_rel();
    for (int n = 0; n < vexp && n <= r.order(); ++n) {
        if (abs(r.c[n]) > thresh)
            throw InternalInconsistency("B^omega lost the structural val gain");
        r.c[n] = Cplx();
    }
    r.val = vexp;
    refresh_val(r);
    return r;
}

FracSeries op_B_alpha(const FracSeries& phi, const IntSeries& c_alpha,
                      const IntSeries& W, const CidbCache& comp)
{
    FracSeries g = comp.apply(phi, W);
    FracSeries h = mul_int_frac(c_alpha, g);
    FracSeries r = f_sub(h, phi);
    Real scale = max(coeff_scale(r), coeff_scale(phi));
    if (abs(r.c[0]) > scale * tiny_rel())
        throw OrderGainViolated("B_alpha leading coefficient did not cancel");
    FracSeries out;
    out.gamma = phi.gamma + Cplx(1);
    out.c.assign(r.c.begin() + 1, r.c.end());
    if (out.c.empty())
        out.c.push_back(Cplx());
    return out;
}

Real coeff_scale(const IntSeries& a)
{
    Real m(0);
    for (const auto& x : a.c) {
        Real v = max(abs(x.re), abs(x.im));
        if (v > m)
            m = v;
    }
    return m;
}

Real coeff_scale(const FracSeries& a)
{
    Real m(0);
    for (const auto& x : a.c) {
        Real v = max(abs(x.re), abs(x.im));
        if (v > m)
            m = v;
    }
    return m;
}

} // namespace resurge
