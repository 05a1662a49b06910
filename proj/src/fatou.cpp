#include "resurge/fatou.hpp"

#include "resurge/borel.hpp"
#include "resurge/errors.hpp"

#include <cmath>

namespace resurge {

FatouCtx make_fatou_ctx(const GermSpec& spec, int depth)
{
    FatouCtx ctx;
    ctx.data = make_germ_data(spec, depth);
    ctx.comp = CidbCache(ctx.data.b, depth);
    ctx.phi_tilde = solve_phi_tilde(ctx.data, ctx.comp);
    return ctx;
}

IntSeries solve_phi_tilde(const GermData& data, const CidbCache& comp)
{
    // (C_{id-1} - C_{id+b}) phi = b_*, triangular with diagonal m-1 at row m:
    // row m couples a_n through binom(m-1, m-n) - pw[n][m-n].
    int D = data.D;
    const IntSeries& bs = data.b_star;
    IntSeries phi = int_zero(std::max(D - 1, 1));
    phi.val = 1;
    std::vector<Cplx> adj(bs.c.begin(), bs.c.end());
    for (int m = 2; m <= D; ++m) {
        int n = m - 1;
        Cplx an = adj[m] / Real(n);
        phi.c[n] = an;
        Real binom(n);
        for (int j = 2; n + j <= D; ++j) {
            binom *= Real(n + j - 1);
            binom /= Real(j);
            Cplx coupling = Cplx(binom) - comp.pw(n).c[j];
            adj[n + j] -= an * coupling;
        }
    }
    refresh_val(phi);
    return phi;
}

SplitResult split_at_N(const IntSeries& phi, const Cplx& alpha,
                       std::optional<int> N_override)
{
    SplitResult r;
    double re = to_double(alpha.re);
    int N_min = std::max(0, static_cast<int>(std::ceil(-2.0 * re)));
    r.N = N_override.value_or(N_min);
    if (r.N < N_min)
        throw ValCheckFailed("N below the admissible minimum");
    r.beta = alpha + Cplx(Real(r.N));
    r.head = int_zero(phi.order());
    r.tail = phi;
    r.head.val = r.N >= 1 ? 1 : phi.order() + 1;
    for (int n = 1; n <= r.N && n <= phi.order(); ++n) {
        r.head.c[n] = phi.c[n];
        r.tail.c[n] = Cplx();
    }
    r.tail.val = std::max(phi.val, r.N + 1);
    refresh_val(r.head);
    refresh_val(r.tail);
    return r;
}

std::vector<IntSeries> psi_sequence(const FatouCtx& ctx, const Cplx& omega, int k_max)
{
    if (k_max < 1)
        throw ValCheckFailed("psi_sequence needs k_max >= 1");
    std::vector<IntSeries> out;
    out.reserve(k_max + 1);
    out.push_back(int_one(ctx.depth()));
    IntSeries exp_mwbs = exp_series(scale(ctx.data.b_star, -omega));
    for (int k = 1; k <= k_max; ++k) {
        IntSeries t = op_B_omega(out.back(), exp_mwbs, ctx.comp);
        out.push_back(op_E(t));
    }
    return out;
}

AlphaCtx make_alpha_ctx(const FatouCtx& ctx, int m, std::optional<int> N_override)
{
    if (m == 0)
        throw ValCheckFailed("m must be a nonzero integer");
    AlphaCtx a;
    a.base = &ctx;
    a.m = m;
    a.omega = Cplx(Real(0), two_pi() * Real(m));
    a.alpha = -(ctx.data.rho * a.omega);
    SplitResult sp = split_at_N(ctx.phi_tilde, a.alpha, N_override);
    a.N = sp.N;
    a.beta = sp.beta;
    a.head = sp.head;
    a.tail = sp.tail;

    // b_N = b_* - C_{id-1} head + C_{id+b} head
    IntSeries ch = compose_shift(a.head, Cplx(-1));
    IntSeries cb = ctx.comp.apply(a.head);
    a.b_N = add(sub(ctx.data.b_star, ch), cb);
    // structural val >= N+2
    Real thresh = (coeff_scale(a.b_N) + Real(1)) *
                  pow(Real(2), -static_cast<long>(precision_bits() / 2));
    for (int n = 0; n < a.N + 2 && n <= a.b_N.order(); ++n) {
        if (abs(a.b_N.c[n]) > thresh)
            throw ValCheckFailed("b_N is not O(z^{-N-2})");
        a.b_N.c[n] = Cplx();
    }
    a.b_N.val = a.N + 2;
    refresh_val(a.b_N);

    IntSeries one_minus = int_one(ctx.depth());
    one_minus.c[1] = Cplx(-1);
    a.cprime = mul(pow_alpha(one_minus, -a.alpha), a.b_N);
    a.b_alpha = frac_from_int(a.cprime, a.N + 2, a.alpha); // gamma = beta + 2
    a.c_alpha = mul(ctx.comp.pow_one_plus_u(a.alpha), pow_alpha(one_minus, -a.alpha));
    a.W = ctx.comp.pow_one_plus_u(-(a.beta + Cplx(1)));
    return a;
}

std::vector<FracSeries> phi_sequence(const AlphaCtx& actx, int k_max)
{
    std::vector<FracSeries> out;
    out.reserve(k_max + 1);
    out.push_back(op_E_beta(actx.b_alpha));
    for (int k = 1; k <= k_max; ++k) {
        FracSeries t = op_B_alpha(out.back(), actx.c_alpha, actx.W, actx.base->comp);
        out.push_back(op_E_beta(t));
    }
    return out;
}

IntSeries apply_B_omega(const FatouCtx& ctx, const IntSeries& psi, const Cplx& omega)
{
    IntSeries exp_mwbs = exp_series(scale(ctx.data.b_star, -omega));
    return op_B_omega(psi, exp_mwbs, ctx.comp);
}

IntSeries fatou_residual(const FatouCtx& ctx, const IntSeries& phi)
{
    IntSeries lhs = sub(compose_shift(phi, Cplx(-1)), ctx.comp.apply(phi));
    IntSeries bs = ctx.data.b_star;
    bs.c.resize(std::min(bs.c.size(), lhs.c.size()));
    lhs.c.resize(bs.c.size());
    return sub(lhs, bs);
}

RunPlan plan_run(const GermSpec& spec, int abs_m_max, int k_max, int user_D,
                 unsigned user_precision_bits)
{
    GermSpec inf = normalize_to_infinity(spec);
    IntSeries b = expand_b(inf, 8);
    bool need_zeros = !is_zero(rho_of(b));
    double r0 = to_double(germ_radius(inf, need_zeros));
    RunPlan plan;
    plan.zeta_max = 2 * 3.14159265358979 * std::max(abs_m_max, 1) + 2.0;
    double x = r0 * plan.zeta_max;
    unsigned reserve = static_cast<unsigned>(std::ceil(x * 1.4427)) + 32;
    plan.precision = std::max(user_precision_bits + reserve, 64u);
    double log_tol = -0.3466 * plan.precision; // certify tails to ~2^{-P/2}
    int terms = required_terms(x, 0.0, log_tol);
    plan.depth = std::max(user_D, terms + 16) + 2 * k_max + 8;
    return plan;
}

} // namespace resurge
