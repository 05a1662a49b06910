#include "resurge/horn.hpp"

#include "resurge/errors.hpp"

#include <cmath>

namespace resurge {

void OracleConfig::validate() const
{
    if (H < Real(2))
        throw ConfigError("oracle needs H >= 2");
    if (M < 4 || (M & (M - 1)) != 0)
        throw ConfigError("oracle sample count M must be a power of two >= 4");
    if (R_big < Real(4))
        throw ConfigError("R_big too small for the asymptotic regime");
}

HornCtx make_horn_ctx(const GermSpec& spec, int depth, const OracleConfig& cfg)
{
    cfg.validate();
    HornCtx ctx;
    GermSpec inf = normalize_to_infinity(spec);
    ctx.num = poly_trim(inf.num);
    ctx.den = poly_trim(inf.den);
    IntSeries b = expand_b(inf, depth);
    ctx.rho = rho_of(b);
    GermData data = make_germ_data(inf, depth);
    CidbCache comp(data.b, depth);
    ctx.phi = solve_phi_tilde(data, comp);
    ctx.cfg = cfg;
    if (cfg.R_big < data.radius_r * Real(4))
        throw ConfigError("R_big must be at least 4x the germ radius");
    return ctx;
}

Cplx iterate_once(const HornCtx& ctx, const Cplx& z)
{
    Cplx d = poly_eval(ctx.den, z);
    Real dscale(0);
    for (const auto& c : ctx.den)
        dscale = max(dscale, abs(c));
    if (abs(d) < dscale * Real(1e-12))
        throw OrbitEscapesDomain("orbit hit a pole of the rational germ");
    return poly_eval(ctx.num, z) / d;
}

namespace {

// Optimal truncation: sum phi~ at w, stopping at the smallest term.
Cplx phi_opt(const HornCtx& ctx, const Cplx& w, bool deriv)
{
    Cplx winv = Cplx(1) / w;
    Cplx pw = winv;
    Cplx acc;
    Real best(1e300);
    int cap = ctx.cfg.J_cap > 0 ? std::min(ctx.cfg.J_cap, ctx.phi.order())
                                : ctx.phi.order();
    for (int j = 1; j <= cap; ++j) {
        Cplx term = ctx.phi.c[j] * pw;
        Real mag = abs(term);
        if (!is_zero(ctx.phi.c[j])) {
            if (mag > best)
                break; // smallest-term rule
            best = mag;
        }
        acc += deriv ? term * (Real(-j) / w) : term;
        pw *= winv;
    }
    return acc;
}

Cplx asymptotic_v(const HornCtx& ctx, const Cplx& w, const Real& branch_lo)
{
    return w + ctx.rho * log_branch(w, branch_lo) + phi_opt(ctx, w, false);
}

} // namespace

Cplx fatou_plus(const HornCtx& ctx, const Cplx& z)
{
    Cplx w = z;
    long n = 0;
    while (w.re <= ctx.cfg.R_big) {
        w = iterate_once(ctx, w);
        if (++n > ctx.cfg.n_escape)
            throw NoAsymptoticRegime("forward orbit did not reach Re z > R_big");
        if (abs(w) > Real(1e40))
            throw OrbitEscapesDomain("forward orbit blew up");
    }
    Real mpi = -real_pi();
    return asymptotic_v(ctx, w, mpi) - Cplx(Real(n));
}

Cplx fatou_minus_inverse(const HornCtx& ctx, const Cplx& Z, int* steps_out)
{
    long n = std::lround(std::ceil(to_double(Z.re + ctx.cfg.R_big))) + 5;
    Cplx W = Z - Cplx(Real(n));
    // Newton on  w + rho Log_(0,2pi) w + phi~(w) - W = 0, seeded at W
    Cplx w = W;
    Real tol = pow(Real(2), -static_cast<long>(ctx.cfg.precision_bits) + 16) *
               (Real(1) + abs(W));
    bool done = false;
    int steps = 0;
    for (int it = 0; it < 24; ++it) {
        Cplx F = asymptotic_v(ctx, w, Real(0)) - W;
        if (abs(F) < tol) {
            done = true;
            break;
        }
        Cplx dF = Cplx(1) + ctx.rho / w + phi_opt(ctx, w, true);
        w -= F / dF;
        ++steps;
    }
    if (steps_out)
        *steps_out = steps;
    if (!done)
        throw NewtonDiverged("repelling-side Newton did not converge");
    for (long j = 0; j < n; ++j)
        w = iterate_once(ctx, w);
    return w;
}

Cplx horn_map(const HornCtx& ctx, HornSide side, const Cplx& Z)
{
    (void)side; // branch conventions are fixed; the side only moves Im Z
    return fatou_plus(ctx, fatou_minus_inverse(ctx, Z));
}

FourierResult horn_fourier(const HornCtx& ctx, HornSide side)
{
    const OracleConfig& cfg = ctx.cfg;
    cfg.validate();
    const int M = cfg.M;
    Real sgn = side == HornSide::up ? Real(1) : Real(-1);
    std::vector<Cplx> d(M);
    for (int j = 0; j < M; ++j) {
        Cplx Z(Real(j) / Real(M), sgn * cfg.H);
        d[j] = horn_map(ctx, side, Z) - Z;
    }
    // bin m of the DFT picks A_{+m} e^{-2 pi m H} (up) / A_{-m} e^{-2 pi m H} (low)
    FourierResult r;
    r.side = side;
    r.H = cfg.H;
    r.M = M;
    std::vector<Cplx> raw(M / 2 + 1);
    Real tp = two_pi();
    for (int m = 0; m <= M / 2; ++m) {
        Cplx acc;
        for (int j = 0; j < M; ++j) {
            Real ang = -sgn * tp * Real(m) * Real(j) / Real(M);
            acc += d[j] * polar(Real(1), ang);
        }
        raw[m] = acc / Real(M);
    }
    r.const_term = raw[0];
    Real noise(0);
    for (int m = M / 4 + 1; m <= M / 2; ++m)
        noise = max(noise, abs(raw[m]));
    r.residual_floor = noise;
    for (int m = 1; m <= M / 4; ++m)
        r.A[m] = raw[m] * exp(tp * Real(m) * cfg.H);
    return r;
}

} // namespace resurge
