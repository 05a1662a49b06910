#include "resurge/residua.hpp"

#include "resurge/errors.hpp"

#include <algorithm>
#include <cmath>

namespace resurge {

namespace {

// H[i] = G[i] * cot[i]; the integrand of the next level apart from the kernel
std::vector<Cplx> level_integrand(const QuadGrid& grid, const std::vector<Cplx>& G)
{
    std::vector<Cplx> H(G.size());
    CplxScratch sc;
    for (size_t i = 0; i < G.size(); ++i)
        mul_set(H[i], G[i], grid.cot[i], sc);
    return H;
}

} // namespace

std::vector<std::vector<Cplx>> volterra_levels(const QuadGrid& grid,
                                               const std::vector<Cplx>& G0,
                                               int k_max)
{
    const int n = grid.nodes();
    std::vector<std::vector<Cplx>> levels;
    levels.reserve(k_max + 1);
    levels.push_back(G0);
    CplxScratch sc;
    Cplx t;
    for (int j = 1; j <= k_max; ++j) {
        std::vector<Cplx> H = level_integrand(grid, levels.back());
        std::vector<Cplx> G(n);
        for (int i = 0; i < n; ++i) {
            const auto& col = grid.kcol[i];
            const int q = grid.panel_of[i];
            const int loc = grid.local_of[i];
            const int pstart = grid.panels[q].first_node;
            Cplx acc;
            // complete panels before panel q, in path order
            for (int l = 0; l < pstart; ++l) {
                mul_set(t, H[l], col[l], sc);
                mul_acc(acc, grid.wfull[l], t, sc);
            }
            // partial panel: integrate the interpolant of the integrand
            // through all nodes of the panel over [s0, s_i]
            const Real h2 = (grid.panels[q].s1 - grid.panels[q].s0) * Real(0.5);
            const Cplx pfac = grid.panels[q].dir * h2;
            Cplx part;
            for (int l = 0; l < grid.rule.p && pstart + l < static_cast<int>(col.size()); ++l) {
                mul_set(t, H[pstart + l], col[pstart + l], sc);
                part += t * grid.rule.partial[loc][l];
            }
            acc += pfac * part;
            G[i] = acc;
        }
        levels.push_back(std::move(G));
    }
    return levels;
}

std::vector<Cplx> volterra_ends(const QuadGrid& grid,
                                const std::vector<std::vector<Cplx>>& levels,
                                const std::vector<Cplx>& end_col, int k_max)
{
    std::vector<Cplx> ends(k_max + 1);
    CplxScratch sc;
    Cplx t;
    for (int j = 1; j <= k_max; ++j) {
        std::vector<Cplx> H = level_integrand(grid, levels[j - 1]);
        Cplx acc;
        for (int l = 0; l < grid.nodes(); ++l) {
            mul_set(t, H[l], end_col[l], sc);
            mul_acc(acc, grid.wfull[l], t, sc);
        }
        ends[j] = acc;
    }
    return ends;
}

std::vector<Cplx> volterra_ends_prefix(const QuadGrid& grid,
                                       const std::vector<std::vector<Cplx>>& levels,
                                       const std::vector<Cplx>& end_col, int k_max,
                                       const Real& s_cut)
{
    std::vector<Cplx> ends(k_max + 1);
    CplxScratch sc;
    Cplx t;
    for (int j = 1; j <= k_max; ++j) {
        std::vector<Cplx> H = level_integrand(grid, levels[j - 1]);
        Cplx acc;
        for (int l = 0; l < grid.nodes() && grid.s[l] <= s_cut; ++l) {
            mul_set(t, H[l], end_col[l], sc);
            mul_acc(acc, grid.wfull[l], t, sc);
        }
        ends[j] = acc;
    }
    return ends;
}

std::vector<Cplx> volterra_stream(const QuadGrid& grid, const std::vector<Cplx>& G0,
                                  const std::vector<Cplx>& end_col, int k_max)
{
    const int n = grid.nodes();
    std::vector<Cplx> ends(k_max + 1);
    std::vector<Cplx> prev = G0, next(n), H(n);
    CplxScratch sc;
    Cplx t;
    for (int j = 1; j <= k_max; ++j) {
        for (int i = 0; i < n; ++i)
            mul_set(H[i], prev[i], grid.cot[i], sc);
        Cplx eacc;
        for (int l = 0; l < n; ++l) {
            mul_set(t, H[l], end_col[l], sc);
            mul_acc(eacc, grid.wfull[l], t, sc);
        }
        ends[j] = eacc;
        if (j == k_max)
            break;
        for (int i = 0; i < n; ++i) {
            const auto& col = grid.kcol[i];
            const int q = grid.panel_of[i];
            const int loc = grid.local_of[i];
            const int pstart = grid.panels[q].first_node;
            Cplx acc;
            for (int l = 0; l < pstart; ++l) {
                mul_set(t, H[l], col[l], sc);
                mul_acc(acc, grid.wfull[l], t, sc);
            }
            const Real h2 = (grid.panels[q].s1 - grid.panels[q].s0) * Real(0.5);
            const Cplx pfac = grid.panels[q].dir * h2;
            Cplx part;
            for (int l = 0; l < grid.rule.p && pstart + l < static_cast<int>(col.size()); ++l) {
                mul_set(t, H[pstart + l], col[pstart + l], sc);
                part += t * grid.rule.partial[loc][l];
            }
            acc += pfac * part;
            next[i] = acc;
        }
        std::swap(prev, next);
    }
    return ends;
}


KernelTable kernel_for_path(const AlphaCtx& actx, const PathLog& path, double tol)
{
    double xi_max = 0;
    for (const auto& z : path.v)
        xi_max = std::max(xi_max, to_double(abs(z)));
    return build_kernel(actx, xi_max + 0.5, xi_max + 0.5, tol);
}

namespace {

struct VolterraRun {
    QuadGrid grid;
    std::vector<Cplx> S; // 2 pi i * ends, S[0] from the direct endpoint value
};

// One full sweep along Gamma~: grid, kernel caches, G0 = cont b^_alpha,
// levels and endpoint integrals against K(., omega).
VolterraRun run_gamma_tilde(const AlphaCtx& actx, const KernelTable& kt,
                            const PathLog& gt, const ResiduaConfig& cfg)
{
    const FatouCtx& ctx = *actx.base;
    VolterraRun run;
    run.grid = build_grid(gt, cfg.grid);
    attach_kernel(run.grid, kt, cfg.grid.eval_tol);

    BranchedGerm ba = borel_frac(actx.b_alpha, ctx.data.radius_r);
    Real tol(cfg.grid.eval_tol);
    std::vector<Cplx> G0(run.grid.nodes());
    for (int i = 0; i < run.grid.nodes(); ++i)
        G0[i] = eval_branched(ba, abs(run.grid.zeta[i]), run.grid.lifts[i], tol).value;

    std::vector<Cplx> end_col = kernel_column(run.grid, kt, gt.end_point(),
                                              cfg.grid.eval_tol);
    auto ends = volterra_stream(run.grid, G0, end_col, cfg.k_max);

    Cplx twopii(Real(0), two_pi());
    run.S.resize(cfg.k_max + 1);
    run.S[0] = twopii * eval_branched(ba, abs(gt.end_point()), gt.end_lift(), tol).value;
    for (int k = 1; k <= cfg.k_max; ++k)
        run.S[k] = twopii * ends[k];
    return run;
}

void fit_lambda(ResiduaResult& r)
{
    // least squares on log|S_k| over the last max(3, k_max/2) nonzero terms
    int kmax = static_cast<int>(r.S.size()) - 1;
    int want = std::max(3, kmax / 2);
    std::vector<std::pair<int, double>> pts;
    for (int k = kmax; k >= 0 && static_cast<int>(pts.size()) < want; --k) {
        double a = to_double(abs(r.S[k]));
        if (a > 0)
            pts.emplace_back(k, std::log(a));
    }
    if (pts.size() < 2) {
        r.lambda = Real(0);
        r.envelope_C = Real(0);
        return;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [k, y] : pts) {
        sx += k;
        sy += y;
        sxx += double(k) * k;
        sxy += k * y;
    }
    double nn = static_cast<double>(pts.size());
    double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    double inter = (sy - slope * sx) / nn;
    r.lambda = Real(std::exp(slope));
    // envelope constant covering every computed term
    double c = std::exp(inter);
    for (int k = 0; k <= kmax; ++k) {
        double a = to_double(abs(r.S[k]));
        if (a > 0)
            c = std::max(c, a / std::exp(slope * k));
    }
    r.envelope_C = Real(c * (1 + 1e-9));
}

} // namespace

ResiduaResult residua(const AlphaCtx& actx, const PathLog& Gamma,
                      const ResiduaConfig& cfg)
{
    const FatouCtx& ctx = *actx.base;
    PathLog gt = gamma_tilde(Gamma, actx.omega);

    KernelTable local_kt;
    const KernelTable* kt = cfg.kernel;
    if (!kt) {
        local_kt = kernel_for_path(actx, gt, cfg.kernel_tol);
        kt = &local_kt;
    }

    VolterraRun main = run_gamma_tilde(actx, *kt, gt, cfg);

    ResiduaResult r;
    r.S = main.S;
    r.partial_sums.resize(r.S.size());
    Cplx acc;
    for (size_t k = 0; k < r.S.size(); ++k) {
        acc += r.S[k];
        r.partial_sums[k] = acc;
    }
    r.m = actx.m;
    r.omega = actx.omega;
    r.alpha = actx.alpha;
    r.beta = actx.beta;
    r.N = actx.N;
    r.precision = precision_bits();
    r.grid_nodes = main.grid.nodes();
    r.grid_panels = static_cast<int>(main.grid.panels.size());
    r.horn = actx.m > 0 ? "low" : "up";
    fit_lambda(r);
    Real biggest(0);
    for (const auto& sk : r.S)
        biggest = max(biggest, abs(sk));
    if (r.lambda >= Real(1) && biggest > Real(1e-25))
        throw ConvergenceNotDetected("fitted lambda >= 1 on the residua sequence");

    if (cfg.error_estimates) {
        ResiduaConfig coarse = cfg;
        coarse.error_estimates = false;
        coarse.grid.panel_nodes = std::max(4, cfg.grid.panel_nodes - 4);
        VolterraRun companion = run_gamma_tilde(actx, *kt, gt, coarse);
        r.err_est.resize(r.S.size());
        for (size_t k = 0; k < r.S.size(); ++k)
            r.err_est[k] = abs(r.S[k] - companion.S[k]) * Real(2) +
                           Real(cfg.grid.eval_tol) * Real(16);
    }

    sum_residua(r, 0.0);
    ev_invariant(r, ctx.data.rho);
    return r;
}

Cplx sum_residua(ResiduaResult& res, double tol)
{
    int kmax = static_cast<int>(res.S.size()) - 1;
    Cplx acc;
    Real scale(0);
    int used = kmax;
    for (int k = 0; k <= kmax; ++k) {
        acc += res.S[k];
        scale = max(scale, abs(acc));
        // early stop: two consecutive terms below tol * |partial sum|
        if (tol > 0 && k >= 1 && k < kmax) {
            Real bar = Real(tol) * abs(acc);
            if (abs(res.S[k]) < bar && abs(res.S[k + 1]) < bar) {
                used = k;
                break;
            }
        }
    }
    if (res.lambda >= Real(1)) {
        Real biggest(0);
        for (const auto& s : res.S)
            biggest = max(biggest, abs(s));
        if (biggest > Real(1e-25) * (scale + Real(1)))
            throw TailNotBounded("fitted lambda >= 1, residua tail unbounded");
    }
    Real lam = min(res.lambda, Real(0.999));
    res.tail_error = res.envelope_C * pow(lam, used + 1) / (Real(1) - lam);
    res.sum = acc;
    return acc;
}

Cplx ev_invariant(ResiduaResult& res, const Cplx& rho)
{
    if (res.m > 0) {
        Real pi = real_pi();
        Cplx expo = Cplx(Real(-4) * pi * pi * Real(res.m)) * rho;
        res.A = res.sum * exp(expo);
    } else {
        res.A = -res.sum;
    }
    return res.A;
}

Cplx cont_phi_k(const AlphaCtx& actx, const PathLog& path, int k,
                const ResiduaConfig& cfg)
{
    const FatouCtx& ctx = *actx.base;
    Cplx zend = path.end_point();
    if (dist_to_lattice(zend) < Real(1e-12))
        throw EndpointOnLattice("cont Phi^_k needs an off-lattice endpoint");

    KernelTable local_kt;
    const KernelTable* ktp = cfg.kernel;
    if (!ktp) {
        local_kt = kernel_for_path(actx, path, cfg.kernel_tol);
        ktp = &local_kt;
    }
    const KernelTable& kt = *ktp;

    BranchedGerm ba = borel_frac(actx.b_alpha, ctx.data.radius_r);
    Real tol(cfg.grid.eval_tol);
    Cplx cot_end = Cplx(1) / (exp(zend) - Cplx(1));
    if (k == 0)
        return eval_branched(ba, abs(zend), path.end_lift(), tol).value * cot_end;

    QuadGrid grid = build_grid(path, cfg.grid);
    attach_kernel(grid, kt, cfg.grid.eval_tol);
    std::vector<Cplx> G0(grid.nodes());
    for (int i = 0; i < grid.nodes(); ++i)
        G0[i] = eval_branched(ba, abs(grid.zeta[i]), grid.lifts[i], tol).value;
    auto levels = volterra_levels(grid, G0, k);
    auto end_col = kernel_column(grid, kt, zend, cfg.grid.eval_tol);
    auto ends = volterra_ends(grid, levels, end_col, k);
    return ends[k] * cot_end;
}

PathLog monodromy_direct_path(const Cplx& omega, const Cplx& zeta0)
{
    std::vector<Cplx> v;
    v.push_back(Cplx());
    v.push_back(Cplx(1));
    v.push_back(omega + Cplx(1));
    v.push_back(omega + zeta0);
    PathOptions opt;
    opt.start_arg = Real(0);
    opt.relax = std::make_pair(omega, Real(2) * abs(zeta0));
    return make_polyline(std::move(v), opt);
}

PathLog monodromy_full_path(const Cplx& omega, const Cplx& zeta0)
{
    std::vector<Cplx> v;
    v.push_back(Cplx());
    v.push_back(Cplx(1));
    v.push_back(omega + Cplx(1));
    v.push_back(omega + zeta0);
    Real r = abs(zeta0);
    Real a0 = arg(zeta0);
    Real pi = real_pi();
    for (int j = 1; j <= 16; ++j) {
        Real ang = a0 + pi * Real(2 * j) / Real(16);
        v.push_back(omega + polar(r, ang));
    }
    PathOptions opt;
    opt.start_arg = Real(0);
    opt.relax = std::make_pair(omega, Real(2) * r);
    return make_polyline(std::move(v), opt);
}

VariationReport variation_at(const AlphaCtx& actx, int k, const Cplx& zeta0,
                             const ResiduaConfig& cfg)
{
    const FatouCtx& ctx = *actx.base;
    Real r = abs(zeta0);
    if (r < Real(64) * Real(cfg.grid.min_panel_rel))
        throw LoopTooClose("monodromy radius below the quadrature resolution");
    if (r >= real_pi())
        throw LoopTooClose("monodromy radius must stay below pi");

    PathLog full = monodromy_full_path(actx.omega, zeta0);
    Cplx target = actx.omega + zeta0;
    Real s_cut = full.cumlen[3]; // end of the direct approach, start of the loop

    VariationReport rep;
    rep.k = k;
    rep.zeta0 = zeta0;
    if (k == 0) {
        // Phi^_0 = b^_alpha/(e^zeta - 1): single-valued around omega (the
        // loop does not wind around the branch point 0), so the variation
        // vanishes identically.
        rep.measured = Cplx();
        return rep;
    }

    KernelTable local_kt;
    const KernelTable* ktp = cfg.kernel;
    if (!ktp) {
        local_kt = kernel_for_path(actx, full, cfg.kernel_tol);
        ktp = &local_kt;
    }
    const KernelTable& kt = *ktp;

    QuadGrid grid = build_grid(full, cfg.grid);
    attach_kernel(grid, kt, cfg.grid.eval_tol);
    BranchedGerm ba = borel_frac(actx.b_alpha, ctx.data.radius_r);
    Real tol(cfg.grid.eval_tol);
    std::vector<Cplx> G0(grid.nodes());
    for (int i = 0; i < grid.nodes(); ++i)
        G0[i] = eval_branched(ba, abs(grid.zeta[i]), grid.lifts[i], tol).value;
    auto levels = volterra_levels(grid, G0, k);
    auto end_col = kernel_column(grid, kt, target, cfg.grid.eval_tol);
    auto ends_full = volterra_ends(grid, levels, end_col, k);
    auto ends_direct = volterra_ends_prefix(grid, levels, end_col, k, s_cut);

    Cplx cot_end = Cplx(1) / (exp(target) - Cplx(1));
    rep.measured = (ends_full[k] - ends_direct[k]) * cot_end;
    return rep;
}

VariationReport bridge_check(const AlphaCtx& actx, const ResiduaResult& res,
                             int k, const Cplx& zeta0, const ResiduaConfig& cfg)
{
    VariationReport rep = variation_at(actx, k, zeta0, cfg);
    const FatouCtx& ctx = *actx.base;
    Cplx pred;
    if (k >= 1) {
        auto psis = psi_sequence(ctx, actx.omega, k);
        Real tol(cfg.grid.eval_tol);
        for (int k2 = 1; k2 <= k; ++k2) {
            EntireFn psihat = borel_int(psis[k2], ctx.data.radius_r);
            // B Psi~_{k2} converges on |zeta| < 2 pi; the type bound of the
            // polynomial truncation is what eval_entire certifies against
            Cplx val = eval_entire(psihat, zeta0, tol).value;
            pred += res.S[k - k2] * val;
        }
    }
    rep.predicted = pred;
    rep.abs_error = abs(rep.measured - rep.predicted);
    Real scale = max(abs(rep.measured), abs(rep.predicted));
    rep.rel_error = scale.is_zero() ? rep.abs_error : rep.abs_error / scale;
    return rep;
}

std::vector<ProfileSample> profile_phi_k(const AlphaCtx& actx, const PathLog& path,
                                         int k, const ResiduaConfig& cfg)
{
    const FatouCtx& ctx = *actx.base;
    KernelTable local_kt;
    const KernelTable* ktp = cfg.kernel;
    if (!ktp) {
        local_kt = kernel_for_path(actx, path, cfg.kernel_tol);
        ktp = &local_kt;
    }
    const KernelTable& kt = *ktp;
    QuadGrid grid = build_grid(path, cfg.grid);
    attach_kernel(grid, kt, cfg.grid.eval_tol);
    BranchedGerm ba = borel_frac(actx.b_alpha, ctx.data.radius_r);
    Real tol(cfg.grid.eval_tol);
    std::vector<Cplx> G0(grid.nodes());
    for (int i = 0; i < grid.nodes(); ++i)
        G0[i] = eval_branched(ba, abs(grid.zeta[i]), grid.lifts[i], tol).value;
    auto levels = volterra_levels(grid, G0, k);
    std::vector<ProfileSample> out(grid.nodes());
    CplxScratch sc;
    for (int i = 0; i < grid.nodes(); ++i) {
        out[i].s = grid.s[i];
        out[i].zeta = grid.zeta[i];
        mul_set(out[i].value, levels[k][i], grid.cot[i], sc);
    }
    return out;
}

} // namespace resurge
