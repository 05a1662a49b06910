#include <doctest.h>

#include "resurge/errors.hpp"
#include "resurge/fatou.hpp"
#include "resurge/residua.hpp"

#include <complex>
#include <vector>

using namespace resurge;

namespace {

double dabs(const Cplx& z) { return to_double(abs(z)); }

ResiduaConfig coarse_cfg(int k_max)
{
    ResiduaConfig cfg;
    cfg.k_max = k_max;
    cfg.grid.panel_nodes = 8;
    cfg.grid.min_panel_rel = 1e-6;
    cfg.grid.eval_tol = 1e-24;
    cfg.kernel_tol = 1e-24;
    return cfg;
}

// ---------------------------------------------------------------------------
// Brute-force double-precision oracle for the rho0 germ (alpha = 0):
//   S_1 = 2 pi i  int   b^(x1) K(x1, w)/(e^{x1}-1) dx1
//   S_2 = 2 pi i  iint  b^(x1) K(x1,x2) K(x2,w)/((e^{x1}-1)(e^{x2}-1)),
// with b^ = zeta e^zeta closed form and K built from the three-sum shape
// K(xi,zeta) = sum_k ((-xi)^k/k!) Bborel(b^k)(zeta-xi), all in plain doubles
// over a smootherstep-graded trapezoid on the simplex.
// ---------------------------------------------------------------------------

using CD = std::complex<double>;

struct OracleRho0 {
    std::vector<std::vector<CD>> bhat_k; // Taylor coefficients of B(b^k)
    int K, T;

    OracleRho0(int K_, int T_) : K(K_), T(T_)
    {
        // b_n = n-1 for n >= 2 (rho0 germ), series products in double
        std::vector<CD> b(T + 2, 0.0);
        for (int n = 2; n <= T + 1; ++n)
            b[n] = double(n - 1);
        std::vector<std::vector<CD>> pk(K + 1);
        pk[1] = b;
        for (int k = 2; k <= K; ++k) {
            pk[k].assign(T + 2, 0.0);
            for (int i = 0; i <= T + 1; ++i)
                for (int j = 0; i + j <= T + 1; ++j)
                    pk[k][i + j] += pk[k - 1][i] * b[j];
        }
        bhat_k.assign(K + 1, {});
        for (int k = 1; k <= K; ++k) {
            bhat_k[k].assign(T, 0.0);
            double fact = 1;
            for (int n = 0; n < T; ++n) {
                bhat_k[k][n] = pk[k][n + 1] / fact;
                fact *= (n + 1);
            }
        }
    }

    CD kernel(CD xi, CD zeta) const
    {
        CD w = zeta - xi;
        CD acc = 0.0;
        CD t = 1.0;
        for (int k = 1; k <= K; ++k) {
            t *= -xi / double(k);
            CD h = 0.0;
            for (int n = T - 1; n >= 0; --n)
                h = h * w + bhat_k[k][n];
            acc += t * h;
        }
        return acc;
    }

    static CD bhat(CD z) { return z * std::exp(z); }
    static CD cot(CD z) { return 1.0 / (std::exp(z) - 1.0); }
};

// Gamma~ for m = 1 in arclength with a smootherstep clustering map.
struct OraclePath {
    double L1 = 1.0, L2 = 2 * 3.141592653589793238, L3 = 1.0;
    double total() const { return L1 + L2 + L3; }
    CD at(double s) const
    {
        const double tp = 2 * 3.141592653589793238;
        if (s <= L1)
            return CD(s, 0);
        if (s <= L1 + L2)
            return CD(1, s - L1);
        return CD(1 - (s - L1 - L2), tp);
    }
    // graded parameter map with vanishing derivative at both endpoints
    double map(double t) const { return total() * t * t * (3 - 2 * t); }
    double dmap(double t) const { return total() * 6 * t * (1 - t); }
};

} // namespace

TEST_SUITE("residua")
{
    TEST_CASE("zero germ: every residuum vanishes")
    {
        PrecisionGuard g(160);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("translation"), 32);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        ResiduaResult r = residua(a, make_path_gamma_m(1), coarse_cfg(4));
        for (const auto& s : r.S)
            CHECK(dabs(s) < 1e-20);
        CHECK(dabs(r.A) < 1e-20);
    }

    TEST_CASE("closed form S_0 = -4 pi^2 and the brute-force S_1, S_2")
    {
        PrecisionGuard g(208);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("rho0"), 100);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        ResiduaConfig cfg = coarse_cfg(2);
        cfg.grid.panel_nodes = 12;
        cfg.grid.eval_tol = 1e-30;
        cfg.kernel_tol = 1e-30;
        ResiduaResult r = residua(a, make_path_gamma_m(1), cfg);

        Real pi = real_pi();
        CHECK(to_double(abs(r.S[0] + Cplx(Real(4) * pi * pi)) / (Real(4) * pi * pi)) <
              1e-10);

        // brute force at low accuracy
        OracleRho0 orc(26, 60);
        OraclePath path;
        const double tp = 2 * 3.141592653589793238;
        const CD omega(0, tp);
        const CD twopii(0, tp);

        // the graded map has dmap = 0 at both ends, where the raw factors
        // hit the removable 0 * inf at the lattice endpoints: skip them
        int n1 = 4000;
        CD s1 = 0.0;
        for (int i = 1; i < n1; ++i) {
            double t = double(i) / n1;
            double s = path.map(t);
            CD x = path.at(s);
            CD dir = s <= path.L1 ? CD(1, 0)
                                  : (s <= path.L1 + path.L2 ? CD(0, 1) : CD(-1, 0));
            s1 += OracleRho0::bhat(x) * orc.kernel(x, omega) * OracleRho0::cot(x) *
                  dir * (path.dmap(t) / n1);
        }
        s1 *= twopii;
        CHECK(std::abs(s1 - CD(to_double(r.S[1].re), to_double(r.S[1].im))) /
                  std::abs(s1) <
              1e-3);

        int n2 = 360;
        CD s2 = 0.0;
        std::vector<CD> xs(n2 + 1), g0(n2 + 1), ct(n2 + 1), dirw(n2 + 1);
        for (int i = 1; i < n2; ++i) {
            double t = double(i) / n2;
            double s = path.map(t);
            xs[i] = path.at(s);
            g0[i] = OracleRho0::bhat(xs[i]) * OracleRho0::cot(xs[i]);
            CD dir = s <= path.L1 ? CD(1, 0)
                                  : (s <= path.L1 + path.L2 ? CD(0, 1) : CD(-1, 0));
            dirw[i] = dir * path.dmap(t) / n2;
            ct[i] = OracleRho0::cot(xs[i]);
        }
        for (int i = 1; i < n2; ++i) {
            CD inner = 0.0;
            for (int j = i; j < n2; ++j) {
                double wj = (j == i) ? 0.5 : 1.0;
                inner += wj * orc.kernel(xs[i], xs[j]) * ct[j] *
                         orc.kernel(xs[j], omega) * dirw[j];
            }
            s2 += g0[i] * inner * dirw[i];
        }
        s2 *= twopii;
        CHECK(std::abs(s2 - CD(to_double(r.S[2].re), to_double(r.S[2].im))) /
                  std::abs(s2) <
              1e-3);
    }

    TEST_CASE("sum_residua on synthetic geometric data")
    {
        PrecisionGuard g(128);
        ResiduaResult r;
        r.m = 1;
        Cplx acc;
        for (int k = 0; k <= 12; ++k) {
            r.S.push_back(Cplx(pow(Real(0.3), k)));
            acc += r.S.back();
            r.partial_sums.push_back(acc);
        }
        r.lambda = Real(0.3);
        r.envelope_C = Real(1);
        Cplx sum = sum_residua(r, 0.0);
        Real expect = (Real(1) - pow(Real(0.3), 13)) / Real(0.7);
        CHECK(to_double(abs(sum - Cplx(expect))) < 1e-30);
        Real missing = pow(Real(0.3), 13) / Real(0.7);
        CHECK(r.tail_error >= missing);
        CHECK(r.tail_error < missing * Real(4));

        ResiduaResult bad = r;
        bad.lambda = Real(1.2);
        CHECK_THROWS_AS(sum_residua(bad, 0.0), TailNotBounded);
    }

    TEST_CASE("ev_invariant applies the theorem's mapping")
    {
        PrecisionGuard g(160);
        ResiduaResult r;
        r.m = 1;
        r.sum = Cplx(Real(2), Real(1));
        Cplx rho(-1);
        Cplx A = ev_invariant(r, rho);
        Real pi = real_pi();
        Cplx expect = r.sum * exp(Cplx(Real(4) * pi * pi));
        CHECK(to_double(abs(A - expect) / abs(expect)) < 1e-40);
        CHECK(r.horn.empty() || r.horn == "low");

        ResiduaResult rm;
        rm.m = -2;
        rm.sum = Cplx(Real(3), Real(-4));
        CHECK(dabs(ev_invariant(rm, rho) + rm.sum) < 1e-40);
    }

    TEST_CASE("cont Phi^_k inside the disk matches the formal Taylor route")
    {
        PrecisionGuard g(208);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("quad"), 110);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        auto phis = phi_sequence(a, 2);
        Cplx zeta0 = polar(Real(0.8), Real(0.3));
        PathOptions opt;
        opt.start_arg = Real(0.3);
        PathLog to_z0 = make_polyline({Cplx(), zeta0}, opt);
        ResiduaConfig cfg = coarse_cfg(2);
        cfg.grid.panel_nodes = 12;
        cfg.grid.eval_tol = 1e-30;
        cfg.kernel_tol = 1e-30;
        for (int k = 0; k <= 2; ++k) {
            Cplx via_path = cont_phi_k(a, to_z0, k, cfg);
            BranchedGerm taylor = borel_frac(phis[k], ctx.data.radius_r);
            Cplx via_series =
                eval_branched(taylor, Real(0.8), Real(0.3), Real(1e-30)).value;
            CHECK(to_double(abs(via_path - via_series) / abs(via_series)) < 1e-8);
        }
    }

    TEST_CASE("pole-limit consistency near omega")
    {
        PrecisionGuard g(208);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("rho0"), 100);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        ResiduaConfig cfg = coarse_cfg(2);
        cfg.grid.panel_nodes = 12;
        cfg.grid.eval_tol = 1e-30;
        cfg.kernel_tol = 1e-30;
        ResiduaResult r = residua(a, make_path_gamma_m(1), cfg);
        Cplx twopii(Real(0), two_pi());
        for (int k = 0; k <= 2; ++k) {
            double prev_err = 1e9;
            for (double delta : {1e-2, 1e-4}) {
                std::vector<Cplx> v = {Cplx(), Cplx(1), a.omega + Cplx(1),
                                       a.omega + Cplx(Real(delta))};
                PathOptions opt;
                opt.relax = std::make_pair(a.omega, Real(0.25));
                PathLog p = make_polyline(std::move(v), opt);
                Cplx val = cont_phi_k(a, p, k, cfg);
                Cplx lim = val * (exp(a.omega + Cplx(Real(delta))) - Cplx(1));
                double err = to_double(abs(lim - r.S[k] / twopii) /
                                       abs(r.S[k] / twopii));
                CHECK(err < prev_err);
                prev_err = err;
            }
            CHECK(prev_err < 0.05);
        }
    }

    TEST_CASE("guards: lattice endpoints and tiny loops")
    {
        PrecisionGuard g(160);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("rho0"), 48);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        ResiduaConfig cfg = coarse_cfg(1);
        PathLog gt = gamma_tilde(make_path_gamma_m(1), a.omega);
        CHECK_THROWS_AS(cont_phi_k(a, gt, 1, cfg), EndpointOnLattice);
        CHECK_THROWS_AS(variation_at(a, 1, Cplx(Real(1e-9)), cfg), LoopTooClose);
        CHECK_THROWS_AS(variation_at(a, 1, Cplx(Real(3.2)), cfg), LoopTooClose);
    }
}
