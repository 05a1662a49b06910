#include <doctest.h>

#include "resurge/errors.hpp"
#include "resurge/fatou.hpp"

using namespace resurge;

namespace {

double dabs(const Cplx& z) { return to_double(abs(z)); }

} // namespace

TEST_SUITE("fatou")
{
    TEST_CASE("phi~ solves the Fatou equation; closed leading term")
    {
        PrecisionGuard g(192);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("quad"), 32);
        CHECK(dabs(ctx.phi_tilde.c[1] - Cplx(0.5)) < 1e-45);
        IntSeries res = fatou_residual(ctx, ctx.phi_tilde);
        for (int n = 0; n <= res.order(); ++n)
            CHECK(dabs(res.c[n]) < 1e-42);

        FatouCtx triv = make_fatou_ctx(GermSpec::preset("translation"), 16);
        for (int n = 0; n <= triv.phi_tilde.order(); ++n)
            CHECK(is_zero(triv.phi_tilde.c[n]));
    }

    TEST_CASE("split_at_N: minimal N and exact head+tail")
    {
        PrecisionGuard g(160);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("quad"), 24);
        // Re alpha = 0 -> N = 0, tail = phi
        SplitResult s0 = split_at_N(ctx.phi_tilde, Cplx(Real(0), Real(6.28)));
        CHECK(s0.N == 0);
        for (int n = 0; n <= s0.tail.order(); ++n)
            CHECK(s0.tail.c[n] == ctx.phi_tilde.c[n]);
        // Re alpha = -1.2 -> N = 3, beta = alpha + 3
        Cplx am(Real(-1.2), Real(0.4));
        SplitResult s3 = split_at_N(ctx.phi_tilde, am);
        CHECK(s3.N == 3);
        CHECK(dabs(s3.beta - (am + Cplx(3))) < 1e-40);
        for (int n = 1; n <= 3; ++n)
            CHECK(s3.head.c[n] == ctx.phi_tilde.c[n]);
        for (int n = 4; n <= 8; ++n)
            CHECK(s3.tail.c[n] == ctx.phi_tilde.c[n]);
        IntSeries sum = add(s3.head, s3.tail);
        for (int n = 0; n <= sum.order(); ++n)
            CHECK(sum.c[n] == ctx.phi_tilde.c[n]);
        CHECK_THROWS_AS(split_at_N(ctx.phi_tilde, am, 1), ValCheckFailed);
    }

    TEST_CASE("B^omega examples")
    {
        PrecisionGuard g(192);
        FatouCtx quad = make_fatou_ctx(GermSpec::preset("quad"), 24);
        Cplx omega(Real(0), two_pi());
        // B^omega 1 = e^{-omega b_*} - 1, leading term -omega/2 z^{-2}
        IntSeries b1 = apply_B_omega(quad, int_one(24), omega);
        CHECK(b1.val >= 2);
        CHECK(dabs(b1.c[2] + omega * Real(0.5)) < 1e-44);

        FatouCtx triv = make_fatou_ctx(GermSpec::preset("translation"), 16);
        IntSeries b0 = apply_B_omega(triv, int_one(16), omega);
        for (int n = 0; n <= b0.order(); ++n)
            CHECK(is_zero(b0.c[n]));
    }

    TEST_CASE("Psi sequence: val growth, leading term, exponential identity")
    {
        PrecisionGuard g(224);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("quad"), 64);
        Cplx omega(Real(0), two_pi());
        auto psis = psi_sequence(ctx, omega, 24);
        CHECK(psis[0].c[0] == Cplx(1));
        CHECK(dabs(psis[1].c[1] + omega * Real(0.5)) < 1e-48);
        for (int k = 0; k <= 24; ++k)
            CHECK(psis[k].val >= k);
        // sum_k Psi~_k = e^{-omega phi~} coefficient-wise through order 24
        IntSeries total = int_zero(24);
        for (const auto& p : psis)
            for (int n = 0; n <= 24 && n <= p.order(); ++n)
                total.c[n] += p.c[n];
        IntSeries target = exp_series(scale(ctx.phi_tilde, -omega));
        for (int n = 0; n <= 24; ++n) {
            Real s = max(abs(target.c[n]), Real(1));
            CHECK(to_double(abs(total.c[n] - target.c[n]) / s) < 1e-40);
        }
    }

    TEST_CASE("alpha context: b_N identities and b_alpha grid")
    {
        PrecisionGuard g(224);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("quad"), 48);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        CHECK(a.N == 0);
        CHECK(dabs(a.alpha - Cplx(Real(0), two_pi())) < 1e-50);
        // N = 0: b_N = b_*
        for (int n = 0; n <= a.b_N.order(); ++n)
            CHECK(dabs(a.b_N.c[n] - ctx.data.b_star.c[n]) < 1e-44);
        // paper identity: b_N = C_{id-1} tail - C_{id+b} tail
        IntSeries rhs = sub(compose_shift(a.tail, Cplx(-1)), ctx.comp.apply(a.tail));
        for (int n = 0; n <= std::min(a.b_N.order(), rhs.order()); ++n)
            CHECK(dabs(a.b_N.c[n] - rhs.c[n]) < 1e-40);
        CHECK(dabs(a.b_alpha.gamma - (a.beta + Cplx(2))) < 1e-50);
        // c_alpha leading coefficient is alpha
        CHECK(dabs(a.c_alpha.c[1] - a.alpha) < 1e-46);

        // alpha = 0 germ: b_alpha = b_N = b_*
        FatouCtx r0 = make_fatou_ctx(GermSpec::preset("rho0"), 32);
        AlphaCtx ar = make_alpha_ctx(r0, 1);
        for (int n = 0; n <= ar.b_alpha.order(); ++n)
            CHECK(dabs(ar.b_alpha.c[n] - r0.data.b_star.c[n + 2]) < 1e-44);
    }

    TEST_CASE("Phi sequence: grids, leading term, zero germ")
    {
        PrecisionGuard g(224);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("quad"), 48);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        auto phis = phi_sequence(a, 6);
        for (const auto& p : phis)
            CHECK(dabs(p.gamma - (a.beta + Cplx(1))) < 1e-48);
        // Phi~_0 leading coefficient = (leading of b_alpha)/(beta+1)
        CHECK(dabs(phis[0].c[0] - a.b_alpha.c[0] / (a.beta + Cplx(1))) < 1e-44);

        // formal eqBE compatibility through the exact telescoped form: for the
        // partial sum Phi^(K), C_{id-1}Phi^(K) - c_alpha C_{id+b}Phi^(K) - b_alpha
        // equals -B_alpha Phi~_K identically
        FracSeries Phi = phis[0];
        for (int k = 1; k <= 6; ++k)
            Phi = f_add(Phi, phis[k]);
        FracSeries lhs = compose_shift(Phi, Cplx(-1));
        FracSeries rhs = mul_int_frac(a.c_alpha, ctx.comp.apply(Phi, a.W));
        FracSeries expect = op_B_alpha(phis[6], a.c_alpha, a.W, ctx.comp);
        Real scale = coeff_scale(Phi) + Real(1);
        for (int n = 1; n <= 10; ++n) {
            Cplx resid = lhs.c[n] - rhs.c[n] - a.b_alpha.c[n - 1];
            CHECK(to_double(abs(resid + expect.c[n - 1]) / scale) < 1e-40);
        }

        FatouCtx triv = make_fatou_ctx(GermSpec::preset("translation"), 24);
        AlphaCtx at = make_alpha_ctx(triv, 1);
        auto zero_phis = phi_sequence(at, 4);
        for (const auto& p : zero_phis)
            for (const auto& c : p.c)
                CHECK(dabs(c) < 1e-40);
    }
}
