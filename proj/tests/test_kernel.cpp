#include <doctest.h>

#include "resurge/borel.hpp"
#include "resurge/fatou.hpp"
#include "resurge/kernel.hpp"

#include <random>

using namespace resurge;

namespace {

double dabs(const Cplx& z) { return to_double(abs(z)); }

} // namespace

TEST_SUITE("kernel")
{
    TEST_CASE("alpha = 0, b = 0: the kernel vanishes identically")
    {
        PrecisionGuard g(160);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("translation"), 24);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        KernelTable kt = build_kernel(a, 8.0, 8.0, 1e-24);
        Cplx v = kt.eval_direct(Cplx(Real(1), Real(2)), Cplx(Real(3), Real(1)),
                                Real(1e-24)).value;
        CHECK(dabs(v) < 1e-30);
    }

    TEST_CASE("diagonal closed form K(xi, xi) = alpha + rho xi and K(omega,omega)=0")
    {
        PrecisionGuard g(224);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("quad"), 120);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        KernelTable kt = build_kernel(a, 8.0, 8.0, 1e-30);
        std::mt19937 rng(23);
        std::uniform_real_distribution<double> U(-2.5, 2.5);
        for (int t = 0; t < 6; ++t) {
            Cplx xi(Real(U(rng)), Real(U(rng)));
            Cplx got = kt.eval_direct(xi, xi, Real(1e-30)).value;
            Cplx expect = a.alpha + ctx.data.rho * xi;
            CHECK(to_double(abs(got - expect)) < 1e-26);
        }
        Cplx womega = kt.eval_direct(a.omega, a.omega, Real(1e-30)).value;
        CHECK(dabs(womega) < 1e-26);
    }

    TEST_CASE("row factorization matches the direct two-sum evaluation")
    {
        PrecisionGuard g(224);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("quad"), 120);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        KernelTable kt = build_kernel(a, 8.0, 8.0, 1e-30);
        std::mt19937 rng(29);
        std::uniform_real_distribution<double> U(-2.0, 2.0);
        for (int t = 0; t < 5; ++t) {
            Cplx xi(Real(U(rng)), Real(U(rng)));
            Cplx zeta(Real(U(rng)), Real(U(rng)) + Real(3));
            EntireFn row = kt.row_at(xi);
            Cplx via_row = eval_entire(row, zeta - xi, Real(1e-28)).value;
            Cplx direct = kt.eval_direct(xi, zeta, Real(1e-28)).value;
            CHECK(to_double(abs(via_row - direct)) < 1e-24);
        }
    }

    TEST_CASE("two-sum table equals the three-sum form of the kernel")
    {
        PrecisionGuard g(224);
        // u_k = B(c_alpha b^k) must equal B(b^k) + c^_* * B(b^k)
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("quad"), 96);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        KernelTable kt = build_kernel(a, 7.0, 7.0, 1e-26);
        IntSeries cm1 = a.c_alpha;
        cm1.c[0] = Cplx();
        cm1.val = 1;
        EntireFn chat = borel_int(cm1, ctx.data.radius_r);
        IntSeries pk = ctx.data.b;
        for (int k = 1; k <= std::min(kt.k_max(), 6); ++k) {
            EntireFn bk = borel_int(pk, ctx.data.radius_r); // B(b^k) = b^{*k}
            auto cross = convolve_taylor(
                std::vector<Cplx>(chat.a.begin(), chat.a.end()),
                std::vector<Cplx>(bk.a.begin(), bk.a.end()), 40);
            for (int n = 0; n <= 40; ++n) {
                Cplx expect = (n < bk.terms() ? bk.a[n] : Cplx()) + cross[n];
                CHECK(dabs(kt.u[k].a[n] - expect) < 1e-36);
            }
            pk = mul(pk, ctx.data.b);
        }
    }

    TEST_CASE("rho = 0 germ: kernel reduces to the b-convolution sum")
    {
        PrecisionGuard g(192);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("rho0"), 80);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        KernelTable kt = build_kernel(a, 8.0, 8.0, 1e-26);
        // u_0 = B(c_alpha - 1) = 0 and u_k = B(b^k) when alpha = 0
        for (const auto& c : kt.u[0].a)
            CHECK(dabs(c) < 1e-40);
        IntSeries pk = ctx.data.b;
        for (int k = 1; k <= std::min(3, kt.k_max()); ++k) {
            EntireFn bk = borel_int(pk, ctx.data.radius_r);
            for (int n = 0; n < std::min(bk.terms(), kt.u[k].terms()); ++n)
                CHECK(dabs(kt.u[k].a[n] - bk.a[n]) < 1e-38);
            pk = mul(pk, ctx.data.b);
        }
    }

    TEST_CASE("kernel stays bounded on the compact")
    {
        PrecisionGuard g(192);
        FatouCtx ctx = make_fatou_ctx(GermSpec::preset("rho0"), 96);
        AlphaCtx a = make_alpha_ctx(ctx, 1);
        KernelTable kt = build_kernel(a, 8.0, 8.0, 1e-24);
        double biggest = 0;
        for (double t = 0.1; t < 1.0; t += 0.17) {
            Cplx xi(Real(t * 2), Real(t * 6));
            Cplx zeta(Real(1 - t), Real(6.8 * t));
            biggest = std::max(
                biggest, dabs(kt.eval_direct(xi, zeta, Real(1e-20)).value));
        }
        CHECK(biggest < 1e6);
        CHECK(std::isfinite(biggest));
    }
}
