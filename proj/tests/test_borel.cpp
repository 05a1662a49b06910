#include <doctest.h>

#include "resurge/borel.hpp"
#include "resurge/errors.hpp"
#include "resurge/gamma.hpp"
#include "resurge/germ.hpp"
#include "resurge/laplace.hpp"

#include <random>

using namespace resurge;

namespace {

double dabs(const Cplx& z) { return to_double(abs(z)); }

} // namespace

TEST_SUITE("borel")
{
    TEST_CASE("closed-form transforms")
    {
        PrecisionGuard g(192);
        // B(z^{-1}) = 1
        EntireFn one = borel_int(int_monomial(1, Cplx(1), 8), Real(1));
        CHECK(dabs(one.a[0] - Cplx(1)) < 1e-50);
        for (int n = 1; n < one.terms(); ++n)
            CHECK(is_zero(one.a[n]));
        // quad: B(b) = e^{2 zeta};  rho0: B(b) = zeta e^{zeta}
        GermData quad = make_germ_data(GermSpec::preset("quad"), 32);
        EntireFn f = borel_int(quad.b, quad.radius_r);
        Real fact(1), p2(1);
        for (int n = 0; n <= 24; ++n) {
            CHECK(to_double(abs(f.a[n] - Cplx(p2 / fact))) < 1e-40);
            fact *= Real(n + 1);
            p2 *= Real(2);
        }
    }

    TEST_CASE("fractional transform: B(z^{-alpha-1}) = zeta^alpha/Gamma(alpha+1)")
    {
        PrecisionGuard g(192);
        Cplx alpha(Real(0.6), Real(2.2));
        FracSeries f;
        f.gamma = alpha + Cplx(1);
        f.c.assign(6, Cplx());
        f.c[0] = Cplx(1);
        BranchedGerm bg = borel_frac(f, Real(1));
        CHECK(dabs(bg.gamma - alpha) < 1e-50);
        Cplx expect = Cplx(1) / gamma_complex(alpha + Cplx(1));
        CHECK(to_double(abs(bg.h.a[0] - expect) / abs(expect)) < 1e-50);
        // linearity on a random pair
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> U(-1, 1);
        FracSeries f2 = f;
        for (auto& c : f2.c)
            c = Cplx(U(rng), U(rng));
        BranchedGerm b2 = borel_frac(f2, Real(1));
        FracSeries fsum = f_add(f, f2);
        BranchedGerm bs = borel_frac(fsum, Real(1));
        for (int n = 0; n < bs.h.terms(); ++n)
            CHECK(dabs(bs.h.a[n] - (bg.h.a[n] + b2.h.a[n])) < 1e-45);
    }

    TEST_CASE("product rule: B(phi1 phi2) equals the Borel convolution")
    {
        PrecisionGuard g(192);
        // 1 * 1 = zeta, i.e. B(z^{-1})^{*2} = B(z^{-2})
        std::vector<Cplx> one = {Cplx(1)};
        auto conv = convolve_taylor(one, one, 4);
        CHECK(dabs(conv[0]) < 1e-50);
        CHECK(dabs(conv[1] - Cplx(1)) < 1e-50);
        CHECK(dabs(conv[2]) < 1e-50);
        // random truncated pair
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> U(-1, 1);
        IntSeries p = int_zero(16), q = int_zero(16);
        p.val = q.val = 1;
        for (int n = 1; n <= 16; ++n) {
            p.c[n] = Cplx(U(rng), U(rng));
            q.c[n] = Cplx(U(rng), U(rng));
        }
        EntireFn bp = borel_int(p, Real(2)), bq = borel_int(q, Real(2));
        std::vector<Cplx> lhs =
            convolve_taylor(std::vector<Cplx>(bp.a.begin(), bp.a.end()),
                            std::vector<Cplx>(bq.a.begin(), bq.a.end()), 14);
        EntireFn bpq = borel_int(mul(p, q), Real(2));
        for (int n = 0; n <= 14; ++n)
            CHECK(dabs(lhs[n] - bpq.a[n]) < 1e-44);
    }

    TEST_CASE("entire evaluation: closed form, certified error, budget errors")
    {
        PrecisionGuard g(224);
        GermData quad = make_germ_data(GermSpec::preset("quad"), 96);
        EntireFn f = borel_int(quad.b, quad.radius_r); // e^{2 zeta}
        Cplx z(Real(0), two_pi());
        EvalResult r = eval_entire(f, z, Real(1e-30));
        // e^{4 pi i} = 1
        CHECK(to_double(abs(r.value - Cplx(1))) < 1e-28);
        Cplx true_err = r.value - Cplx(1);
        CHECK(to_double(abs(true_err)) <= to_double(r.err));

        // InsufficientTerms when the table is too short for the target
        EntireFn shorty = f;
        shorty.a.resize(8);
        refresh_type_bound(shorty);
        CHECK_THROWS_AS(eval_entire(shorty, Cplx(Real(20)), Real(1e-30)),
                        InsufficientTerms);
        // PrecisionBudgetExceeded on drastic cancellation at low precision
        {
            PrecisionGuard g2(64);
            GermData q2 = make_germ_data(GermSpec::preset("quad"), 96);
            EntireFn f2 = borel_int(q2.b, q2.radius_r);
            CHECK_THROWS_AS(eval_entire(f2, Cplx(Real(-18)), Real(1e-18)),
                            PrecisionBudgetExceeded);
        }
    }

    TEST_CASE("branched evaluation: gamma = 0 reduction and winding law")
    {
        PrecisionGuard g(192);
        GermData quad = make_germ_data(GermSpec::preset("quad"), 64);
        BranchedGerm bg;
        bg.gamma = Cplx(Real(0.4), Real(-1.1));
        bg.h = borel_int(quad.b, quad.radius_r);
        Real r(2.5), th(0.7);
        EvalResult v0 = eval_branched(bg, r, th, Real(1e-30));
        EvalResult v1 = eval_branched(bg, r, th + two_pi(), Real(1e-30));
        Cplx ratio = v1.value / v0.value;
        Cplx expect = exp(Cplx(Real(0), two_pi()) * bg.gamma);
        CHECK(to_double(abs(ratio - expect) / abs(expect)) < 1e-40);

        BranchedGerm flat = bg;
        flat.gamma = Cplx(0);
        EvalResult ve = eval_branched(flat, r, th, Real(1e-30));
        EvalResult direct = eval_entire(bg.h, polar(r, th), Real(1e-30));
        CHECK(dabs(ve.value - direct.value) < 1e-40);
    }

    TEST_CASE("Laplace rays: 1/z, the Gamma integral, divergence guard")
    {
        PrecisionGuard g(224);
        EntireFn one;
        one.a = {Cplx(1)};
        one.R0 = Real(0.5);
        refresh_type_bound(one);
        Cplx z(Real(6), Real(1));
        EvalResult L1 = laplace_ray(one, Real(0), z, Real(1e-28));
        CHECK(to_double(abs(L1.value - Cplx(1) / z) * abs(z)) < 1e-26);

        // L^0(zeta^alpha/Gamma(alpha+1)) = z^{-alpha-1}
        Cplx alpha(Real(0.35), Real(0.8));
        BranchedGerm pw;
        pw.gamma = alpha;
        pw.h.a = {Cplx(1) / gamma_complex(alpha + Cplx(1))};
        pw.h.R0 = Real(0.5);
        refresh_type_bound(pw.h);
        EvalResult L2 = laplace_ray(pw, Real(0), z, Real(1e-28));
        Cplx expect = exp(-(alpha + Cplx(1)) * log(z));
        CHECK(to_double(abs(L2.value - expect) / abs(expect)) < 1e-24);

        GermData quad = make_germ_data(GermSpec::preset("quad"), 64);
        EntireFn f = borel_int(quad.b, quad.radius_r);
        CHECK_THROWS_AS(laplace_ray(f, Real(0), Cplx(Real(2.2)), Real(1e-20)),
                        DivergentLaplace);
    }
}
