#include <doctest.h>

#include "resurge/errors.hpp"
#include "resurge/germ.hpp"

using namespace resurge;

namespace {

double dabs(const Cplx& z) { return to_double(abs(z)); }

// Independent long-division oracle: the Laurent expansion of num/den in
// descending powers of w, returning the coefficient of w^{-n} for n = 1..D.
// Test-local synthetic division over an offset-indexed remainder array.
std::vector<Cplx> divide_at_infinity(const Poly& num, const Poly& den, int D)
{
    int dn = static_cast<int>(num.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    int lowest = -D - dd - 1;
    auto idx = [&](int deg) { return static_cast<size_t>(deg - lowest); };
    std::vector<Cplx> rem(idx(dn) + 1, Cplx());
    for (int i = 0; i <= dn; ++i)
        rem[idx(i)] = num[i];
    std::vector<Cplx> out(static_cast<size_t>(D) + 1, Cplx()); // out[n] ~ w^{-n}
    for (int k = dn - dd; k >= -D; --k) {
        Cplx q = rem[idx(k + dd)] / den[dd];
        for (int i = 0; i <= dd; ++i)
            rem[idx(k + i)] -= q * den[i];
        if (k <= -1)
            out[static_cast<size_t>(-k)] = q;
    }
    return out;
}

} // namespace

TEST_SUITE("germ")
{
    TEST_CASE("origin-chart conjugation: w + w^2 -> z^2/(z-1)")
    {
        PrecisionGuard g(160);
        GermSpec origin = GermSpec::polynomial_origin({Cplx(0), Cplx(1), Cplx(1)});
        GermSpec inf = normalize_to_infinity(origin);
        // expect num ~ z^2, den ~ z - 1 up to a common factor
        Cplx s = inf.num[2];
        CHECK(dabs(inf.num[2] / s - Cplx(1)) < 1e-40);
        CHECK(dabs(inf.num[1]) < 1e-40 * dabs(s));
        CHECK(dabs(inf.num[0]) < 1e-40 * dabs(s));
        CHECK(dabs(inf.den[1] / s - Cplx(1)) < 1e-40);
        CHECK(dabs(inf.den[0] / s + Cplx(1)) < 1e-40);
        // series match to order 20 against the preset
        IntSeries b1 = expand_b(inf, 20);
        IntSeries b2 = expand_b(GermSpec::preset("quad"), 20);
        for (int n = 0; n <= 20; ++n)
            CHECK(dabs(b1.c[n] - b2.c[n]) < 1e-40);
    }

    TEST_CASE("Moebius germ w/(1+w) -> exact translation")
    {
        PrecisionGuard g(160);
        GermSpec origin;
        origin.chart = GermSpec::Chart::origin;
        origin.num = {Cplx(0), Cplx(1)};
        origin.den = {Cplx(1), Cplx(1)};
        GermSpec inf = normalize_to_infinity(origin);
        IntSeries b = expand_b(inf, 16);
        for (int n = 0; n <= 16; ++n)
            CHECK(dabs(b.c[n]) < 1e-40);
    }

    TEST_CASE("infinity chart passes through unchanged")
    {
        PrecisionGuard g(96);
        GermSpec quad = GermSpec::preset("quad");
        GermSpec out = normalize_to_infinity(quad);
        CHECK(out.num.size() == quad.num.size());
        for (size_t i = 0; i < out.num.size(); ++i)
            CHECK(out.num[i] == quad.num[i]);
    }

    TEST_CASE("invalid germs are rejected")
    {
        PrecisionGuard g(96);
        // multiplier != 1
        GermSpec bad1 = GermSpec::polynomial_origin({Cplx(0), Cplx(2), Cplx(1)});
        CHECK_THROWS_AS(normalize_to_infinity(bad1), NotSimpleParabolic);
        // a2 = 0
        GermSpec bad2 = GermSpec::polynomial_origin({Cplx(0), Cplx(1), Cplx(0), Cplx(1)});
        CHECK_THROWS_AS(normalize_to_infinity(bad2), NotSimpleParabolic);
        // degree mismatch at infinity
        GermSpec bad3 = GermSpec::rational_infinity({Cplx(1), Cplx(0), Cplx(0), Cplx(1)},
                                                    {Cplx(1)});
        CHECK_THROWS_AS(normalize_to_infinity(bad3), NotRational);
        // not z + 1 + O(1/z)
        GermSpec bad4 = GermSpec::rational_infinity({Cplx(2), Cplx(1)}, {Cplx(1)});
        CHECK_THROWS_AS(normalize_to_infinity(bad4), NotSimpleParabolic);
    }

    TEST_CASE("expand_b against the long-division oracle")
    {
        PrecisionGuard g(160);
        for (const char* name : {"quad", "rho0"}) {
            GermSpec spec = GermSpec::preset(name);
            IntSeries b = expand_b(spec, 24);
            // oracle: expand f(w-1) - w directly
            Poly N = poly_shift(spec.num, Cplx(-1));
            Poly Dn = poly_shift(spec.den, Cplx(-1));
            Poly P(std::max(N.size(), Dn.size() + 1), Cplx());
            for (size_t i = 0; i < N.size(); ++i)
                P[i] += N[i];
            for (size_t i = 0; i < Dn.size(); ++i)
                P[i + 1] -= Dn[i];
            auto q = divide_at_infinity(P, Dn, 26);
            for (int n = 1; n <= 24; ++n)
                CHECK(dabs(b.c[n] - q[static_cast<size_t>(n)]) < 1e-40);
        }
    }

    TEST_CASE("expand_b closed forms and rho")
    {
        PrecisionGuard g(160);
        IntSeries bt = expand_b(GermSpec::preset("translation"), 12);
        for (int n = 0; n <= 12; ++n)
            CHECK(is_zero(bt.c[n]));
        CHECK(is_zero(rho_of(bt)));

        IntSeries bq = expand_b(GermSpec::preset("quad"), 12);
        // b = 1/(w-2): b_n = 2^{n-1}
        Real p(1);
        for (int n = 1; n <= 12; ++n) {
            CHECK(dabs(bq.c[n] - Cplx(p)) < 1e-40);
            p *= Real(2);
        }
        CHECK(dabs(rho_of(bq) + Cplx(1)) < 1e-40);

        IntSeries br = expand_b(GermSpec::preset("rho0"), 12);
        // b = (w-1)^{-2}: b_{n+2} = n+1
        CHECK(is_zero(br.c[1]));
        for (int n = 2; n <= 12; ++n)
            CHECK(dabs(br.c[n] - Cplx(Real(n - 1))) < 1e-40);
        CHECK(is_zero(rho_of(br)));
    }

    TEST_CASE("b_star: formal-series oracle to order 6")
    {
        PrecisionGuard g(160);
        GermData quad = make_germ_data(GermSpec::preset("quad"), 24);
        // b_* = 1/2 z^{-2} + 5/3 z^{-3} + O(z^{-4}), val >= 2
        CHECK(quad.b_star.val >= 2);
        CHECK(dabs(quad.b_star.c[2] - Cplx(0.5)) < 1e-40);
        CHECK(dabs(quad.b_star.c[3] - Cplx(Real(5) / 3)) < 1e-40);
        // independent oracle to order 6: b - log((1+u)/(1-z^{-1})) with rho=-1
        IntSeries u = mul_z_pow(quad.b, 1);
        u.c.resize(25);
        IntSeries opu = u;
        opu.c[0] = Cplx(1);
        opu.val = 0;
        IntSeries lg = log_series(opu);
        for (int n = 1; n <= 24; ++n)
            lg.c[n] += Cplx(Real(1) / Real(n));
        IntSeries oracle = sub(quad.b, lg);
        for (int n = 2; n <= 6; ++n)
            CHECK(dabs(quad.b_star.c[n] - oracle.c[n]) < 1e-40);

        GermData rho0 = make_germ_data(GermSpec::preset("rho0"), 24);
        for (int n = 0; n <= 24; ++n)
            CHECK(dabs(rho0.b_star.c[n] - rho0.b.c[n]) < 1e-40);

        GermData triv = make_germ_data(GermSpec::preset("translation"), 12);
        for (int n = 0; n <= 12; ++n)
            CHECK(is_zero(triv.b_star.c[n]));
    }

    TEST_CASE("certified radius covers the coefficient growth")
    {
        PrecisionGuard g(96);
        for (const char* name : {"quad", "rho0"}) {
            GermData d = make_germ_data(GermSpec::preset(name), 48);
            for (int n = 1; n <= 48; ++n)
                CHECK(to_double(abs(d.b.c[n])) <=
                      to_double(d.C0 * pow(d.radius_r, n)) * (1 + 1e-12));
        }
    }
}
