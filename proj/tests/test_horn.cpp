#include <doctest.h>

#include "resurge/errors.hpp"
#include "resurge/horn.hpp"

#include <random>

using namespace resurge;

namespace {

double dabs(const Cplx& z) { return to_double(abs(z)); }

OracleConfig quick_cfg()
{
    OracleConfig cfg;
    cfg.precision_bits = 128;
    cfg.M = 32;
    return cfg;
}

} // namespace

TEST_SUITE("horn")
{
    TEST_CASE("translation germ: everything is the identity")
    {
        PrecisionGuard g(128);
        HornCtx ctx = make_horn_ctx(GermSpec::preset("translation"), 32, quick_cfg());
        Cplx z(Real(3), Real(-2));
        CHECK(dabs(fatou_plus(ctx, z) - z) < 1e-30);
        Cplx Z(Real(0.3), Real(-2.5));
        CHECK(dabs(fatou_minus_inverse(ctx, Z) - Z) < 1e-30);
        CHECK(dabs(horn_map(ctx, HornSide::low, Z) - Z) < 1e-30);
        FourierResult f = horn_fourier(ctx, HornSide::low);
        CHECK(dabs(f.const_term) < 1e-25);
        for (const auto& [m, A] : f.A) {
            (void)m;
            CHECK(dabs(A) < 1e-8); // amplified rounding only
        }
    }

    TEST_CASE("Abel equation residual on the attracting side")
    {
        PrecisionGuard g(128);
        for (const char* name : {"rho0", "quad"}) {
            HornCtx ctx = make_horn_ctx(GermSpec::preset(name), 64, quick_cfg());
            std::mt19937 rng(31);
            std::uniform_real_distribution<double> U(-3.0, 3.0);
            for (int t = 0; t < 5; ++t) {
                Cplx z(Real(4 + U(rng)), Real(U(rng) * 3));
                Cplx lhs = fatou_plus(ctx, iterate_once(ctx, z));
                Cplx rhs = fatou_plus(ctx, z) + Cplx(1);
                CHECK(dabs(lhs - rhs) < 1e-10);
            }
        }
    }

    TEST_CASE("repelling-side inverse: conjugacy and Newton step count")
    {
        PrecisionGuard g(128);
        HornCtx ctx = make_horn_ctx(GermSpec::preset("quad"), 64, quick_cfg());
        Cplx Z(Real(0.4), Real(-2.5));
        int steps = 0;
        Cplx w = fatou_minus_inverse(ctx, Z, &steps);
        CHECK(steps <= 8);
        // (v^-)^{-1}(Z+1) = f((v^-)^{-1}(Z))
        Cplx w1 = fatou_minus_inverse(ctx, Z + Cplx(1));
        Cplx fw = iterate_once(ctx, w);
        CHECK(to_double(abs(w1 - fw) / abs(fw)) < 1e-24);
    }

    TEST_CASE("horn map periodicity and Fourier stability")
    {
        PrecisionGuard g(128);
        OracleConfig cfg = quick_cfg();
        HornCtx ctx = make_horn_ctx(GermSpec::preset("rho0"), 72, cfg);
        Cplx Z(Real(0.2), Real(-2.5));
        Cplx h0 = horn_map(ctx, HornSide::low, Z);
        Cplx h1 = horn_map(ctx, HornSide::low, Z + Cplx(1));
        CHECK(to_double(abs(h1 - h0 - Cplx(1))) < 1e-20);

        // rho = 0: low-horn constant vanishes
        FourierResult low = horn_fourier(ctx, HornSide::low);
        CHECK(dabs(low.const_term) < 1e-10);

        // A_1 stable under doubling M
        OracleConfig cfg2 = cfg;
        cfg2.M = 64;
        HornCtx ctx2 = make_horn_ctx(GermSpec::preset("rho0"), 72, cfg2);
        FourierResult low2 = horn_fourier(ctx2, HornSide::low);
        CHECK(to_double(abs(low.A.at(1) - low2.A.at(1)) / abs(low2.A.at(1))) < 1e-8);

        // sampled deviation decays like e^{-2 pi H} in the strip
        OracleConfig cfg3 = cfg;
        cfg3.H = Real(3.0);
        HornCtx ctx3 = make_horn_ctx(GermSpec::preset("rho0"), 72, cfg3);
        Cplx d25 = horn_map(ctx, HornSide::low, Cplx(Real(0), -cfg.H)) -
                   Cplx(Real(0), -cfg.H);
        Cplx d30 = horn_map(ctx3, HornSide::low, Cplx(Real(0), -cfg3.H)) -
                   Cplx(Real(0), -cfg3.H);
        double ratio = dabs(d30) / dabs(d25);
        double expect = std::exp(-2 * 3.14159265358979 * 0.5);
        CHECK(ratio < expect * 2.0);
        CHECK(ratio > expect / 2.0);
    }

    TEST_CASE("configuration guards")
    {
        PrecisionGuard g(96);
        OracleConfig bad = quick_cfg();
        bad.H = Real(1);
        CHECK_THROWS_AS(bad.validate(), ConfigError);
        bad = quick_cfg();
        bad.M = 48;
        CHECK_THROWS_AS(bad.validate(), ConfigError);
        bad = quick_cfg();
        bad.R_big = Real(1);
        CHECK_THROWS_AS(make_horn_ctx(GermSpec::preset("rho0"), 32, bad), ConfigError);
    }
}
