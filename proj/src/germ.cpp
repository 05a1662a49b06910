#include "resurge/germ.hpp"

#include "resurge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace resurge {

namespace {

Real tiny_rel()
{
    return pow(Real(2), -static_cast<long>(precision_bits() / 2));
}

Real poly_scale(const Poly& p)
{
    Real m(0);
    for (const auto& c : p)
        m = max(m, max(abs(c.re), abs(c.im)));
    return m;
}

// Max modulus of the roots of p, via double-precision Durand-Kerner,
// inflated by 2% to absorb the root-finder tolerance.
double max_root_modulus(const Poly& p)
{
    int deg = poly_degree(p);
    if (deg <= 0)
        return 0.0;
    std::vector<std::complex<double>> a(deg + 1);
    for (int i = 0; i <= deg; ++i)
        a[i] = {to_double(p[i].re), to_double(p[i].im)};
    for (int i = 0; i <= deg; ++i)
        a[i] /= a[deg];
    std::vector<std::complex<double>> r(deg);
    std::complex<double> seed(0.4, 0.9);
    r[0] = seed;
    for (int i = 1; i < deg; ++i)
        r[i] = r[i - 1] * seed;
    for (int it = 0; it < 400; ++it) {
        double moved = 0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> v = a[deg];
            for (int k = deg - 1; k >= 0; --k)
                v = v * r[i] + a[k];
            std::complex<double> d = 1.0;
            for (int j = 0; j < deg; ++j)
                if (j != i)
                    d *= (r[i] - r[j]);
            if (std::abs(d) == 0)
                d = 1e-30;
            std::complex<double> step = v / d;
            r[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-13)
            break;
    }
    double m = 0;
    for (auto& z : r)
        m = std::max(m, std::abs(z));
    return m * 1.02;
}

void validate_infinity(const GermSpec& s)
{
    Poly num = poly_trim(s.num), den = poly_trim(s.den);
    int dn = poly_degree(num), dd = poly_degree(den);
    if (dd < 0 || dn < 0)
        throw NotRational("zero numerator or denominator");
    if (dn != dd + 1)
        throw NotRational("infinity chart needs deg num = deg den + 1");
    // f - z - 1 = (num - (z+1) den)/den must be O(z^{-1})
    Poly zp1den(den.size() + 1, Cplx());
    for (int i = 0; i <= dd; ++i) {
        zp1den[i + 1] += den[i];
        zp1den[i] += den[i];
    }
    Poly rem(std::max(num.size(), zp1den.size()), Cplx());
    for (size_t i = 0; i < num.size(); ++i)
        rem[i] += num[i];
    for (size_t i = 0; i < zp1den.size(); ++i)
        rem[i] -= zp1den[i];
    Real thresh = max(poly_scale(num), poly_scale(den)) * tiny_rel();
    for (int i = std::max(dd, 0); i < static_cast<int>(rem.size()); ++i)
        if (abs(rem[i]) > thresh)
            throw NotSimpleParabolic("infinity chart germ is not z + 1 + O(z^{-1})");
}

} // namespace

Cplx poly_eval(const Poly& p, const Cplx& z)
{
    Cplx v;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        v = v * z + p[i];
    return v;
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, Cplx());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

Poly poly_shift(const Poly& p, const Cplx& c)
{
    // synthetic division: repeated Horner
    Poly r = p;
    int d = static_cast<int>(p.size()) - 1;
    for (int k = 0; k < d; ++k)
        for (int i = d - 1; i >= k; --i)
            r[i] += r[i + 1] * c;
    return r;
}

int poly_degree(const Poly& p)
{
    Real thresh = poly_scale(p) * tiny_rel();
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (abs(p[i]) > thresh)
            return i;
    return -1;
}

Poly poly_trim(const Poly& p)
{
    int d = poly_degree(p);
    return Poly(p.begin(), p.begin() + (d + 1));
}

GermSpec GermSpec::rational_infinity(Poly num, Poly den)
{
    GermSpec s;
    s.chart = Chart::infinity;
    s.num = std::move(num);
    s.den = std::move(den);
    return s;
}

GermSpec GermSpec::polynomial_origin(Poly coeffs)
{
    GermSpec s;
    s.chart = Chart::origin;
    s.num = std::move(coeffs);
    s.den = {Cplx(1)};
    return s;
}

GermSpec GermSpec::preset(const std::string& name)
{
    if (name == "translation")
        return rational_infinity({Cplx(1), Cplx(1)}, {Cplx(1)});
    if (name == "quad") // z^2/(z-1)
        return rational_infinity({Cplx(0), Cplx(0), Cplx(1)}, {Cplx(-1), Cplx(1)});
    if (name == "rho0") // z + 1 + z^{-2} = (z^3 + z^2 + 1)/z^2
        return rational_infinity({Cplx(1), Cplx(0), Cplx(1), Cplx(1)},
                                 {Cplx(0), Cplx(0), Cplx(1)});
    throw ConfigError("unknown germ preset '" + name + "'");
}

GermSpec normalize_to_infinity(const GermSpec& spec)
{
    if (spec.chart == GermSpec::Chart::infinity) {
        validate_infinity(spec);
        return spec;
    }
    Poly num = poly_trim(spec.num), den = poly_trim(spec.den);
    if (poly_degree(den) < 0)
        throw NotRational("zero denominator");
    if (abs(poly_eval(den, Cplx(0))) <= poly_scale(den) * tiny_rel())
        throw NotRational("origin chart germ has a pole at 0");
    Real thresh = max(poly_scale(num), poly_scale(den)) * tiny_rel();
    Cplx d0 = den[0];
    if (num.empty() || abs(num[0]) > thresh)
        throw NotSimpleParabolic("g(0) != 0");
    Cplx mult = (num.size() > 1 ? num[1] : Cplx()) / d0;
    if (abs(mult - Cplx(1)) > tiny_rel() * Real(16))
        throw NotSimpleParabolic("multiplier is not 1");
    // a2 from the w^2 coefficient of num/den
    Cplx n2 = num.size() > 2 ? num[2] : Cplx();
    Cplx d1 = den.size() > 1 ? den[1] : Cplx();
    Cplx a2 = (n2 - d1 * mult) / d0;
    if (abs(a2) <= thresh)
        throw NotSimpleParabolic("a2 = 0 (not a simple parabolic point)");
    // conjugate by w = -1/(a2 z):  F(z) = -1/(a2 g(-1/(a2 z))).
    // Substituting and clearing (a2 z)^degmax turns p(w) into
    // p~(z) = sum_i p_i (-1)^i a2^{degmax-i} z^{degmax-i}, and
    // F = -den~ / (a2 num~).
    int degmax = std::max(poly_degree(num), poly_degree(den));
    auto flip = [&](const Poly& p) {
        Poly q(degmax + 1, Cplx());
        for (int i = 0; i <= poly_degree(p); ++i) {
            Cplx coef = p[i] * pow_int(a2, degmax - i);
            q[degmax - i] = (i % 2 == 0) ? coef : -coef;
        }
        return q;
    };
    Poly numf = flip(num), denf = flip(den);
    GermSpec out;
    out.chart = GermSpec::Chart::infinity;
    out.num = poly_trim(denf);
    for (auto& c : out.num)
        c = -c;
    for (auto& c : numf)
        c = c * a2;
    out.den = poly_trim(numf);
    validate_infinity(out);
    return out;
}

IntSeries expand_b(const GermSpec& spec_inf, int D)
{
    if (D < 2)
        throw TruncationOverflow("expand_b needs D >= 2");
    if (spec_inf.chart != GermSpec::Chart::infinity)
        throw NotRational("expand_b expects the infinity chart");
    Poly num = poly_trim(spec_inf.num), den = poly_trim(spec_inf.den);
    Poly N = poly_shift(num, Cplx(-1));   // num(w-1)
    Poly Dn = poly_shift(den, Cplx(-1));
    // P = N - w*Dn has degree <= deg Dn - 1 after the z+1 normalization... degree deg Dn
    Poly P(std::max(N.size(), Dn.size() + 1), Cplx());
    for (size_t i = 0; i < N.size(); ++i)
        P[i] += N[i];
    for (size_t i = 0; i < Dn.size(); ++i)
        P[i + 1] -= Dn[i];
    int q = poly_degree(Dn);
    // b = (P - Dn)/Dn ... note f(w-1) - w = (N - w Dn)/Dn; expand in w^{-1}:
    // sum_{k>=1} b_k w^{-k} with d_q b_k = p_{q-k} - sum_{j<k} d_{q-k+j} b_j.
    IntSeries b = int_zero(D);
    auto pc = [&](int i) { return (i >= 0 && i < static_cast<int>(P.size())) ? P[i] : Cplx(); };
    auto dc = [&](int i) { return (i >= 0 && i <= q) ? Dn[i] : Cplx(); };
    // constant term must vanish: p_q / d_q is the w^0 part of b
    Cplx b0 = pc(q) / dc(q);
    if (abs(b0) > (poly_scale(P) + Real(1)) * tiny_rel())
        throw NotSimpleParabolic("f(w-1) - w has a constant part");
    for (int k = 1; k <= D; ++k) {
        Cplx acc = pc(q - k);
        for (int j = 1; j < k; ++j)
            acc -= dc(q - k + j) * b.c[j];
        b.c[k] = acc / dc(q);
    }
    b.val = 1;
    refresh_val(b);
    return b;
}

Cplx rho_of(const IntSeries& b)
{
    if (b.val < 1)
        throw ValTooLow("b must have val >= 1");
    return -(b.order() >= 1 ? b.c[1] : Cplx());
}

IntSeries b_star_series(const IntSeries& b, const Cplx& rho)
{
    // log((1 + z^{-1} b)/(1 - z^{-1})) = log1p(u) + sum_{n>=1} z^{-n}/n
    int D = b.order();
    IntSeries u = mul_z_pow(b, 1);
    u.c.resize(static_cast<size_t>(D) + 1);
    IntSeries one_plus_u = u;
    one_plus_u.c[0] = Cplx(1);
    one_plus_u.val = 0;
    IntSeries lg = log_series(one_plus_u);
    for (int n = 1; n <= D; ++n)
        lg.c[n] += Cplx(Real(1) / Real(n));
    lg.val = 1;
    IntSeries bs = add(b, scale(lg, rho));
    // by construction the z^{-1} coefficient cancels (rho = -b_1)
    Real thresh = (coeff_scale(bs) + Real(1)) * tiny_rel();
    if (bs.order() >= 1 && abs(bs.c[1]) > thresh)
        throw InternalInconsistency("b_* has a surviving z^{-1} term");
    if (bs.order() >= 1)
        bs.c[1] = Cplx();
    if (!bs.c.empty())
        bs.c[0] = Cplx();
    bs.val = 2;
    refresh_val(bs);
    return bs;
}

Real germ_radius(const GermSpec& spec_inf, bool include_zeros)
{
    Poly num = poly_trim(spec_inf.num), den = poly_trim(spec_inf.den);
    Poly Dn = poly_shift(den, Cplx(-1));
    double m = max_root_modulus(Dn);
    if (include_zeros) {
        Poly N = poly_shift(num, Cplx(-1));
        m = std::max(m, max_root_modulus(N));
    }
    m = std::max(m, 1.0);
    return Real(m) * Real(1.0625);
}

GermData make_germ_data(const GermSpec& spec, int D)
{
    GermData g;
    g.spec = normalize_to_infinity(spec);
    g.D = D;
    g.b = expand_b(g.spec, D);
    g.rho = rho_of(g.b);
    g.b_star = b_star_series(g.b, g.rho);
    bool need_zeros = abs(g.rho) > tiny_rel();
    g.radius_r = germ_radius(g.spec, need_zeros);
    // C0 with |b_n| <= C0 R0^n over the computed range (sup attained at
    // finite n because |b_n|^{1/n} stays below R0)
    double logc = 0.0;
    double lr = std::log(to_double(g.radius_r));
    for (int n = 1; n <= g.b.order(); ++n) {
        double an = to_double(abs(g.b.c[n]));
        if (an > 0)
            logc = std::max(logc, std::log(an) - n * lr);
    }
    g.C0 = Real(std::exp(logc));
    return g;
}

std::string germ_key(const GermSpec& spec)
{
    std::ostringstream os;
    os << (spec.chart == GermSpec::Chart::infinity ? "inf:" : "orig:");
    os << "num[";
    for (const auto& c : spec.num)
        os << real_to_string(c.re) << "," << real_to_string(c.im) << ";";
    os << "]den[";
    for (const auto& c : spec.den)
        os << real_to_string(c.re) << "," << real_to_string(c.im) << ";";
    os << "]";
    return os.str();
}

} // namespace resurge
