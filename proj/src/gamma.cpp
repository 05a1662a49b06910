#include "resurge/gamma.hpp"

#include "resurge/errors.hpp"

#include <cmath>

namespace resurge {

namespace {

// Spouge coefficients for the current precision, cached per thread.
struct SpougeTable {
    unsigned bits = 0;
    unsigned a = 0;
    std::vector<Real> c;
};

thread_local SpougeTable spouge_cache;

void build_spouge(SpougeTable& t)
{
    unsigned bits = precision_bits();
    // relative error ~ a^{-1/2} (2 pi)^{-(a+1/2)}
    unsigned a = static_cast<unsigned>(std::ceil((bits + 16) * 0.37725)) + 3;
    t.bits = bits;
    t.a = a;
    t.c.assign(a, Real(0));
    Real e = exp(Real(1));
    // c_k = (-1)^{k-1} (a-k)^{k-1/2} e^{a-k} / (k-1)!
    Real fact(1);
    for (unsigned k = 1; k < a; ++k) {
        Real ak = Real(static_cast<long>(a - k));
        Real v = exp((Real(static_cast<long>(k)) - Real(0.5)) * log(ak) + ak) / fact;
        t.c[k] = (k % 2 == 1) ? v : -v;
        fact *= static_cast<long>(k);
    }
}

Cplx spouge_gamma(const Cplx& s)
{
    SpougeTable& t = spouge_cache;
    if (t.bits != precision_bits())
        build_spouge(t);
    const unsigned a = t.a;
    Real sqrt2pi = sqrt(two_pi());
    Cplx z = s - Cplx(1);
    Cplx acc(sqrt2pi);
    for (unsigned k = 1; k < a; ++k)
        acc += Cplx(t.c[k]) / (z + Cplx(static_cast<long>(k)));
    Cplx za = z + Cplx(static_cast<long>(a));
    // (z+a)^{z+1/2} e^{-(z+a)}
    Cplx p = exp((z + Cplx(0.5)) * log(za) - za);
    return p * acc;
}

} // namespace

Cplx gamma_complex(const Cplx& s)
{
    if (s.im.is_zero() && s.re <= 0 && s.re == floor(s.re))
        throw PoleOfGamma("Gamma pole at s = " + s.re.str(8, std::ios_base::fixed));
    if (s.re >= Real(0.5))
        return spouge_gamma(s);
    // reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
    Real pi = real_pi();
    Cplx ps = Cplx(pi) * s;
    Cplx sinps(sin(ps.re) * cosh(ps.im), cos(ps.re) * sinh(ps.im));
    return Cplx(pi) / (sinps * spouge_gamma(Cplx(1) - s));
}

std::vector<Cplx> gamma_ladder(const Cplx& start, int count)
{
    std::vector<Cplx> out;
    out.reserve(count);
    Cplx g = gamma_complex(start);
    Cplx s = start;
    for (int k = 0; k < count; ++k) {
        out.push_back(g);
        g = g * s;
        s += Cplx(1);
    }
    return out;
}

double lgamma_d(double x)
{
    return std::lgamma(x);
}

} // namespace resurge
