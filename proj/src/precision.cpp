#include "resurge/precision.hpp"

#include <cmath>
#include <sstream>

namespace resurge {

namespace {

// boost maps digits10 -> mpfr bits via digits10_2_2; invert conservatively.
unsigned digits10_for_bits(unsigned bits)
{
    unsigned d10 = static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1;
    while (mp::detail::digits10_2_2(d10) < bits)
        ++d10;
    return d10;
}

} // namespace

void set_precision_bits(unsigned bits)
{
    if (bits < 53)
        bits = 53;
    Real::default_precision(digits10_for_bits(bits));
}

unsigned precision_bits()
{
    Real probe(0);
    return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_bits_(precision_bits())
{
    set_precision_bits(bits);
}

PrecisionGuard::~PrecisionGuard()
{
    Real::default_precision(digits10_for_bits(saved_bits_));
}

Real real_pi()
{
    Real r(0);
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

Real two_pi()
{
    Real r = real_pi();
    r *= 2;
    return r;
}

unsigned roundtrip_digits(const Real& x)
{
    unsigned bits = static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
    return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 3;
}

std::string real_to_string(const Real& x)
{
    return x.str(roundtrip_digits(x), std::ios_base::scientific);
}

Real real_from_string(const std::string& s)
{
    return Real(s);
}

Cplx exp(const Cplx& z)
{
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

Cplx log(const Cplx& z)
{
    return {log(abs(z)), arg(z)};
}

Cplx log_branch(const Cplx& z, const Real& lo)
{
    Cplx l = log(z);
    Real tp = two_pi();
    while (l.im <= lo)
        l.im += tp;
    while (l.im > lo + tp)
        l.im -= tp;
    return l;
}

Cplx pow(const Cplx& z, const Cplx& w)
{
    if (is_zero(w))
        return Cplx(1);
    return exp(w * log(z));
}

Cplx polar(const Real& modulus, const Real& angle)
{
    return {modulus * cos(angle), modulus * sin(angle)};
}

Cplx pow_int(const Cplx& z, long n)
{
    if (n < 0) {
        Cplx p = pow_int(z, -n);
        return Cplx(1) / p;
    }
    Cplx r(1), base = z;
    while (n) {
        if (n & 1)
            r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

std::string cplx_to_string(const Cplx& z)
{
    std::ostringstream os;
    os << z.re.str(20, std::ios_base::scientific) << "  "
       << z.im.str(20, std::ios_base::scientific);
    return os.str();
}

void mul_acc(Cplx& acc, const Cplx& a, const Cplx& b, CplxScratch& s)
{
    mpfr_ptr t0 = s.t0.backend().data();
    mpfr_ptr t1 = s.t1.backend().data();
    mpfr_mul(t0, a.re.backend().data(), b.re.backend().data(), MPFR_RNDN);
    mpfr_mul(t1, a.im.backend().data(), b.im.backend().data(), MPFR_RNDN);
    mpfr_add(acc.re.backend().data(), acc.re.backend().data(), t0, MPFR_RNDN);
    mpfr_sub(acc.re.backend().data(), acc.re.backend().data(), t1, MPFR_RNDN);
    mpfr_mul(t0, a.re.backend().data(), b.im.backend().data(), MPFR_RNDN);
    mpfr_mul(t1, a.im.backend().data(), b.re.backend().data(), MPFR_RNDN);
    mpfr_add(acc.im.backend().data(), acc.im.backend().data(), t0, MPFR_RNDN);
    mpfr_add(acc.im.backend().data(), acc.im.backend().data(), t1, MPFR_RNDN);
}

void mul_sub(Cplx& acc, const Cplx& a, const Cplx& b, CplxScratch& s)
{
    mpfr_ptr t0 = s.t0.backend().data();
    mpfr_ptr t1 = s.t1.backend().data();
    mpfr_mul(t0, a.re.backend().data(), b.re.backend().data(), MPFR_RNDN);
    mpfr_mul(t1, a.im.backend().data(), b.im.backend().data(), MPFR_RNDN);
    mpfr_sub(acc.re.backend().data(), acc.re.backend().data(), t0, MPFR_RNDN);
    mpfr_add(acc.re.backend().data(), acc.re.backend().data(), t1, MPFR_RNDN);
    mpfr_mul(t0, a.re.backend().data(), b.im.backend().data(), MPFR_RNDN);
    mpfr_mul(t1, a.im.backend().data(), b.re.backend().data(), MPFR_RNDN);
    mpfr_sub(acc.im.backend().data(), acc.im.backend().data(), t0, MPFR_RNDN);
    mpfr_sub(acc.im.backend().data(), acc.im.backend().data(), t1, MPFR_RNDN);
}

void mul_set(Cplx& out, const Cplx& a, const Cplx& b, CplxScratch& s)
{
    mpfr_ptr t0 = s.t0.backend().data();
    mpfr_ptr t1 = s.t1.backend().data();
    mpfr_mul(t0, a.re.backend().data(), b.re.backend().data(), MPFR_RNDN);
    mpfr_mul(t1, a.im.backend().data(), b.im.backend().data(), MPFR_RNDN);
    mpfr_sub(out.re.backend().data(), t0, t1, MPFR_RNDN);
    mpfr_mul(t0, a.re.backend().data(), b.im.backend().data(), MPFR_RNDN);
    mpfr_mul(t1, a.im.backend().data(), b.re.backend().data(), MPFR_RNDN);
    mpfr_add(out.im.backend().data(), t0, t1, MPFR_RNDN);
}

} // namespace resurge
