#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <utility>
#include <vector>

namespace resurge {

namespace mp = boost::multiprecision;

// Arbitrary-precision real number.  The mantissa width is a per-thread
// runtime setting (see set_precision_bits); every freshly constructed Real
// picks up the current width.
using Real = mp::number<mp::mpfr_float_backend<0, mp::allocate_dynamic>, mp::et_off>;

void set_precision_bits(unsigned bits);
unsigned precision_bits();

// RAII: switch the working precision for a scope, restore on exit.
class PrecisionGuard {
  public:
    explicit PrecisionGuard(unsigned bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  private:
    unsigned saved_bits_;
};

Real real_pi();
Real two_pi();

inline double to_double(const Real& x) { return x.convert_to<double>(); }
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }

// Decimal digits that guarantee exact binary round-trip at the current width.
unsigned roundtrip_digits(const Real& x);
std::string real_to_string(const Real& x);
Real real_from_string(const std::string& s);

// ---------------------------------------------------------------------------
// Complex numbers over Real.  std::complex is only specified for the builtin
// floating types, so we carry our own minimal type.
// ---------------------------------------------------------------------------

struct Cplx {
    Real re, im;

    Cplx() : re(0), im(0) {}
    Cplx(const Real& r) : re(r), im(0) {}
    Cplx(Real&& r) : re(std::move(r)), im(0) {}
    Cplx(const Real& r, const Real& i) : re(r), im(i) {}
    Cplx(double r) : re(r), im(0) {}
    Cplx(int r) : re(r), im(0) {}
    Cplx(long r) : re(r), im(0) {}
    Cplx(double r, double i) : re(r), im(i) {}

    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
    Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }
    Cplx& operator*=(const Cplx& o) { *this = *this * o; return *this; }
    Cplx& operator/=(const Cplx& o) { *this = *this / o; return *this; }
    Cplx& operator*=(const Real& s) { re *= s; im *= s; return *this; }
    Cplx& operator/=(const Real& s) { re /= s; im /= s; return *this; }

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const Real& s, const Cplx& a) { return {s * a.re, s * a.im}; }
    friend Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Cplx& a, const Cplx& b) { return !(a == b); }
};

inline Real abs(const Cplx& z) { return hypot(z.re, z.im); }
inline Real norm2(const Cplx& z) { return z.re * z.re + z.im * z.im; }
inline Real arg(const Cplx& z) { return atan2(z.im, z.re); }
inline Cplx conj(const Cplx& z) { return {z.re, -z.im}; }

Cplx exp(const Cplx& z);
Cplx log(const Cplx& z);                       // principal branch, arg in (-pi, pi]
Cplx log_branch(const Cplx& z, const Real& lo); // branch with arg in (lo, lo + 2pi]
Cplx pow(const Cplx& z, const Cplx& w);        // exp(w log z), principal
Cplx polar(const Real& modulus, const Real& angle);
Cplx pow_int(const Cplx& z, long n);

inline bool is_zero(const Cplx& z) { return z.re.is_zero() && z.im.is_zero(); }

std::string cplx_to_string(const Cplx& z); // "re  im" (diagnostics)

// ---------------------------------------------------------------------------
// Allocation-free kernels for hot loops.  All arguments must be distinct
// objects; `tmp` is caller-provided scratch at working precision.
// ---------------------------------------------------------------------------

struct CplxScratch {
    Real t0, t1;
    CplxScratch() : t0(0), t1(0) {}
};

// acc += a*b
void mul_acc(Cplx& acc, const Cplx& a, const Cplx& b, CplxScratch& s);
// acc -= a*b
void mul_sub(Cplx& acc, const Cplx& a, const Cplx& b, CplxScratch& s);
// out = a*b
void mul_set(Cplx& out, const Cplx& a, const Cplx& b, CplxScratch& s);

} // namespace resurge
