#pragma once

#include "resurge/precision.hpp"

#include <vector>

namespace resurge {

// ---------------------------------------------------------------------------
// Truncated formal series in z^{-1}.
//
// IntSeries  : sum_{n=0..order} c[n] z^{-n}.  `val` is a guaranteed lower
//              bound on the first nonzero index (entries below are exact 0).
// FracSeries : sum_{n=0..order} c[n] z^{-gamma-n} with complex offset gamma.
//
// The coefficient vector length IS the validity: c[n] is trustworthy for all
// n <= order() and consumers must not ask beyond it.
// ---------------------------------------------------------------------------

struct IntSeries {
    std::vector<Cplx> c;
    int val = 0;

    int order() const { return static_cast<int>(c.size()) - 1; }
    const Cplx& at(int n) const { return c[static_cast<size_t>(n)]; }
};

struct FracSeries {
    Cplx gamma;
    std::vector<Cplx> c;

    int order() const { return static_cast<int>(c.size()) - 1; }
};

IntSeries int_zero(int order);
IntSeries int_one(int order);
IntSeries int_monomial(int n, const Cplx& coeff, int order);

// Rescan `val` against exact zeros (never lowers a declared bound).
void refresh_val(IntSeries& s);

IntSeries add(const IntSeries& a, const IntSeries& b);
IntSeries sub(const IntSeries& a, const IntSeries& b);
IntSeries scale(const IntSeries& a, const Cplx& s);
IntSeries mul(const IntSeries& a, const IntSeries& b, int cap = -1);
IntSeries mul_z_pow(const IntSeries& a, int j); // multiply by z^{-j}

// Reciprocal of a series with nonzero constant term.
IntSeries inverse(const IntSeries& a);

// exp(u) with val(u) >= 1; log(f), f^alpha with f = 1 + O(z^{-1}).
// Purely formal: no branch choice exists at this level.
IntSeries exp_series(const IntSeries& u);
IntSeries log_series(const IntSeries& f);
IntSeries pow_alpha(const IntSeries& f, const Cplx& alpha);

IntSeries derivative(const IntSeries& f);
FracSeries derivative(const FracSeries& f);

// phi(z + c) by binomial re-expansion of each power.
IntSeries compose_shift(const IntSeries& f, const Cplx& cshift);
FracSeries compose_shift(const FracSeries& f, const Cplx& cshift);

// Re-grid sum a_n z^{-n} as sum c_k z^{-(extra+base)-k}; entries below `base`
// are dropped (callers guarantee they vanish).
FracSeries frac_from_int(const IntSeries& a, int base, const Cplx& extra);
FracSeries frac_from_int(const IntSeries& a, int base);
FracSeries frac_embed(const IntSeries& a);                // gamma = 0
IntSeries int_from_frac(const FracSeries& a);             // gamma must be integer >= 0

FracSeries f_add(const FracSeries& a, const FracSeries& b);
FracSeries f_sub(const FracSeries& a, const FracSeries& b);
FracSeries f_scale(const FracSeries& a, const Cplx& s);
FracSeries mul_int_frac(const IntSeries& a, const FracSeries& b, int cap = -1);

// ---------------------------------------------------------------------------
// Composition with id + b for a fixed b with val(b) >= 1.  Rows
// pw[n] = (1 + z^{-1} b)^{-n} make every application an O(D^2) sweep.
// ---------------------------------------------------------------------------

class CidbCache {
  public:
    CidbCache() = default;
    CidbCache(const IntSeries& b, int depth);

    int depth() const { return depth_; }
    const IntSeries& b() const { return b_; }
    const IntSeries& u() const { return u_; } // z^{-1} b
    const IntSeries& pw(int n) const { return pw_[static_cast<size_t>(n)]; }

    IntSeries apply(const IntSeries& f) const;       // f(z + b(z))
    // W = (1+z^{-1}b)^{-gamma} for the fractional grid of `f`.
    FracSeries apply(const FracSeries& f, const IntSeries& W) const;
    IntSeries pow_one_plus_u(const Cplx& alpha) const; // (1+u)^{alpha}

  private:
    IntSeries b_, u_;
    std::vector<IntSeries> pw_;
    int depth_ = 0;
};

// Inverse of C_{id-1} - Id on z^{-2} C[[z^{-1}]]  ->  z^{-1} C[[z^{-1}]].
IntSeries op_E(const IntSeries& psi);

// Same on the fractional grid: input gamma, output gamma - 1.
FracSeries op_E_beta(const FracSeries& psi);

// B^omega psi = e^{-omega b_*} C_{id+b} psi - psi.  `exp_mwbs` is the cached
// factor e^{-omega b_*}.  Normalizes the structural val gain (val + 2).
IntSeries op_B_omega(const IntSeries& psi, const IntSeries& exp_mwbs,
                     const CidbCache& comp);

// B_alpha phi = c_alpha C_{id+b} phi - phi on the z^{-beta-1} grid; the
// leading coefficient cancels and the result lives on z^{-beta-2}.
FracSeries op_B_alpha(const FracSeries& phi, const IntSeries& c_alpha,
                      const IntSeries& W, const CidbCache& comp);

// Largest |c[n]|, as a crude scale for tolerance tests.
Real coeff_scale(const IntSeries& a);
Real coeff_scale(const FracSeries& a);

} // namespace resurge
