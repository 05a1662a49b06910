#pragma once

#include "resurge/precision.hpp"
#include "resurge/series.hpp"

#include <vector>

namespace resurge {

// Entire function given by Taylor data at 0 plus an exponential-type bound
// |a_n| <= C0 R0^n / n!.  Truncating after the first T terms at |zeta| <= M
// errs by at most C0 (R0 M)^{T+1}/(T+1)! e^{R0 M}.
struct EntireFn {
    std::vector<Cplx> a;
    Real C0{0}, R0{1};

    int terms() const { return static_cast<int>(a.size()); }
};

// zeta^gamma * entire, single-valued on the log-Riemann surface.
struct BranchedGerm {
    Cplx gamma;
    EntireFn h;
};

struct EvalResult {
    Cplx value;
    Real err; // certified truncation + rounding bound
};

// Formal Borel transform of sum c_n z^{-n}, val >= 1:  a_n = c_{n+1}/n!.
EntireFn borel_int(const IntSeries& phi, const Real& R0);

// Formal Borel transform of sum c_n z^{-gamma-n}, Re gamma > 0:
// zeta^{gamma-1} * sum c_n zeta^n / Gamma(gamma+n).
BranchedGerm borel_frac(const FracSeries& phi, const Real& R0);

// Recompute the type constant C0 from the stored coefficients.
void refresh_type_bound(EntireFn& f);

EvalResult eval_entire(const EntireFn& g, const Cplx& zeta, const Real& tol);

// zeta given as (modulus, lifted argument) on C_log.
EvalResult eval_branched(const BranchedGerm& g, const Real& modulus,
                         const Real& lifted_arg, const Real& tol);

// Taylor coefficients of the convolution through index `order`:
// (f*g)_n = sum_{i+j=n-1} f_i g_j i! j! / (i+j+1)!.
std::vector<Cplx> convolve_taylor(const std::vector<Cplx>& f,
                                  const std::vector<Cplx>& g, int order);

// Smallest T with C0 (R0 M)^{T+1}/(T+1)! e^{R0 M} <= tol (double estimate).
int required_terms(double r0m, double log_c0, double log_tol);

} // namespace resurge
