#pragma once

#include "resurge/fatou.hpp"
#include "resurge/germ.hpp"
#include "resurge/precision.hpp"

#include <map>
#include <vector>

namespace resurge {

struct OracleConfig {
    Real H{2.5};          // |Im Z| of the sampling line
    int M = 64;           // Fourier samples per period (power of two)
    long n_escape = 200000;
    Real R_big{40};       // asymptotic-regime radius
    int J_cap = 0;        // optional cap on the phi~ partial sum (0 = none)
    unsigned precision_bits = 128;

    void validate() const;
};

enum class HornSide { up, low };

struct FourierResult {
    HornSide side = HornSide::low;
    Cplx const_term;
    std::map<int, Cplx> A;    // m >= 1 -> A_{+m} (up) or A_{-m} (low)
    Real residual_floor{0};   // raw DFT noise estimate (before amplification)
    Real H{0};
    int M = 0;
};

// Orbit/asymptotics context: rational iteration of the infinity-chart germ
// plus the truncated phi~ for the normalized asymptotic Fatou coordinate.
struct HornCtx {
    Poly num, den;
    Cplx rho;
    IntSeries phi;
    OracleConfig cfg;
};

HornCtx make_horn_ctx(const GermSpec& spec, int depth, const OracleConfig& cfg);

Cplx iterate_once(const HornCtx& ctx, const Cplx& z);

// v^+(z) = w_n + rho Log_(-pi,pi)(w_n) + phi~(w_n) - n at the first iterate
// with Re w_n > R_big (optimal truncation of the phi~ tail).
Cplx fatou_plus(const HornCtx& ctx, const Cplx& z);

// w = f^n(w0) with w0 + rho Log_(0,2pi)(w0) + phi~(w0) = Z - n, Newton-solved.
Cplx fatou_minus_inverse(const HornCtx& ctx, const Cplx& Z, int* steps_out = nullptr);

Cplx horn_map(const HornCtx& ctx, HornSide side, const Cplx& Z);

FourierResult horn_fourier(const HornCtx& ctx, HornSide side);

} // namespace resurge
