#pragma once

#include "resurge/germ.hpp"
#include "resurge/series.hpp"

#include <map>
#include <optional>
#include <vector>

namespace resurge {

// Everything derived from one germ at one working depth: the composition
// cache and the formal Fatou series phi~ solving
//     C_{id-1} phi~ = C_{id+b} phi~ + b_*.
struct FatouCtx {
    GermData data;
    CidbCache comp;
    IntSeries phi_tilde;

    int depth() const { return data.D; }
};

FatouCtx make_fatou_ctx(const GermSpec& spec, int depth);

// Direct triangular solve of the Fatou equation (also used standalone).
IntSeries solve_phi_tilde(const GermData& data, const CidbCache& comp);

// phi~ = head + tail with head in Span(z^{-1},...,z^{-N}).  N is the
// smallest admissible integer max(0, ceil(-2 Re alpha)) unless overridden.
struct SplitResult {
    IntSeries head, tail;
    int N;
    Cplx beta; // alpha + N
};
SplitResult split_at_N(const IntSeries& phi, const Cplx& alpha,
                       std::optional<int> N_override = std::nullopt);

// Psi~_k = (E B^omega)^k 1, k = 0..k_max.  Needs depth >= wanted_order + k_max.
std::vector<IntSeries> psi_sequence(const FatouCtx& ctx, const Cplx& omega, int k_max);

// All alpha-dependent data for one singularity omega = 2 pi i m.
struct AlphaCtx {
    const FatouCtx* base = nullptr;
    int m = 0;
    Cplx omega, alpha, beta;
    int N = 0;
    IntSeries head, tail;    // [phi~]_N, {phi~}_N
    IntSeries b_N;           // b_* - C_{id-1} head + C_{id+b} head, val >= N+2
    IntSeries cprime;        // (1 - z^{-1})^{-alpha} b_N   (entire Borel image)
    FracSeries b_alpha;      // z^{-alpha} cprime, gamma = beta + 2
    IntSeries c_alpha;       // ((1 + z^{-1}b)/(1 - z^{-1}))^alpha
    IntSeries W;             // (1 + z^{-1}b)^{-(beta+1)} for frac composition
};

AlphaCtx make_alpha_ctx(const FatouCtx& ctx, int m,
                        std::optional<int> N_override = std::nullopt);

// Phi~_k = (E_beta B_alpha)^k E_beta b_alpha, k = 0..k_max, all with
// gamma = beta + 1.
std::vector<FracSeries> phi_sequence(const AlphaCtx& actx, int k_max);

// B^omega as a standalone operation (callers without a psi recursion).
IntSeries apply_B_omega(const FatouCtx& ctx, const IntSeries& psi, const Cplx& omega);

// Residual of the Fatou equation for a candidate phi (diagnostics/tests).
IntSeries fatou_residual(const FatouCtx& ctx, const IntSeries& phi);

// Depth and precision planning: entire-function evaluation at
// |zeta| <= 2 pi max|m| + 2 needs ~ e R0 |zeta| Taylor terms plus guard,
// and reserves ceil(R0 |zeta| log2 e) + 32 bits against cancellation.
struct RunPlan {
    int depth = 64;
    unsigned precision = 160;
    double zeta_max = 0;
};
RunPlan plan_run(const GermSpec& spec, int abs_m_max, int k_max, int user_D,
                 unsigned user_precision_bits);

} // namespace resurge
