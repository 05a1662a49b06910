#pragma once

#include "resurge/fatou.hpp"
#include "resurge/kernel.hpp"
#include "resurge/path.hpp"
#include "resurge/quadrature.hpp"

#include <optional>
#include <string>
#include <vector>

namespace resurge {

struct ResiduaConfig {
    int k_max = 12;
    GridConfig grid;
    double kernel_tol = 1e-30;
    bool error_estimates = false;      // companion coarse grid per S_k
    std::optional<int> N_override;
    const KernelTable* kernel = nullptr; // prebuilt table (cache hits)
};

// The kernel table sized for every evaluation a sweep along `path` needs.
KernelTable kernel_for_path(const AlphaCtx& actx, const PathLog& path, double tol);

struct ResiduaResult {
    std::vector<Cplx> S;            // S_{omega,0..k_max}
    std::vector<Cplx> partial_sums; // partial_sums[k] = sum_{j<=k} S_j
    Real lambda{0};                 // fitted geometric ratio
    Real envelope_C{0};             // |S_k| <= C lambda^k over the fit range
    Real tail_error{0};             // estimated |sum_{k>k_max} S_k|
    Cplx sum;                       // S^Gamma_omega
    Cplx A;                         // mapped invariant A_{-m}
    std::string horn;               // "low" (m>0) or "up" (m<0)
    std::vector<Real> err_est;      // per-S_k estimate when requested

    // meta
    int m = 0;
    Cplx omega, alpha, beta;
    int N = 0;
    unsigned precision = 0;
    int grid_nodes = 0, grid_panels = 0;
};

// G_j at every node for j = 0..k_max, where G_0 is given on the nodes and
//   G_j(s) = int_0^s G_{j-1}(sigma) K(sigma, s)/(e^sigma - 1) dsigma.
// Needs grid.kcol/cot attached.
std::vector<std::vector<Cplx>> volterra_levels(const QuadGrid& grid,
                                               const std::vector<Cplx>& G0,
                                               int k_max);

// Full-path integrals against an endpoint kernel column:
// ends[j] = int_0^L G_{j-1}(sigma) K(sigma, target)/(e^sigma - 1) dsigma,
// ends[0] is left 0 (the j = 0 value is the direct endpoint evaluation).
std::vector<Cplx> volterra_ends(const QuadGrid& grid,
                                const std::vector<std::vector<Cplx>>& levels,
                                const std::vector<Cplx>& end_col, int k_max);

// Same but integrating only nodes with s <= s_cut (prefix of full panels).
std::vector<Cplx> volterra_ends_prefix(const QuadGrid& grid,
                                       const std::vector<std::vector<Cplx>>& levels,
                                       const std::vector<Cplx>& end_col, int k_max,
                                       const Real& s_cut);

// Memory-lean recursion for large k_max: only the previous level is kept;
// returns the endpoint integrals (ends[0] untouched).
std::vector<Cplx> volterra_stream(const QuadGrid& grid, const std::vector<Cplx>& G0,
                                  const std::vector<Cplx>& end_col, int k_max);

// The monodromy geometry: (0,1] + Gamma_m + [omega+1, omega+zeta0], and the
// same with the counterclockwise 16-gon loop around omega appended.
PathLog monodromy_direct_path(const Cplx& omega, const Cplx& zeta0);
PathLog monodromy_full_path(const Cplx& omega, const Cplx& zeta0);

// The residua S^Gamma_{omega,k} along Gamma (from 1 to omega+1), via the
// graded grid on Gamma~ and the level recursion.
ResiduaResult residua(const AlphaCtx& actx, const PathLog& Gamma,
                      const ResiduaConfig& cfg);

// Least-squares geometric fit + tail bound; fills sum/tail/lambda fields.
// Throws TailNotBounded when the fitted ratio reaches 1.
Cplx sum_residua(ResiduaResult& res, double tol);

// A_{-m} = S e^{-4 pi^2 m rho} for m > 0,  A_{-m} = -S for m < 0.
Cplx ev_invariant(ResiduaResult& res, const Cplx& rho);

// Analytic continuation of Phi^_k at the endpoint of `path` (which must
// avoid the lattice, endpoint included).
Cplx cont_phi_k(const AlphaCtx& actx, const PathLog& path, int k,
                const ResiduaConfig& cfg);

struct VariationReport {
    int k = 0;
    Cplx zeta0;
    Cplx measured;   // monodromy of cont Phi^_k around omega at omega + zeta0
    Cplx predicted;  // sum_{k1+k2=k, k2>=1} S_{omega,k1} Psi^_{k2}(zeta0)
    Real rel_error{0};
    Real abs_error{0};
};

// Measured monodromy only.
VariationReport variation_at(const AlphaCtx& actx, int k, const Cplx& zeta0,
                             const ResiduaConfig& cfg);

// Monodromy against the layered bridge identity; needs the residua of the
// same (germ, m) for the prediction.
VariationReport bridge_check(const AlphaCtx& actx, const ResiduaResult& res,
                             int k, const Cplx& zeta0, const ResiduaConfig& cfg);

// cont Phi^_k sampled on every grid node (profile dumps).
struct ProfileSample {
    Real s;
    Cplx zeta;
    Cplx value;
};
std::vector<ProfileSample> profile_phi_k(const AlphaCtx& actx, const PathLog& path,
                                         int k, const ResiduaConfig& cfg);

} // namespace resurge
