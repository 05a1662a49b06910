#pragma once

#include "resurge/borel.hpp"
#include "resurge/fatou.hpp"
#include "resurge/precision.hpp"

#include <vector>

namespace resurge {

// The kernel of the Borel-plane integral transform realizing B_alpha:
//   K(xi, zeta) = u_0(zeta - xi) + sum_{k>=1} ((-xi)^k / k!) u_k(zeta - xi)
// with u_0 = B(c_alpha - 1) and u_k = B(c_alpha b^k), all entire.
// Holomorphic in C x C; K(xi, xi) = alpha + rho xi and K(omega, omega) = 0.
class KernelTable {
  public:
    KernelTable() = default;

    Cplx alpha, rho;
    Real R0{1};
    std::vector<EntireFn> u; // u[0..K_max]
    int k_max() const { return static_cast<int>(u.size()) - 1; }

    // Coefficients of w -> K(xi, xi + w) (an entire function of w).
    EntireFn row_at(const Cplx& xi) const;

    // Two-sum evaluation without the row cache (tests, brute-force oracles).
    EvalResult eval_direct(const Cplx& xi, const Cplx& zeta, const Real& tol) const;
};

// Builds the table with the k-truncation certified below `tol` for
// |xi| <= xi_max, |zeta - xi| <= w_max.
KernelTable build_kernel(const AlphaCtx& actx, double xi_max, double w_max,
                         double tol);

} // namespace resurge
