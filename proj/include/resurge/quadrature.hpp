#pragma once

#include "resurge/borel.hpp"
#include "resurge/kernel.hpp"
#include "resurge/path.hpp"
#include "resurge/precision.hpp"

#include <functional>
#include <vector>

namespace resurge {

// Gauss-Legendre rule on [-1,1] plus the partial-integration matrix
// partial[i][l] = integral of the l-th Lagrange basis over [-1, x_i]
// (exact for the degree p-1 interpolant; used for Volterra prefixes).
struct GLRule {
    int p = 0;
    std::vector<Real> x, w;
    std::vector<std::vector<Real>> partial;
};

GLRule make_gl_rule(int p);

struct GridConfig {
    int panel_nodes = 14;
    double max_panel = 0.5;
    double min_panel_rel = 1e-8;  // floor relative to path length
    double lattice_factor = 0.5;  // panel length <= factor * dist to lattice
    double grading_ratio = 0.5;   // bisection grading (only 0.5 supported)
    double eval_tol = 1e-30;      // absolute tolerance of point evaluations
};

// Nodes, weights, argument lifts and caches along one path.  The kernel
// cache holds K(zeta_i, zeta_j) for i <= j (column-major, lower triangle).
struct QuadGrid {
    PathLog path;
    GLRule rule;

    struct Panel {
        Real s0, s1;
        int first_node = 0;
        Cplx dir;           // unit direction (panels do not straddle vertices)
    };
    std::vector<Panel> panels;

    std::vector<Real> s;       // node arclength parameters
    std::vector<Cplx> zeta;    // node positions
    std::vector<Real> lifts;   // lifted arguments
    std::vector<Cplx> wfull;   // GL weight * (h/2) * direction
    std::vector<int> panel_of, local_of;

    std::vector<Cplx> cot;     // 1/(e^{zeta_i} - 1)
    std::vector<std::vector<Cplx>> kcol; // kcol[j][i] = K(zeta_i, zeta_j), i <= j

    int nodes() const { return static_cast<int>(s.size()); }

    // integral over the whole path of a per-node sampled function
    Cplx integrate_nodes(const std::vector<Cplx>& f) const;
};

QuadGrid build_grid(const PathLog& path, const GridConfig& cfg);

// Fills cot and the kernel cache (row-factorized; O(n^2 D)).
void attach_kernel(QuadGrid& grid, const KernelTable& kt, double tol);

// Kernel column K(zeta_i, target) for an off-grid target.
std::vector<Cplx> kernel_column(const QuadGrid& grid, const KernelTable& kt,
                                const Cplx& target, double tol);

// Sample an arbitrary smooth function on the nodes (tests, Laplace).
std::vector<Cplx> sample_nodes(const QuadGrid& grid,
                               const std::function<Cplx(const Cplx&, const Real&)>& f);

} // namespace resurge
