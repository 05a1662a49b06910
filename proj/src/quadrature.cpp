#include "resurge/quadrature.hpp"

#include "resurge/errors.hpp"

#include <algorithm>
#include <cmath>

namespace resurge {

namespace {

// P_m(x) for m = 0..p via the three-term recurrence.
std::vector<Real> legendre_all(int p, const Real& x)
{
    std::vector<Real> P(static_cast<size_t>(p) + 1);
    P[0] = Real(1);
    if (p >= 1)
        P[1] = x;
    for (int m = 1; m < p; ++m)
        P[m + 1] = (Real(2 * m + 1) * x * P[m] - Real(m) * P[m - 1]) / Real(m + 1);
    return P;
}

} // namespace

GLRule make_gl_rule(int p)
{
    GLRule r;
    r.p = p;
    r.x.resize(p);
    r.w.resize(p);
    Real pi = real_pi();
    Real eps = pow(Real(2), -static_cast<long>(precision_bits()) + 8);
    for (int i = 0; i < (p + 1) / 2; ++i) {
        Real x = cos(pi * (Real(i) + Real(0.75)) / (Real(p) + Real(0.5)));
        Real dP(0);
        for (int it = 0; it < 200; ++it) {
            std::vector<Real> P = legendre_all(p, x);
            dP = Real(p) * (x * P[p] - P[p - 1]) / (x * x - Real(1));
            Real dx = P[p] / dP;
            x -= dx;
            if (abs(dx) < eps)
                break;
        }
        std::vector<Real> P = legendre_all(p, x);
        dP = Real(p) * (x * P[p] - P[p - 1]) / (x * x - Real(1));
        r.x[i] = -x; // ascending order
        r.x[p - 1 - i] = x;
        Real w = Real(2) / ((Real(1) - x * x) * dP * dP);
        r.w[i] = w;
        r.w[p - 1 - i] = w;
    }
    if (p % 2 == 1) {
        r.x[p / 2] = Real(0);
        std::vector<Real> P = legendre_all(p, Real(0));
        Real dP = Real(p) * (-P[p - 1]) / (Real(-1));
        r.w[p / 2] = Real(2) / (dP * dP);
    }

    // partial[i][l] = sum_m (2m+1)/2 P_m(x_l) w_l * I_m(x_i),
    // I_0(x) = x+1, I_m(x) = (P_{m+1}(x) - P_{m-1}(x))/(2m+1)
    std::vector<std::vector<Real>> Pm(p); // Pm[l] = P_0..P_p at x_l
    for (int l = 0; l < p; ++l)
        Pm[l] = legendre_all(p, r.x[l]);
    r.partial.assign(p, std::vector<Real>(p, Real(0)));
    for (int i = 0; i < p; ++i) {
        std::vector<Real> Pi = legendre_all(p, r.x[i]);
        for (int l = 0; l < p; ++l) {
            Real acc = (r.x[i] + Real(1)) * Real(0.5) * r.w[l];
            for (int m = 1; m < p; ++m) {
                Real Im = (Pi[m + 1] - Pi[m - 1]) / Real(2 * m + 1);
                acc += (Real(2 * m + 1) * Real(0.5)) * Pm[l][m] * r.w[l] * Im;
            }
            r.partial[i][l] = acc;
        }
    }
    return r;
}

QuadGrid build_grid(const PathLog& path, const GridConfig& cfg)
{
    if (cfg.grading_ratio != 0.5)
        throw ConfigError("only grading_ratio = 0.5 is supported");
    QuadGrid g;
    g.path = path;
    g.rule = make_gl_rule(cfg.panel_nodes);
    Real L = path.length();
    Real min_panel = L * Real(cfg.min_panel_rel);
    Real max_panel(cfg.max_panel);
    Real factor(cfg.lattice_factor);

    // recursively bisect each geometric segment
    for (int seg = 0; seg < path.segments(); ++seg) {
        std::vector<std::pair<Real, Real>> stack;
        std::vector<std::pair<Real, Real>> done;
        stack.emplace_back(path.cumlen[seg], path.cumlen[seg + 1]);
        while (!stack.empty()) {
            auto [a, b] = stack.back();
            stack.pop_back();
            Real len = b - a;
            bool split = false;
            if (len > max_panel) {
                split = true;
            } else if (len > min_panel) {
                Cplx pa = path.point(a), pb = path.point(b);
                Real d = min(dist_to_lattice(pa),
                             min(dist_to_lattice(pb),
                                 dist_to_lattice(path.point((a + b) * Real(0.5)))));
                if (len > factor * d)
                    split = true;
            }
            if (split && len > min_panel * Real(2)) {
                Real mid = (a + b) * Real(0.5);
                stack.emplace_back(mid, b);
                stack.emplace_back(a, mid);
            } else {
                done.emplace_back(a, b);
            }
        }
        std::sort(done.begin(), done.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (auto& [a, b] : done) {
            QuadGrid::Panel p;
            p.s0 = a;
            p.s1 = b;
            p.first_node = static_cast<int>(g.s.size());
            p.dir = path.direction(seg);
            g.panels.push_back(p);
            Real h2 = (b - a) * Real(0.5);
            Real mid = (a + b) * Real(0.5);
            for (int l = 0; l < g.rule.p; ++l) {
                Real sl = mid + h2 * g.rule.x[l];
                g.s.push_back(sl);
                g.zeta.push_back(path.point(sl));
                g.lifts.push_back(path.lift(sl));
                g.wfull.push_back(p.dir * (g.rule.w[l] * h2));
                g.panel_of.push_back(static_cast<int>(g.panels.size()) - 1);
                g.local_of.push_back(l);
            }
        }
    }
    return g;
}

Cplx QuadGrid::integrate_nodes(const std::vector<Cplx>& f) const
{
    Cplx acc;
    CplxScratch sc;
    for (int i = 0; i < nodes(); ++i)
        mul_acc(acc, wfull[i], f[i], sc);
    return acc;
}

void attach_kernel(QuadGrid& grid, const KernelTable& kt, double tol)
{
    int n = grid.nodes();
    grid.cot.resize(n);
    for (int i = 0; i < n; ++i)
        grid.cot[i] = Cplx(1) / (exp(grid.zeta[i]) - Cplx(1));

    std::vector<EntireFn> rows;
    rows.reserve(n);
    for (int i = 0; i < n; ++i)
        rows.push_back(kt.row_at(grid.zeta[i]));

    Real rtol(tol);
    grid.kcol.assign(n, {});
    for (int j = 0; j < n; ++j) {
        auto& col = grid.kcol[j];
        // lower triangle, padded to the end of j's own panel: the partial
        // integration interpolates through every node of that panel
        int last = std::min(n, grid.panels[grid.panel_of[j]].first_node + grid.rule.p);
        col.resize(std::max(j + 1, last));
        for (int i = 0; i < static_cast<int>(col.size()); ++i)
            col[i] = eval_entire(rows[i], grid.zeta[j] - grid.zeta[i], rtol).value;
    }
}

std::vector<Cplx> kernel_column(const QuadGrid& grid, const KernelTable& kt,
                                const Cplx& target, double tol)
{
    int n = grid.nodes();
    Real rtol(tol);
    std::vector<Cplx> col(n);
    for (int i = 0; i < n; ++i) {
        EntireFn row = kt.row_at(grid.zeta[i]);
        col[i] = eval_entire(row, target - grid.zeta[i], rtol).value;
    }
    return col;
}

std::vector<Cplx> sample_nodes(const QuadGrid& grid,
                               const std::function<Cplx(const Cplx&, const Real&)>& f)
{
    std::vector<Cplx> out(grid.nodes());
    for (int i = 0; i < grid.nodes(); ++i)
        out[i] = f(grid.zeta[i], grid.lifts[i]);
    return out;
}

} // namespace resurge
