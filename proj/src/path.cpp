#include "resurge/path.hpp"

#include "resurge/errors.hpp"

#include <algorithm>
#include <cmath>

namespace resurge {

namespace {

Real tiny()
{
    return pow(Real(2), -static_cast<long>(precision_bits()) + 24);
}

bool same_point(const Cplx& a, const Cplx& b)
{
    return abs(a - b) <= tiny() * (Real(1) + abs(a) + abs(b));
}

} // namespace

Cplx nearest_lattice_point(const Cplx& z)
{
    Real k = floor(z.im / two_pi() + Real(0.5));
    return Cplx(Real(0), k * two_pi());
}

Real dist_to_lattice(const Cplx& z)
{
    return abs(z - nearest_lattice_point(z));
}

Real dist_point_segment(const Cplx& p, const Cplx& a, const Cplx& b)
{
    Cplx ab = b - a;
    Real len2 = norm2(ab);
    if (len2.is_zero())
        return abs(p - a);
    Real t = ((p.re - a.re) * ab.re + (p.im - a.im) * ab.im) / len2;
    if (t < 0)
        t = 0;
    if (t > 1)
        t = 1;
    Cplx proj(a.re + t * ab.re, a.im + t * ab.im);
    return abs(p - proj);
}

int PathLog::segment_of(const Real& s) const
{
    int lo = 0, hi = segments() - 1;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (cumlen[mid] <= s)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

Cplx PathLog::point(const Real& s) const
{
    int i = segment_of(s);
    Real t = s - cumlen[i];
    Cplx d = direction(i);
    return v[i] + d * t;
}

Real PathLog::lift(const Real& s) const
{
    int i = segment_of(s);
    Cplx p = point(s);
    if (i == 0 && is_zero(v[0]))
        return theta[1];
    if (same_point(p, v[i]))
        return theta[i];
    // continuous arg along a straight segment changes by the principal
    // argument of the ratio (the subtended angle stays below pi)
    return theta[i] + arg(p / v[i]);
}

Cplx PathLog::direction(int seg) const
{
    Cplx d = v[seg + 1] - v[seg];
    return d / abs(d);
}

PathLog make_polyline(std::vector<Cplx> vertices, const PathOptions& opt)
{
    if (vertices.size() < 2)
        throw PathThroughOrigin("a path needs at least two vertices");
    PathLog p;
    p.v = std::move(vertices);
    p.start_arg = opt.start_arg;
    p.eps = opt.eps;
    p.terminal_lattice = opt.terminal_lattice;
    p.relax = opt.relax;

    const size_t M = p.v.size();
    bool starts_at_zero = is_zero(p.v[0]);

    // interior-origin check (start at 0 is allowed, crossing 0 is not)
    for (size_t i = 0; i + 1 < M; ++i) {
        Real d = dist_point_segment(Cplx(), p.v[i], p.v[i + 1]);
        bool at_start = (i == 0 && starts_at_zero);
        if (!at_start && d <= tiny())
            throw PathThroughOrigin("segment passes through 0");
    }

    // argument lift
    p.theta.assign(M, Real(0));
    p.cumlen.assign(M, Real(0));
    if (starts_at_zero) {
        p.theta[0] = opt.start_arg;
        p.theta[1] = opt.start_arg;
        Real a = arg(p.v[1]);
        Real d = p.theta[1] - a;
        Real k = floor(d / two_pi() + Real(0.5));
        if (abs(d - k * two_pi()) > Real(1e-12))
            throw InternalInconsistency("start_arg incompatible with first direction");
        for (size_t i = 2; i < M; ++i)
            p.theta[i] = p.theta[i - 1] + arg(p.v[i] / p.v[i - 1]);
    } else {
        p.theta[0] = opt.start_arg;
        Real a = arg(p.v[0]);
        Real d = p.theta[0] - a;
        Real k = floor(d / two_pi() + Real(0.5));
        if (abs(d - k * two_pi()) > Real(1e-12))
            throw InternalInconsistency("start_arg incompatible with first vertex");
        for (size_t i = 1; i < M; ++i)
            p.theta[i] = p.theta[i - 1] + arg(p.v[i] / p.v[i - 1]);
    }
    for (size_t i = 1; i < M; ++i)
        p.cumlen[i] = p.cumlen[i - 1] + abs(p.v[i] - p.v[i - 1]);

    // clearance against the lattice, with declared exemptions
    Real minc(1e30);
    Real span(0);
    for (const auto& z : p.v)
        span = max(span, abs(z.im));
    long kmax = std::lround(to_double(span / two_pi())) + 2;
    for (long k = -kmax; k <= kmax; ++k) {
        Cplx P(Real(0), Real(k) * two_pi());
        if (starts_at_zero && same_point(P, p.v[0]))
            continue;
        if (p.terminal_lattice && same_point(P, *p.terminal_lattice))
            continue;
        if (p.relax && same_point(P, p.relax->first) && p.relax->second >= p.eps)
            continue;
        for (size_t i = 0; i + 1 < M; ++i)
            minc = min(minc, dist_point_segment(P, p.v[i], p.v[i + 1]));
    }
    p.clearance = minc;
    if (minc < p.eps)
        throw PathTooCloseToLattice("clearance " + minc.str(6, std::ios_base::fixed) +
                                    " below eps");
    return p;
}

PathLog make_path_gamma_m(int m)
{
    if (m == 0)
        throw ValCheckFailed("m must be nonzero");
    PathOptions opt;
    opt.start_arg = Real(0);
    std::vector<Cplx> v = {Cplx(1), Cplx(Real(1), two_pi() * Real(m))};
    return make_polyline(std::move(v), opt);
}

PathLog gamma_tilde(const PathLog& Gamma, const Cplx& omega)
{
    if (!same_point(Gamma.v.front(), Cplx(1)))
        throw ValCheckFailed("Gamma must start at 1");
    if (!same_point(Gamma.v.back(), omega + Cplx(1)))
        throw ValCheckFailed("Gamma must end at omega + 1");
    std::vector<Cplx> v;
    v.push_back(Cplx());
    v.insert(v.end(), Gamma.v.begin(), Gamma.v.end());
    v.push_back(omega);
    PathOptions opt;
    opt.start_arg = Real(0);
    opt.eps = Gamma.eps;
    opt.terminal_lattice = omega;
    opt.relax = Gamma.relax;
    return make_polyline(std::move(v), opt);
}

} // namespace resurge
