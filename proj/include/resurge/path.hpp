#pragma once

#include "resurge/precision.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace resurge {

// Polygonal path in C avoiding 2 pi i Z, carrying a continuous argument lift.
// The first vertex may sit ON the lattice (paths issuing from 0 along (0,1]);
// a terminal lattice endpoint may be declared (the residua paths end at
// omega); a relax disc admits the monodromy loops near omega.
struct PathLog {
    std::vector<Cplx> v;
    std::vector<Real> theta;   // lifted argument at each vertex
    std::vector<Real> cumlen;  // arclength at each vertex, cumlen[0] = 0
    Real start_arg{0};
    std::optional<Cplx> terminal_lattice;
    std::optional<std::pair<Cplx, Real>> relax; // (center, radius)
    Real eps{Real(1) / 5};
    Real clearance{0};         // measured min distance outside exemptions

    int segments() const { return static_cast<int>(v.size()) - 1; }
    Real length() const { return cumlen.back(); }
    int segment_of(const Real& s) const;
    Cplx point(const Real& s) const;
    Real lift(const Real& s) const;
    Cplx direction(int seg) const; // unit vector of segment seg
    Cplx end_point() const { return v.back(); }
    Real end_lift() const { return theta.back(); }
};

struct PathOptions {
    Real start_arg{0};
    Real eps{Real(1) / 5};
    std::optional<Cplx> terminal_lattice;
    std::optional<std::pair<Cplx, Real>> relax;
};

PathLog make_polyline(std::vector<Cplx> vertices, const PathOptions& opt = {});

// Gamma_m: the line segment from 1 to 2 pi i m + 1.
PathLog make_path_gamma_m(int m);

// Gamma~ : (0,1] + Gamma + [omega+1, omega], terminal endpoint omega.
PathLog gamma_tilde(const PathLog& Gamma, const Cplx& omega);

Cplx nearest_lattice_point(const Cplx& z);
Real dist_to_lattice(const Cplx& z);
Real dist_point_segment(const Cplx& p, const Cplx& a, const Cplx& b);

} // namespace resurge
