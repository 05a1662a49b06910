#pragma once

#include "resurge/precision.hpp"
#include "resurge/series.hpp"

#include <string>
#include <vector>

namespace resurge {

// Polynomial sum p[i] z^i with complex coefficients.
using Poly = std::vector<Cplx>;

Cplx poly_eval(const Poly& p, const Cplx& z);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_shift(const Poly& p, const Cplx& c); // p(z + c)
int poly_degree(const Poly& p);                // index of last nonzero coeff, -1 if zero
Poly poly_trim(const Poly& p);

// A rational germ, either g(w) = w + a2 w^2 + ... at the origin or
// f(z) = z + 1 + O(z^{-1}) at infinity.
struct GermSpec {
    enum class Chart { origin, infinity };
    Chart chart = Chart::infinity;
    Poly num, den;

    static GermSpec rational_infinity(Poly num, Poly den);
    static GermSpec polynomial_origin(Poly coeffs); // den = 1
    static GermSpec preset(const std::string& name); // translation | quad | rho0
};

// Validates and, for origin-chart germs g(w) = w + a2 w^2 + ... (a2 != 0),
// conjugates by z = -1/(a2 w) so that the result satisfies
// f(z) = z + 1 + O(z^{-1}).  Infinity-chart inputs are validated and
// returned unchanged.
GermSpec normalize_to_infinity(const GermSpec& spec);

// b(w) = f(w - 1) - w expanded at infinity, valid through order D.
IntSeries expand_b(const GermSpec& spec_inf, int D);

Cplx rho_of(const IntSeries& b);

// b_*(z) = b + rho log((1 + z^{-1} b)/(1 - z^{-1})), val >= 2.
IntSeries b_star_series(const IntSeries& b, const Cplx& rho);

struct GermData {
    GermSpec spec;      // infinity chart
    IntSeries b;
    Cplx rho;
    IntSeries b_star;
    Real radius_r;      // R0 with |b_n| <= C0 R0^n
    Real C0;
    int D = 0;
};

GermData make_germ_data(const GermSpec& spec, int D);

// Certified-by-construction exponential-type radius of the Borel images:
// 1.0625 * max(1, |poles of f(w-1)|, and for rho != 0 also |zeros|).
Real germ_radius(const GermSpec& spec_inf, bool include_zeros);

// Canonical text form (used for cache keys and record echoes).
std::string germ_key(const GermSpec& spec);

} // namespace resurge
