#pragma once

#include "resurge/precision.hpp"

#include <vector>

namespace resurge {

// Gamma(s) for complex s, accurate to ~2^-(P-8) relative at working
// precision P.  Spouge's series on Re s >= 1/2, reflection otherwise.
// Throws PoleOfGamma on non-positive integers.
Cplx gamma_complex(const Cplx& s);

// Gamma(start), Gamma(start+1), ..., Gamma(start+count-1) by upward
// recurrence from a single gamma_complex call.
std::vector<Cplx> gamma_ladder(const Cplx& start, int count);

// log Gamma(x) for real positive x, double precision (tail-bound helpers).
double lgamma_d(double x);

} // namespace resurge
