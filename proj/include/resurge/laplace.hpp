#pragma once

#include "resurge/borel.hpp"
#include "resurge/precision.hpp"

namespace resurge {

// Truncated Laplace transform along the ray arg zeta = theta:
//   L^theta g (z) = int_0^{e^{i theta} inf} e^{-z zeta} g(zeta) dzeta,
// requires mu = Re(z e^{i theta}) - R0 > 0 with margin; the exponential
// tail beyond the truncation point is certified and reported.
EvalResult laplace_ray(const EntireFn& g, const Real& theta, const Cplx& z,
                       const Real& tol);
EvalResult laplace_ray(const BranchedGerm& g, const Real& theta, const Cplx& z,
                       const Real& tol);

} // namespace resurge
