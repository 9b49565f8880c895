// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace vsgcl {

// A phasor resolved in the converter's rotating d-q frame.  The d axis is
// aligned with the internal EMF, so the EMF itself is (E, 0).
struct DqPhasor {
  double d = 0.0;
  double q = 0.0;
};

// Squared magnitude; written as d*d + q*q (not hypot) so scalar and SIMD
// code paths evaluate the identical expression tree.
inline double magnitude_sq(DqPhasor p) { return p.d * p.d + p.q * p.q; }

inline double magnitude(DqPhasor p) { return std::sqrt(magnitude_sq(p)); }

inline double angle(DqPhasor p) { return std::atan2(p.q, p.d); }

}  // namespace vsgcl
