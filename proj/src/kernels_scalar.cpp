// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference backend: element-wise application of the limiter laws
// from limiters.hpp.  This is the semantic baseline the AVX2 backend is
// tested against.

#include "kernels_backends.hpp"
#include "vsgcl/limiters.hpp"

namespace vsgcl::kernels::scalar {

void limit_angle(const double* id, const double* iq, double i_max,
                 std::size_t n, double* od, double* oq) {
  for (std::size_t k = 0; k < n; ++k) {
    DqPhasor o = limit_angle_priority({id[k], iq[k]}, i_max);
    od[k] = o.d;
    oq[k] = o.q;
  }
}

void limit_d(const double* id, const double* iq, double i_max, std::size_t n,
             double* od, double* oq) {
  for (std::size_t k = 0; k < n; ++k) {
    DqPhasor o = limit_d_priority({id[k], iq[k]}, i_max);
    od[k] = o.d;
    oq[k] = o.q;
  }
}

void limit_q(const double* id, const double* iq, double i_max, std::size_t n,
             double* od, double* oq) {
  for (std::size_t k = 0; k < n; ++k) {
    DqPhasor o = limit_q_priority({id[k], iq[k]}, i_max);
    od[k] = o.d;
    oq[k] = o.q;
  }
}

void limit_adaptive(const double* id, const double* iq, const double* cos_sat,
                    const double* sin_sat, double i_max, std::size_t n,
                    double* od, double* oq) {
  for (std::size_t k = 0; k < n; ++k) {
    DqPhasor o =
        limit_adaptive_trig({id[k], iq[k]}, i_max, cos_sat[k], sin_sat[k]);
    od[k] = o.d;
    oq[k] = o.q;
  }
}

void power(const double* vd, const double* vq, const double* id,
           const double* iq, std::size_t n, double* pe, double* qe) {
  for (std::size_t k = 0; k < n; ++k) {
    // Read before write: pe/qe may alias the inputs.
    double p = vd[k] * id[k] + vq[k] * iq[k];
    double q = vq[k] * id[k] - vd[k] * iq[k];
    pe[k] = p;
    qe[k] = q;
  }
}

}  // namespace vsgcl::kernels::scalar
