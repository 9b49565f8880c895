// SPDX-License-Identifier: Apache-2.0
//
// AVX2 backend.  Each 4-lane block evaluates the same expression tree as the
// scalar law (same multiplies, same min/blend semantics, contraction off), so
// outputs are bit-for-bit equal to the scalar backend.  Remainder elements go
// through the scalar law directly.

#include "kernels_backends.hpp"

#if defined(VSGCL_HAVE_AVX2_BACKEND)

#include <immintrin.h>

#include "vsgcl/limiters.hpp"

namespace vsgcl::kernels::avx2 {

namespace {

const __m256d kSignBit = _mm256_set1_pd(-0.0);

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(kSignBit, x); }
inline __m256d vneg(__m256d x) { return _mm256_xor_pd(x, kSignBit); }

// (x < 0) ? -mag : mag, the vector twin of the scalar sign selection.
inline __m256d apply_sign(__m256d x, __m256d mag) {
  __m256d neg = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ);
  return _mm256_blendv_pd(mag, vneg(mag), neg);
}

}  // namespace

void limit_angle(const double* id, const double* iq, double i_max,
                 std::size_t n, double* od, double* oq) {
  const __m256d im = _mm256_set1_pd(i_max);
  const __m256d im2 = _mm256_mul_pd(im, im);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d d = _mm256_loadu_pd(id + k);
    __m256d q = _mm256_loadu_pd(iq + k);
    __m256d mag2 = _mm256_add_pd(_mm256_mul_pd(d, d), _mm256_mul_pd(q, q));
    __m256d sat = _mm256_cmp_pd(mag2, im2, _CMP_GT_OQ);
    __m256d s = _mm256_div_pd(im, _mm256_sqrt_pd(mag2));
    __m256d rd = _mm256_blendv_pd(d, _mm256_mul_pd(d, s), sat);
    __m256d rq = _mm256_blendv_pd(q, _mm256_mul_pd(q, s), sat);
    _mm256_storeu_pd(od + k, rd);
    _mm256_storeu_pd(oq + k, rq);
  }
  for (; k < n; ++k) {
    DqPhasor o = limit_angle_priority({id[k], iq[k]}, i_max);
    od[k] = o.d;
    oq[k] = o.q;
  }
}

void limit_d(const double* id, const double* iq, double i_max, std::size_t n,
             double* od, double* oq) {
  const __m256d im = _mm256_set1_pd(i_max);
  const __m256d im2 = _mm256_mul_pd(im, im);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d d = _mm256_loadu_pd(id + k);
    __m256d q = _mm256_loadu_pd(iq + k);
    __m256d mag2 = _mm256_add_pd(_mm256_mul_pd(d, d), _mm256_mul_pd(q, q));
    __m256d sat = _mm256_cmp_pd(mag2, im2, _CMP_GT_OQ);
    __m256d dmag = _mm256_min_pd(vabs(d), im);
    __m256d rd = apply_sign(d, dmag);
    __m256d head =
        _mm256_sqrt_pd(_mm256_sub_pd(im2, _mm256_mul_pd(dmag, dmag)));
    __m256d qmag = _mm256_min_pd(vabs(q), head);
    __m256d rq = apply_sign(q, qmag);
    _mm256_storeu_pd(od + k, _mm256_blendv_pd(d, rd, sat));
    _mm256_storeu_pd(oq + k, _mm256_blendv_pd(q, rq, sat));
  }
  for (; k < n; ++k) {
    DqPhasor o = limit_d_priority({id[k], iq[k]}, i_max);
    od[k] = o.d;
    oq[k] = o.q;
  }
}

void limit_q(const double* id, const double* iq, double i_max, std::size_t n,
             double* od, double* oq) {
  const __m256d im = _mm256_set1_pd(i_max);
  const __m256d im2 = _mm256_mul_pd(im, im);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d d = _mm256_loadu_pd(id + k);
    __m256d q = _mm256_loadu_pd(iq + k);
    __m256d mag2 = _mm256_add_pd(_mm256_mul_pd(d, d), _mm256_mul_pd(q, q));
    __m256d sat = _mm256_cmp_pd(mag2, im2, _CMP_GT_OQ);
    __m256d qmag = _mm256_min_pd(vabs(q), im);
    __m256d rq = apply_sign(q, qmag);
    __m256d head =
        _mm256_sqrt_pd(_mm256_sub_pd(im2, _mm256_mul_pd(qmag, qmag)));
    __m256d dmag = _mm256_min_pd(vabs(d), head);
    __m256d rd = apply_sign(d, dmag);
    _mm256_storeu_pd(od + k, _mm256_blendv_pd(d, rd, sat));
    _mm256_storeu_pd(oq + k, _mm256_blendv_pd(q, rq, sat));
  }
  for (; k < n; ++k) {
    DqPhasor o = limit_q_priority({id[k], iq[k]}, i_max);
    od[k] = o.d;
    oq[k] = o.q;
  }
}

void limit_adaptive(const double* id, const double* iq, const double* cos_sat,
                    const double* sin_sat, double i_max, std::size_t n,
                    double* od, double* oq) {
  const __m256d im = _mm256_set1_pd(i_max);
  const __m256d im2 = _mm256_mul_pd(im, im);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d d = _mm256_loadu_pd(id + k);
    __m256d q = _mm256_loadu_pd(iq + k);
    __m256d c = _mm256_loadu_pd(cos_sat + k);
    __m256d s = _mm256_loadu_pd(sin_sat + k);
    __m256d mag2 = _mm256_add_pd(_mm256_mul_pd(d, d), _mm256_mul_pd(q, q));
    __m256d sat = _mm256_cmp_pd(mag2, im2, _CMP_GT_OQ);
    __m256d rd = _mm256_mul_pd(im, c);
    __m256d rq = vneg(_mm256_mul_pd(im, s));
    _mm256_storeu_pd(od + k, _mm256_blendv_pd(d, rd, sat));
    _mm256_storeu_pd(oq + k, _mm256_blendv_pd(q, rq, sat));
  }
  for (; k < n; ++k) {
    DqPhasor o =
        limit_adaptive_trig({id[k], iq[k]}, i_max, cos_sat[k], sin_sat[k]);
    od[k] = o.d;
    oq[k] = o.q;
  }
}

void power(const double* vd, const double* vq, const double* id,
           const double* iq, std::size_t n, double* pe, double* qe) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d d = _mm256_loadu_pd(vd + k);
    __m256d q = _mm256_loadu_pd(vq + k);
    __m256d cd = _mm256_loadu_pd(id + k);
    __m256d cq = _mm256_loadu_pd(iq + k);
    __m256d p = _mm256_add_pd(_mm256_mul_pd(d, cd), _mm256_mul_pd(q, cq));
    __m256d r = _mm256_sub_pd(_mm256_mul_pd(q, cd), _mm256_mul_pd(d, cq));
    _mm256_storeu_pd(pe + k, p);
    _mm256_storeu_pd(qe + k, r);
  }
  for (; k < n; ++k) {
    double p = vd[k] * id[k] + vq[k] * iq[k];
    double q = vq[k] * id[k] - vd[k] * iq[k];
    pe[k] = p;
    qe[k] = q;
  }
}

}  // namespace vsgcl::kernels::avx2

#endif  // VSGCL_HAVE_AVX2_BACKEND
