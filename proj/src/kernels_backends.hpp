// SPDX-License-Identifier: Apache-2.0
//
// Internal declarations shared between the backend TUs and the dispatcher.
// Not installed; the public surface is kernels.hpp.
#pragma once

#include <cstddef>

namespace vsgcl::kernels::scalar {
void limit_angle(const double*, const double*, double, std::size_t, double*,
                 double*);
void limit_d(const double*, const double*, double, std::size_t, double*,
             double*);
void limit_q(const double*, const double*, double, std::size_t, double*,
             double*);
void limit_adaptive(const double*, const double*, const double*, const double*,
                    double, std::size_t, double*, double*);
void power(const double*, const double*, const double*, const double*,
           std::size_t, double*, double*);
}  // namespace vsgcl::kernels::scalar

#if defined(VSGCL_HAVE_AVX2_BACKEND)
namespace vsgcl::kernels::avx2 {
void limit_angle(const double*, const double*, double, std::size_t, double*,
                 double*);
void limit_d(const double*, const double*, double, std::size_t, double*,
             double*);
void limit_q(const double*, const double*, double, std::size_t, double*,
             double*);
void limit_adaptive(const double*, const double*, const double*, const double*,
                    double, std::size_t, double*, double*);
void power(const double*, const double*, const double*, const double*,
           std::size_t, double*, double*);
}  // namespace vsgcl::kernels::avx2
#endif
