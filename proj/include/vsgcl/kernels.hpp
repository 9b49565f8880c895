// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

namespace vsgcl::kernels {

// Batch kernels over parallel arrays, with a scalar reference backend and an
// AVX2 backend selected at runtime.  The two are bit-for-bit equivalent (the
// library is built with FP contraction off and the scalar laws mirror the
// vector operation semantics), so backend choice never changes results.
enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);

// True when the backend is compiled in and runnable on this CPU.
bool backend_supported(Backend b);

// Active backend.  Defaults to the best supported one; the environment
// variable VSG_CL_KERNELS=scalar|avx2|auto overrides the default.
Backend active_backend();

// Explicit selection; throws vsgcl::Error if the backend is unsupported.
void set_backend(Backend b);

// Limit a batch of current references.  Output arrays may alias the inputs.
void limit_angle_batch(const double* id, const double* iq, double i_max,
                       std::size_t n, double* od, double* oq);
void limit_d_batch(const double* id, const double* iq, double i_max,
                   std::size_t n, double* od, double* oq);
void limit_q_batch(const double* id, const double* iq, double i_max,
                   std::size_t n, double* od, double* oq);
// cos_sat/sin_sat hold cos/sin of the per-element saturation angle
// (delta/2 + phi), precomputed by the caller.
void limit_adaptive_batch(const double* id, const double* iq,
                          const double* cos_sat, const double* sin_sat,
                          double i_max, std::size_t n, double* od, double* oq);

// pe[k] = vd*id + vq*iq,  qe[k] = vq*id - vd*iq.
void power_batch(const double* vd, const double* vq, const double* id,
                 const double* iq, std::size_t n, double* pe, double* qe);

// Function table for one backend; lets the equivalence tests drive a specific
// backend without naming symbols that may not be compiled on this platform.
struct KernelSet {
  void (*limit_angle)(const double*, const double*, double, std::size_t,
                      double*, double*);
  void (*limit_d)(const double*, const double*, double, std::size_t, double*,
                  double*);
  void (*limit_q)(const double*, const double*, double, std::size_t, double*,
                  double*);
  void (*limit_adaptive)(const double*, const double*, const double*,
                         const double*, double, std::size_t, double*, double*);
  void (*power)(const double*, const double*, const double*, const double*,
                std::size_t, double*, double*);
};

// nullptr when the backend is not compiled in or not runnable on this CPU.
const KernelSet* backend_kernels(Backend b);

}  // namespace vsgcl::kernels
