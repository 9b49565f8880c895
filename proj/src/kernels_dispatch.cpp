// SPDX-License-Identifier: Apache-2.0
//
// Runtime backend selection: CPU probe plus VSG_CL_KERNELS override.

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "kernels_backends.hpp"
#include "vsgcl/errors.hpp"
#include "vsgcl/kernels.hpp"
#include "vsgcl/log.hpp"

namespace vsgcl::kernels {

namespace {

constexpr KernelSet kScalarSet = {
    &scalar::limit_angle, &scalar::limit_d, &scalar::limit_q,
    &scalar::limit_adaptive, &scalar::power};

#if defined(VSGCL_HAVE_AVX2_BACKEND)
constexpr KernelSet kAvx2Set = {&avx2::limit_angle, &avx2::limit_d,
                                &avx2::limit_q, &avx2::limit_adaptive,
                                &avx2::power};
#endif

bool cpu_has_avx2() {
#if defined(VSGCL_HAVE_AVX2_BACKEND) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend default_backend() {
  Backend best = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
  if (const char* e = std::getenv("VSG_CL_KERNELS")) {
    if (std::strcmp(e, "scalar") == 0) {
      best = Backend::scalar;
    } else if (std::strcmp(e, "avx2") == 0) {
      if (backend_supported(Backend::avx2)) {
        best = Backend::avx2;
      } else {
        log_warn("VSG_CL_KERNELS=avx2 requested but unavailable; "
                 "falling back to scalar");
        best = Backend::scalar;
      }
    } else if (std::strcmp(e, "auto") != 0) {
      log_warn(std::string("unrecognized VSG_CL_KERNELS value '") + e +
               "'; using auto selection");
    }
  }
  return best;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{default_backend()};
  return slot;
}

const KernelSet& active_set() {
  const KernelSet* set = backend_kernels(active_backend());
  return set != nullptr ? *set : kScalarSet;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "?";
}

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2: return cpu_has_avx2();
  }
  return false;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_supported(b)) {
    throw Error(std::string("kernel backend '") + backend_name(b) +
                "' is not available on this machine");
  }
  backend_slot().store(b, std::memory_order_relaxed);
}

const KernelSet* backend_kernels(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &kScalarSet;
    case Backend::avx2:
#if defined(VSGCL_HAVE_AVX2_BACKEND)
      return cpu_has_avx2() ? &kAvx2Set : nullptr;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

void limit_angle_batch(const double* id, const double* iq, double i_max,
                       std::size_t n, double* od, double* oq) {
  active_set().limit_angle(id, iq, i_max, n, od, oq);
}

void limit_d_batch(const double* id, const double* iq, double i_max,
                   std::size_t n, double* od, double* oq) {
  active_set().limit_d(id, iq, i_max, n, od, oq);
}

void limit_q_batch(const double* id, const double* iq, double i_max,
                   std::size_t n, double* od, double* oq) {
  active_set().limit_q(id, iq, i_max, n, od, oq);
}

void limit_adaptive_batch(const double* id, const double* iq,
                          const double* cos_sat, const double* sin_sat,
                          double i_max, std::size_t n, double* od, double* oq) {
  active_set().limit_adaptive(id, iq, cos_sat, sin_sat, i_max, n, od, oq);
}

void power_batch(const double* vd, const double* vq, const double* id,
                 const double* iq, std::size_t n, double* pe, double* qe) {
  active_set().power(vd, vq, id, iq, n, pe, qe);
}

}  // namespace vsgcl::kernels
