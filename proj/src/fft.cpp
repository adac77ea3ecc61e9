#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <utility>

namespace nsg::detail {

namespace {

// The FFTW planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Plan {
  fftw_plan plan = nullptr;
  fftw_complex* buf = nullptr;
  Index n = 0;

  Plan(Index size, int sign) : n(size) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
    fftw_free(buf);
  }

  void run(const Complex* in, Complex* out) {
    std::memcpy(buf, in, sizeof(Complex) * static_cast<std::size_t>(n));
    fftw_execute(plan);
    std::memcpy(static_cast<void*>(out), buf, sizeof(Complex) * static_cast<std::size_t>(n));
  }
};

Plan& plan_for(Index n, int sign) {
  thread_local std::map<std::pair<Index, int>, Plan> cache;
  auto it = cache.find({n, sign});
  if (it == cache.end()) {
    it = cache.emplace(std::piecewise_construct, std::forward_as_tuple(n, sign),
                       std::forward_as_tuple(n, sign))
             .first;
  }
  return it->second;
}

}  // namespace

void dft_forward(const Complex* in, Complex* out, Index n) {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  plan_for(n, FFTW_FORWARD).run(in, out);
}

void dft_backward(const Complex* in, Complex* out, Index n) {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  plan_for(n, FFTW_BACKWARD).run(in, out);
}

}  // namespace nsg::detail
