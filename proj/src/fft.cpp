#include "xpmlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace xpmlab::fft {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Plan creation touches FFTW's global planner state and must be serialized;
// fftw_execute_dft on caller buffers is thread-safe. FFTW_UNALIGNED keeps the
// plans valid for any std::vector storage.
PlanPair plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;

  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::complex<double>> scratch(n);
  auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
  PlanPair pair;
  pair.forward = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, FFTW_FORWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
  pair.backward = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(n, pair);
  return pair;
}

} // namespace

void forward_inplace(std::complex<double>* data, std::size_t n) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plans_for(n).forward, ptr, ptr);
}

void inverse_inplace(std::complex<double>* data, std::size_t n) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plans_for(n).backward, ptr, ptr);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) data[i] *= scale;
}

} // namespace xpmlab::fft
