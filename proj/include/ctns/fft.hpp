#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include <fftw3.h>

#include "ctns/grid.hpp"

namespace ctns::detail {

/// Process-wide FFTW plan cache keyed by (dim, n, sign).
///
/// Plans are created with FFTW_ESTIMATE | FFTW_UNALIGNED so that
/// fftw_execute_dft may run on any caller-owned buffer; plan creation is
/// serialized (the FFTW planner is not thread safe), execution is not.
class FftPlans {
 public:
  static void execute(int dim, int n, int sign, std::complex<double>* data) {
    fftw_plan plan = nullptr;
    {
      static std::mutex mu;
      std::lock_guard<std::mutex> lock(mu);
      static std::map<std::tuple<int, int, int>, fftw_plan> cache;
      auto key = std::make_tuple(dim, n, sign);
      auto it = cache.find(key);
      if (it == cache.end()) {
        std::size_t count = 1;
        for (int d = 0; d < dim; ++d) count *= static_cast<std::size_t>(n);
        std::vector<std::complex<double>> scratch(count);
        int dims[3] = {n, n, n};
        plan = fftw_plan_dft(dim, dims, reinterpret_cast<fftw_complex*>(scratch.data()),
                             reinterpret_cast<fftw_complex*>(scratch.data()), sign,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache.emplace(key, plan);
      } else {
        plan = it->second;
      }
    }
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
  }
};

inline void fft_forward(const TorusGrid& g, std::complex<double>* data) {
  FftPlans::execute(g.dim(), g.n(), FFTW_FORWARD, data);
}

inline void fft_backward(const TorusGrid& g, std::complex<double>* data) {
  FftPlans::execute(g.dim(), g.n(), FFTW_BACKWARD, data);
}

}  // namespace ctns::detail
