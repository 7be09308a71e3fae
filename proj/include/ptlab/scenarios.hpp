#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "ptlab/config.hpp"
#include "ptlab/csv.hpp"
#include "ptlab/floquet.hpp"
#include "ptlab/spectra.hpp"

namespace ptlab {

/// Tables produced by one run. The first table is the primary output.
struct RunOutput {
  std::vector<Table> tables;
  /// A numerical failure was recorded in the data (propagation overflow).
  bool numerical_failure = false;
};

struct PhaseCell {
  double max_abs_imag = 0.0;
  bool is_real = true;
};

/// Reality map over (kappa, gamma^2 / T_1^2); cells[i_kappa][i_gamma].
struct PhaseDiagram {
  std::vector<double> kappa_axis;
  std::vector<double> gamma_sq_axis;
  std::vector<std::vector<PhaseCell>> cells;
};

/// Coupling used to build H_eff for a modulation under the configured method.
EffectiveCoupling resolve_coupling(const ModulationSpec& spec, const CouplingOptions& options);

/// Runs the configured scenario. Work is split over `threads` workers; the
/// output does not depend on the thread count.
RunOutput run(const RunConfig& config, unsigned threads = 1);

PhaseDiagram compute_phase_diagram(const RunConfig& config, unsigned threads = 1);

RunOutput run_spectrum(const RunConfig& config);
RunOutput run_scan_kappa(const RunConfig& config, unsigned threads = 1);
RunOutput run_phase_diagram(const RunConfig& config, unsigned threads = 1);
RunOutput run_threshold(const RunConfig& config);
RunOutput run_propagate(const RunConfig& config);
RunOutput run_effective_coupling(const RunConfig& config);

/// Calls body(i) for i in [0, count) on up to `threads` workers, in contiguous
/// blocks. The first exception thrown by any call is rethrown.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    const std::size_t block = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = w * block;
      const std::size_t end = std::min(count, begin + block);
      if (begin >= end) break;
      workers.emplace_back([&, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace ptlab
