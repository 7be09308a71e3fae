#include "ptlab/scenarios.hpp"

#include <cmath>
#include <string>

#include "ptlab/error.hpp"
#include "ptlab/propagation.hpp"

namespace ptlab {
namespace {

std::string flag(bool b) { return b ? "true" : "false"; }

std::string fmt(double v) { return format_double(v); }

double reference_tunneling(const LatticeSpec& lattice) { return lattice.tunnelings()[0]; }

}  // namespace

EffectiveCoupling resolve_coupling(const ModulationSpec& spec, const CouplingOptions& options) {
  if (options.method != CouplingMethod::numeric) {
    if (auto pair = effective_coupling_analytic(spec)) return pair->normalized;
    if (options.method == CouplingMethod::analytic)
      throw DomainError("no closed-form coupling for this modulation");
  }
  return effective_coupling_numeric(spec, options.window_periods, options.steps_per_period).coupling;
}

RunOutput run_spectrum(const RunConfig& cfg) {
  const auto coupling = resolve_coupling(cfg.modulation, cfg.coupling);
  const auto spectrum = eigenvalues_dense(build_effective_hamiltonian(cfg.lattice, coupling), cfg.tol_im);
  Table eig{"spectrum", {"eig_index", "re_E", "im_E"}, {}};
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k)
    eig.rows.push_back({std::to_string(k), fmt(spectrum.eigenvalues[k].real()), fmt(spectrum.eigenvalues[k].imag())});
  Table summary{"summary", {"max_abs_imag", "is_real"}, {{fmt(spectrum.max_abs_imag), flag(spectrum.is_real)}}};
  return {{std::move(eig), std::move(summary)}, false};
}

RunOutput run_scan_kappa(const RunConfig& cfg, unsigned threads) {
  const auto kappas = cfg.kappa->values();
  std::vector<SpectrumResult> results(kappas.size());
  parallel_for(kappas.size(), threads, [&](std::size_t i) {
    const auto spec = with_tone_kappa(cfg.modulation, cfg.kappa_tone, kappas[i]);
    const auto coupling = resolve_coupling(spec, cfg.coupling);
    results[i] = eigenvalues_dense(build_effective_hamiltonian(cfg.lattice, coupling), cfg.tol_im);
  });

  Table eig{"eigenvalues", {"kappa", "eig_index", "re_E", "im_E"}, {}};
  Table summary{"summary", {"kappa", "max_abs_imag", "is_real"}, {}};
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    const auto& r = results[i];
    const std::string k = fmt(kappas[i]);
    for (std::size_t e = 0; e < r.eigenvalues.size(); ++e)
      eig.rows.push_back({k, std::to_string(e), fmt(r.eigenvalues[e].real()), fmt(r.eigenvalues[e].imag())});
    summary.rows.push_back({k, fmt(r.max_abs_imag), flag(r.is_real)});
  }
  return {{std::move(eig), std::move(summary)}, false};
}

PhaseDiagram compute_phase_diagram(const RunConfig& cfg, unsigned threads) {
  if (!cfg.kappa || !cfg.gamma_sq) throw ConfigError("phase diagram needs kappa and gamma_sq ranges");
  PhaseDiagram pd;
  pd.kappa_axis = cfg.kappa->values();
  pd.gamma_sq_axis = cfg.gamma_sq->values();
  pd.cells.assign(pd.kappa_axis.size(), std::vector<PhaseCell>(pd.gamma_sq_axis.size()));
  const auto profile = gamma_profile(cfg.lattice);
  const double t_ref = reference_tunneling(cfg.lattice);

  parallel_for(pd.kappa_axis.size(), threads, [&](std::size_t i) {
    const auto spec = with_tone_kappa(cfg.modulation, cfg.kappa_tone, pd.kappa_axis[i]);
    const auto coupling = resolve_coupling(spec, cfg.coupling);
    for (std::size_t j = 0; j < pd.gamma_sq_axis.size(); ++j) {
      const double gamma = std::sqrt(pd.gamma_sq_axis[j]) * t_ref;
      const auto lattice = lattice_with_gamma(cfg.lattice, profile, gamma);
      const auto r = eigenvalues_dense(build_effective_hamiltonian(lattice, coupling), cfg.tol_im);
      pd.cells[i][j] = {r.max_abs_imag, r.is_real};
    }
  });
  return pd;
}

RunOutput run_phase_diagram(const RunConfig& cfg, unsigned threads) {
  const auto pd = compute_phase_diagram(cfg, threads);
  Table t{"phase_diagram", {"kappa", "gamma_sq_over_T_sq", "max_abs_imag", "is_real"}, {}};
  t.rows.reserve(pd.kappa_axis.size() * pd.gamma_sq_axis.size());
  for (std::size_t i = 0; i < pd.kappa_axis.size(); ++i)
    for (std::size_t j = 0; j < pd.gamma_sq_axis.size(); ++j)
      t.rows.push_back({fmt(pd.kappa_axis[i]), fmt(pd.gamma_sq_axis[j]), fmt(pd.cells[i][j].max_abs_imag),
                        flag(pd.cells[i][j].is_real)});
  return {{std::move(t)}, false};
}

RunOutput run_threshold(const RunConfig& cfg) {
  const auto opt = cfg.threshold.value_or(ThresholdOptions{});
  const auto coupling = resolve_coupling(cfg.modulation, cfg.coupling);
  const auto profile = gamma_profile(cfg.lattice);
  const auto result = pt_threshold(
      [&](double gamma) { return build_effective_hamiltonian(lattice_with_gamma(cfg.lattice, profile, gamma), coupling); },
      opt.gamma_max, opt.tol, cfg.tol_im);

  Table t{"threshold", {"n_sites", "boundary", "l", "omega0"}, {}};
  std::vector<std::string> row{std::to_string(cfg.lattice.n_sites()),
                               cfg.lattice.boundary() == Boundary::open ? "open" : "periodic",
                               std::to_string(cfg.modulation.l()), fmt(cfg.modulation.omega0())};
  const auto tones = cfg.modulation.tones();
  for (std::size_t i = 0; i < tones.size(); ++i) {
    const std::string k = std::to_string(i);
    t.header.insert(t.header.end(), {"kappa_" + k, "beta_" + k, "phi_" + k});
    row.insert(row.end(), {fmt(tones[i].kappa()), fmt(tones[i].beta()), fmt(tones[i].phi())});
  }
  t.header.insert(t.header.end(), {"gamma_max", "tol", "gamma_star"});
  row.insert(row.end(), {fmt(opt.gamma_max), fmt(opt.tol),
                         result.status == ThresholdStatus::unbroken ? "unbroken" : fmt(result.gamma_star)});
  t.rows.push_back(std::move(row));
  return {{std::move(t)}, false};
}

RunOutput run_propagate(const RunConfig& cfg) {
  const auto& opt = *cfg.propagate;
  const std::size_t n = cfg.lattice.n_sites();
  StateVector psi0 = opt.initial_amplitudes.empty() ? StateVector::localized(n, opt.initial_site)
                                                    : StateVector{opt.initial_amplitudes, 0.0};

  Table t{"trace", {"z", "site", "re_psi", "im_psi", "power", "status"}, {}};
  long calls = 0;
  double last_z = -1.0;
  auto record = [&](const StateVector& s) {
    const double p = s.power();
    for (std::size_t i = 0; i < n; ++i)
      t.rows.push_back({fmt(s.z), std::to_string(i + 1), fmt(s.amplitudes[i].real()), fmt(s.amplitudes[i].imag()),
                        fmt(p), "ok"});
    last_z = s.z;
  };
  const auto result = propagate(cfg.lattice, cfg.modulation, psi0, opt.z_end, opt.steps, [&](const StateVector& s) {
    if (calls++ % opt.stride == 0) record(s);
  });
  if (last_z != result.state.z) record(result.state);
  const bool overflow = result.status == PropagationStatus::overflow;
  for (std::size_t i = t.rows.size() - n; i < t.rows.size(); ++i) t.rows[i].back() = overflow ? "overflow" : "final";
  return {{std::move(t)}, overflow};
}

RunOutput run_effective_coupling(const RunConfig& cfg) {
  Table t{"coupling", {"method", "re", "im", "magnitude", "peierls_phase"}, {}};
  auto add = [&t](const std::string& method, const EffectiveCoupling& c) {
    t.rows.push_back({method, fmt(c.value.real()), fmt(c.value.imag()), fmt(c.magnitude), fmt(c.peierls_phase)});
  };
  if (cfg.coupling.method != CouplingMethod::numeric) {
    if (auto pair = effective_coupling_analytic(cfg.modulation)) {
      add("analytic", pair->normalized);
      add("analytic_raw", pair->raw);
    }
  }
  if (cfg.coupling.method != CouplingMethod::analytic) {
    const auto numeric =
        effective_coupling_numeric(cfg.modulation, cfg.coupling.window_periods, cfg.coupling.steps_per_period);
    add("numeric", numeric.coupling);
  }
  return {{std::move(t)}, false};
}

RunOutput run(const RunConfig& cfg, unsigned threads) {
  switch (cfg.scenario) {
    case Scenario::spectrum: return run_spectrum(cfg);
    case Scenario::scan_kappa: return run_scan_kappa(cfg, threads);
    case Scenario::phase_diagram: return run_phase_diagram(cfg, threads);
    case Scenario::threshold: return run_threshold(cfg);
    case Scenario::propagate: return run_propagate(cfg);
    case Scenario::effective_coupling: return run_effective_coupling(cfg);
  }
  throw ConfigError("unknown scenario");
}

}  // namespace ptlab
