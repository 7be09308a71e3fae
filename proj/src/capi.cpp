#include "ptlab/ptlab.h"

#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "ptlab/bessel.hpp"
#include "ptlab/config.hpp"
#include "ptlab/error.hpp"
#include "ptlab/floquet.hpp"
#include "ptlab/scenarios.hpp"
#include "ptlab/spectra.hpp"

struct ptlab_config {
  ptlab::RunConfig config;
  std::string scenario;
  std::string echo;
};

struct ptlab_result {
  std::vector<std::string> names;
  std::vector<std::string> csv;
};

namespace {

thread_local std::string last_error;

ptlab_status fail(ptlab_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Maps the library's exception types onto status codes.
template <class F>
ptlab_status guarded(F&& f) {
  try {
    return f();
  } catch (const ptlab::ConfigError& e) {
    return fail(PTLAB_ERR_CONFIG, e.what());
  } catch (const ptlab::DomainError& e) {
    return fail(PTLAB_ERR_CONFIG, e.what());
  } catch (const ptlab::NumericalError& e) {
    return fail(PTLAB_ERR_NUMERICAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PTLAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PTLAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PTLAB_ERR_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* ptlab_version(void) { return PTLAB_VERSION; }

const char* ptlab_last_error(void) { return last_error.c_str(); }

ptlab_status ptlab_config_parse(const char* text, size_t length, ptlab_config** out) {
  if (!text || !out) return fail(PTLAB_ERR_INTERNAL, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto cfg = ptlab::parse_config(std::string_view(text, length));
    auto scenario = std::string(ptlab::to_string(cfg.scenario));
    auto echo = ptlab::serialize_config(cfg);
    *out = new ptlab_config{std::move(cfg), std::move(scenario), std::move(echo)};
    return PTLAB_OK;
  });
}

ptlab_status ptlab_config_load(const char* path, ptlab_config** out) {
  if (!path || !out) return fail(PTLAB_ERR_INTERNAL, "null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(PTLAB_ERR_IO, std::string("cannot open config file '") + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  return ptlab_config_parse(text.data(), text.size(), out);
}

void ptlab_config_free(ptlab_config* config) { delete config; }

const char* ptlab_config_scenario(const ptlab_config* config) { return config ? config->scenario.c_str() : ""; }

const char* ptlab_config_output(const ptlab_config* config) { return config ? config->config.output.c_str() : ""; }

const char* ptlab_config_echo(const ptlab_config* config) { return config ? config->echo.c_str() : ""; }

ptlab_status ptlab_run(const ptlab_config* config, unsigned threads, ptlab_result** out) {
  if (!config || !out) return fail(PTLAB_ERR_INTERNAL, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto output = ptlab::run(config->config, threads == 0 ? 1 : threads);
    auto* result = new ptlab_result;
    for (const auto& t : output.tables) {
      result->names.push_back(t.name);
      result->csv.push_back(t.to_csv());
    }
    *out = result;
    if (output.numerical_failure) return fail(PTLAB_ERR_NUMERICAL, "propagation overflowed");
    return PTLAB_OK;
  });
}

void ptlab_result_free(ptlab_result* result) { delete result; }

size_t ptlab_result_table_count(const ptlab_result* result) { return result ? result->names.size() : 0; }

const char* ptlab_result_table_name(const ptlab_result* result, size_t index) {
  return (result && index < result->names.size()) ? result->names[index].c_str() : nullptr;
}

const char* ptlab_result_table_csv(const ptlab_result* result, size_t index) {
  return (result && index < result->csv.size()) ? result->csv[index].c_str() : nullptr;
}

ptlab_status ptlab_bessel_j(int order, double x, double* out) {
  if (!out) return fail(PTLAB_ERR_INTERNAL, "null argument");
  return guarded([&] {
    *out = ptlab::bessel_j(order, x);
    return PTLAB_OK;
  });
}

ptlab_status ptlab_effective_coupling_monochromatic(int l, double kappa, double phi, double out[2]) {
  if (!out) return fail(PTLAB_ERR_INTERNAL, "null argument");
  return guarded([&] {
    const auto c = ptlab::effective_coupling_monochromatic(l, kappa, phi).normalized;
    out[0] = c.value.real();
    out[1] = c.value.imag();
    return PTLAB_OK;
  });
}

ptlab_status ptlab_dimer_spectrum(double t, int l, double kappa, double gamma, double out[4]) {
  if (!out) return fail(PTLAB_ERR_INTERNAL, "null argument");
  return guarded([&] {
    const auto s = ptlab::dimer_spectrum(t, l, kappa, gamma);
    for (std::size_t i = 0; i < 2; ++i) {
      out[2 * i] = s.eigenvalues[i].real();
      out[2 * i + 1] = s.eigenvalues[i].imag();
    }
    return PTLAB_OK;
  });
}

ptlab_status ptlab_eigenvalues(size_t n, const double* entries, double* out) {
  if (!entries || !out) return fail(PTLAB_ERR_INTERNAL, "null argument");
  return guarded([&] {
    std::vector<ptlab::Complex> m(n * n);
    for (std::size_t i = 0; i < n * n; ++i) m[i] = {entries[2 * i], entries[2 * i + 1]};
    const auto s = ptlab::eigenvalues_dense(ptlab::ComplexMatrix(n, std::move(m)));
    for (std::size_t i = 0; i < n; ++i) {
      out[2 * i] = s.eigenvalues[i].real();
      out[2 * i + 1] = s.eigenvalues[i].imag();
    }
    return PTLAB_OK;
  });
}

}  // extern "C"
