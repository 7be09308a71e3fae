#include "ptlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <set>

#include <json.hpp>

#include "ptlab/error.hpp"
#include "ptlab/floquet.hpp"

namespace ptlab {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& item : obj.items()) {
    const auto& key = item.key();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(path + "/" + key, "unknown field '" + key + "'");
  }
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "/" + key, "missing required field");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "number must be finite");
  return d;
}

long as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

double number_or(const json& obj, const std::string& path, const std::string& key, double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, path + "/" + key);
}

std::vector<double> number_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path + "/" + std::to_string(i)));
  return out;
}

Scenario parse_scenario(const std::string& s, const std::string& path) {
  for (auto sc : {Scenario::spectrum, Scenario::scan_kappa, Scenario::phase_diagram, Scenario::threshold,
                  Scenario::propagate, Scenario::effective_coupling})
    if (to_string(sc) == s) return sc;
  fail(path, "unknown scenario '" + s +
                 "' (expected spectrum, scan_kappa, phase_diagram, threshold, propagate or effective_coupling)");
}

std::vector<double> parse_tunnelings(const json& v, const std::string& path, std::size_t count) {
  if (v.is_array()) return number_array(v, path);
  if (v.is_object()) {
    if (v.contains("uniform")) {
      check_keys(v, path, {"uniform"});
      return std::vector<double>(count, as_number(v["uniform"], path + "/uniform"));
    }
    if (v.contains("dimerized")) {
      check_keys(v, path, {"dimerized"});
      const auto& d = v["dimerized"];
      const std::string dp = path + "/dimerized";
      check_keys(d, dp, {"t", "c"});
      const double t = as_number(require(d, dp, "t"), dp + "/t");
      const double c = as_number(require(d, dp, "c"), dp + "/c");
      std::vector<double> out(count);
      for (std::size_t i = 0; i < count; ++i) out[i] = (i % 2 == 0) ? t : c * t;  // bond n = i + 1
      return out;
    }
  }
  fail(path, "expected an array, {\"uniform\": T} or {\"dimerized\": {\"t\": T, \"c\": c}}");
}

std::vector<double> parse_gammas(const json& v, const std::string& path, std::size_t n_sites) {
  if (v.is_array()) return number_array(v, path);
  if (v.is_object() && v.contains("alternating")) {
    check_keys(v, path, {"alternating"});
    const double g = as_number(v["alternating"], path + "/alternating");
    std::vector<double> out(n_sites);
    for (std::size_t i = 0; i < n_sites; ++i) out[i] = (i % 2 == 0) ? -g : g;  // (-1)^n gamma, n = i + 1
    return out;
  }
  fail(path, "expected an array or {\"alternating\": gamma}");
}

LatticeSpec parse_lattice(const json& v, const std::string& path) {
  check_keys(v, path, {"n_sites", "boundary", "tunnelings", "gammas"});
  Boundary boundary = Boundary::open;
  if (v.contains("boundary")) {
    const auto b = as_string(v["boundary"], path + "/boundary");
    if (b == "open") boundary = Boundary::open;
    else if (b == "periodic") boundary = Boundary::periodic;
    else fail(path + "/boundary", "expected \"open\" or \"periodic\"");
  }
  const json& gv = require(v, path, "gammas");
  std::size_t n = 0;
  if (v.contains("n_sites")) {
    const long count = as_integer(v["n_sites"], path + "/n_sites");
    if (count < 2) fail(path + "/n_sites", "lattice needs at least 2 sites");
    n = static_cast<std::size_t>(count);
  } else if (gv.is_array()) {
    n = gv.size();
  } else {
    fail(path + "/n_sites", "missing required field (gammas is not an explicit list)");
  }
  auto gammas = parse_gammas(gv, path + "/gammas", n);
  if (gammas.size() != n)
    fail(path + "/gammas", "expected " + std::to_string(n) + " values, got " + std::to_string(gammas.size()));
  const std::size_t bonds = boundary == Boundary::open ? n - 1 : n;
  auto tunnelings = parse_tunnelings(require(v, path, "tunnelings"), path + "/tunnelings", bonds);
  try {
    return LatticeSpec(std::move(tunnelings), std::move(gammas), boundary);
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    fail(path + (msg.find("balanced") != std::string::npos ? "/gammas" : ""), msg);
  }
}

ModulationTone parse_tone(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  if (v.contains("beta") && !v.contains("rational") && !v.contains("irrational"))
    fail(path + "/beta",
         "tone is missing its rationality tag; write \"rational\": [p, q] or \"irrational\": value instead of \"beta\"");
  check_keys(v, path, {"kappa", "phi", "rational", "irrational"});
  const double kappa = as_number(require(v, path, "kappa"), path + "/kappa");
  const double phi = number_or(v, path, "phi", 0.0);
  const bool rational = v.contains("rational");
  const bool irrational = v.contains("irrational");
  if (rational == irrational)
    fail(path, "tone needs exactly one rationality tag: \"rational\": [p, q] or \"irrational\": value");
  try {
    if (rational) {
      const auto& r = v["rational"];
      if (!r.is_array() || r.size() != 2) fail(path + "/rational", "expected [p, q]");
      const long p = as_integer(r[0], path + "/rational/0");
      const long q = as_integer(r[1], path + "/rational/1");
      return ModulationTone::rational(kappa, RationalBeta::make(p, q), phi);
    }
    return ModulationTone::irrational(kappa, as_number(v["irrational"], path + "/irrational"), phi);
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

ModulationSpec parse_modulation(const json& v, const std::string& path) {
  check_keys(v, path, {"l", "omega0", "tones"});
  const long l = as_integer(require(v, path, "l"), path + "/l");
  const double omega0 = number_or(v, path, "omega0", 1.0);
  if (!(omega0 > 0.0)) fail(path + "/omega0", "must be > 0");
  std::vector<ModulationTone> tones;
  if (v.contains("tones")) {
    const auto& t = v["tones"];
    if (!t.is_array()) fail(path + "/tones", "expected an array");
    for (std::size_t i = 0; i < t.size(); ++i) tones.push_back(parse_tone(t[i], path + "/tones/" + std::to_string(i)));
  }
  return ModulationSpec(static_cast<int>(l), omega0, std::move(tones));
}

Range parse_range(const json& v, const std::string& path, std::initializer_list<std::string_view> extra = {}) {
  std::vector<std::string_view> keys{"min", "max", "points"};
  keys.insert(keys.end(), extra.begin(), extra.end());
  if (!v.is_object()) fail(path, "expected an object");
  for (const auto& item : v.items())
    if (std::find(keys.begin(), keys.end(), item.key()) == keys.end())
      fail(path + "/" + item.key(), "unknown field '" + item.key() + "'");
  Range r;
  r.min = as_number(require(v, path, "min"), path + "/min");
  r.max = as_number(require(v, path, "max"), path + "/max");
  const long points = as_integer(require(v, path, "points"), path + "/points");
  if (points < 2) fail(path + "/points", "need at least 2 points");
  if (points > 100000) fail(path + "/points", "at most 100000 points");
  if (!(r.min < r.max)) fail(path, "min must be < max");
  r.points = static_cast<int>(points);
  return r;
}

json tone_to_json(const ModulationTone& t) {
  json j{{"kappa", t.kappa()}, {"phi", t.phi()}};
  if (t.is_rational()) j["rational"] = {t.ratio()->p, t.ratio()->q};
  else j["irrational"] = t.beta();
  return j;
}

json range_to_json(const Range& r) { return json{{"min", r.min}, {"max", r.max}, {"points", r.points}}; }

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::spectrum: return "spectrum";
    case Scenario::scan_kappa: return "scan_kappa";
    case Scenario::phase_diagram: return "phase_diagram";
    case Scenario::threshold: return "threshold";
    case Scenario::propagate: return "propagate";
    case Scenario::effective_coupling: return "effective_coupling";
  }
  return "unknown";
}

std::string_view to_string(CouplingMethod m) {
  switch (m) {
    case CouplingMethod::automatic: return "auto";
    case CouplingMethod::analytic: return "analytic";
    case CouplingMethod::numeric: return "numeric";
  }
  return "unknown";
}

std::vector<double> Range::values() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  const double step = (max - min) / (points - 1);
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = (i + 1 == points) ? max : min + step * i;
  return out;
}

ModulationSpec with_tone_kappa(const ModulationSpec& spec, std::size_t tone, double kappa) {
  std::vector<ModulationTone> tones(spec.tones().begin(), spec.tones().end());
  if (tone >= tones.size()) throw DomainError("tone index out of range");
  const auto& t = tones[tone];
  tones[tone] = t.is_rational() ? ModulationTone::rational(kappa, *t.ratio(), t.phi())
                                : ModulationTone::irrational(kappa, t.beta(), t.phi());
  return ModulationSpec(spec.l(), spec.omega0(), std::move(tones));
}

std::vector<double> gamma_profile(const LatticeSpec& lattice) {
  const auto g = lattice.gammas();
  double largest = 0.0;
  for (double v : g) largest = std::max(largest, std::abs(v));
  if (largest == 0.0) throw DomainError("gamma sweep needs a nonzero gammas profile");
  std::vector<double> out(g.begin(), g.end());
  for (auto& v : out) v /= largest;
  return out;
}

LatticeSpec lattice_with_gamma(const LatticeSpec& base, std::span<const double> profile, double strength) {
  std::vector<double> g(profile.begin(), profile.end());
  for (auto& v : g) v *= strength;
  return LatticeSpec(std::vector<double>(base.tunnelings().begin(), base.tunnelings().end()), std::move(g),
                     base.boundary());
}

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  const std::string path;
  check_keys(root, "", {"scenario", "lattice", "modulation", "coupling", "scan", "threshold", "propagate",
                        "tolerances", "output"});

  const Scenario scenario = parse_scenario(as_string(require(root, path, "scenario"), "/scenario"), "/scenario");
  LatticeSpec lattice = parse_lattice(require(root, path, "lattice"), "/lattice");
  ModulationSpec modulation = parse_modulation(require(root, path, "modulation"), "/modulation");
  RunConfig cfg{scenario, std::move(lattice), std::move(modulation), {}, {}, 0, {}, {}, {}, -1.0, {}};

  if (root.contains("coupling")) {
    const auto& c = root["coupling"];
    check_keys(c, "/coupling", {"method", "window_periods", "steps_per_period"});
    if (c.contains("method")) {
      const auto m = as_string(c["method"], "/coupling/method");
      if (m == "auto") cfg.coupling.method = CouplingMethod::automatic;
      else if (m == "analytic") cfg.coupling.method = CouplingMethod::analytic;
      else if (m == "numeric") cfg.coupling.method = CouplingMethod::numeric;
      else fail("/coupling/method", "expected \"auto\", \"analytic\" or \"numeric\"");
    }
    if (c.contains("window_periods")) {
      const long w = as_integer(c["window_periods"], "/coupling/window_periods");
      if (w < 1) fail("/coupling/window_periods", "must be >= 1");
      cfg.coupling.window_periods = static_cast<int>(w);
    }
    if (c.contains("steps_per_period")) {
      const long s = as_integer(c["steps_per_period"], "/coupling/steps_per_period");
      if (s < 64) fail("/coupling/steps_per_period", "must be >= 64");
      cfg.coupling.steps_per_period = static_cast<int>(s);
    }
  }
  if (cfg.coupling.method == CouplingMethod::analytic && !effective_coupling_analytic(cfg.modulation))
    fail("/coupling/method", "no closed-form coupling for this modulation; use \"numeric\"");

  if (root.contains("scan")) {
    const auto& s = root["scan"];
    check_keys(s, "/scan", {"kappa", "gamma_sq"});
    if (s.contains("kappa")) {
      cfg.kappa = parse_range(s["kappa"], "/scan/kappa", {"tone"});
      if (s["kappa"].contains("tone")) {
        const long t = as_integer(s["kappa"]["tone"], "/scan/kappa/tone");
        if (t < 0) fail("/scan/kappa/tone", "must be >= 0");
        cfg.kappa_tone = static_cast<std::size_t>(t);
      }
      if (cfg.kappa_tone >= cfg.modulation.tones().size())
        fail("/scan/kappa/tone", "modulation has no tone " + std::to_string(cfg.kappa_tone));
    }
    if (s.contains("gamma_sq")) {
      cfg.gamma_sq = parse_range(s["gamma_sq"], "/scan/gamma_sq");
      if (cfg.gamma_sq->min < 0.0) fail("/scan/gamma_sq/min", "must be >= 0");
    }
  }
  if (root.contains("threshold")) {
    const auto& t = root["threshold"];
    check_keys(t, "/threshold", {"gamma_max", "tol"});
    ThresholdOptions opt;
    opt.gamma_max = number_or(t, "/threshold", "gamma_max", opt.gamma_max);
    opt.tol = number_or(t, "/threshold", "tol", opt.tol);
    if (!(opt.gamma_max > 0.0)) fail("/threshold/gamma_max", "must be > 0");
    if (!(opt.tol > 0.0)) fail("/threshold/tol", "must be > 0");
    cfg.threshold = opt;
  }
  if (root.contains("propagate")) {
    const auto& p = root["propagate"];
    const std::string pp = "/propagate";
    check_keys(p, pp, {"z_end", "periods", "steps", "steps_per_period", "stride", "initial_site",
                       "initial_amplitudes"});
    PropagateOptions opt;
    if (p.contains("z_end") == p.contains("periods")) fail(pp, "give exactly one of z_end or periods");
    if (p.contains("z_end")) opt.z_end = as_number(p["z_end"], pp + "/z_end");
    else opt.z_end = as_number(p["periods"], pp + "/periods") * cfg.modulation.base_period();
    if (!(opt.z_end > 0.0)) fail(pp, "propagation length must be > 0");
    const long min_steps = static_cast<long>(std::ceil(64.0 * opt.z_end / cfg.modulation.base_period() - 1e-9));
    if (p.contains("steps") && p.contains("steps_per_period")) fail(pp, "give at most one of steps or steps_per_period");
    if (p.contains("steps")) {
      opt.steps = as_integer(p["steps"], pp + "/steps");
    } else {
      const long per = p.contains("steps_per_period") ? as_integer(p["steps_per_period"], pp + "/steps_per_period")
                                                      : 2048;
      opt.steps = static_cast<long>(std::ceil(per * opt.z_end / cfg.modulation.base_period() - 1e-9));
    }
    if (opt.steps < min_steps)
      fail(pp + "/steps", "need at least 64 steps per base period (" + std::to_string(min_steps) + ")");
    if (p.contains("stride")) {
      opt.stride = as_integer(p["stride"], pp + "/stride");
      if (opt.stride < 1) fail(pp + "/stride", "must be >= 1");
    }
    const std::size_t n = cfg.lattice.n_sites();
    if (p.contains("initial_amplitudes")) {
      if (p.contains("initial_site")) fail(pp, "give at most one of initial_site or initial_amplitudes");
      const auto& a = p["initial_amplitudes"];
      const std::string ap = pp + "/initial_amplitudes";
      if (!a.is_array() || a.size() != n) fail(ap, "expected " + std::to_string(n) + " entries");
      double power = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::string ip = ap + "/" + std::to_string(i);
        Complex z;
        if (a[i].is_number()) z = as_number(a[i], ip);
        else if (a[i].is_array() && a[i].size() == 2) z = {as_number(a[i][0], ip + "/0"), as_number(a[i][1], ip + "/1")};
        else fail(ip, "expected a number or [re, im]");
        power += std::norm(z);
        opt.initial_amplitudes.push_back(z);
      }
      if (!(power > 0.0)) fail(ap, "initial state must have nonzero power");
    } else if (p.contains("initial_site")) {
      const long site = as_integer(p["initial_site"], pp + "/initial_site");
      if (site < 1 || static_cast<std::size_t>(site) > n) fail(pp + "/initial_site", "site must be in 1..N");
      opt.initial_site = static_cast<std::size_t>(site);
    }
    cfg.propagate = opt;
  }
  if (root.contains("tolerances")) {
    const auto& t = root["tolerances"];
    check_keys(t, "/tolerances", {"tol_im"});
    cfg.tol_im = number_or(t, "/tolerances", "tol_im", -1.0);
    if (t.contains("tol_im") && !(cfg.tol_im > 0.0)) fail("/tolerances/tol_im", "must be > 0");
  }
  if (root.contains("output")) cfg.output = as_string(root["output"], "/output");

  switch (cfg.scenario) {
    case Scenario::scan_kappa:
      if (!cfg.kappa) fail("/scan/kappa", "scenario scan_kappa needs a kappa range");
      break;
    case Scenario::phase_diagram:
      if (!cfg.kappa) fail("/scan/kappa", "scenario phase_diagram needs a kappa range");
      if (!cfg.gamma_sq) fail("/scan/gamma_sq", "scenario phase_diagram needs a gamma_sq range");
      break;
    case Scenario::threshold:
      if (!cfg.threshold) cfg.threshold = ThresholdOptions{};
      break;
    case Scenario::propagate:
      if (!cfg.propagate) fail("/propagate", "scenario propagate needs propagation settings");
      break;
    default:
      break;
  }
  if (cfg.scenario == Scenario::phase_diagram || cfg.scenario == Scenario::threshold) {
    try {
      gamma_profile(cfg.lattice);
    } catch (const DomainError& e) {
      fail("/lattice/gammas", e.what());
    }
  }
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  json root;
  root["scenario"] = std::string(to_string(cfg.scenario));
  const auto& lat = cfg.lattice;
  root["lattice"] = {{"n_sites", lat.n_sites()},
                     {"boundary", lat.boundary() == Boundary::open ? "open" : "periodic"},
                     {"tunnelings", std::vector<double>(lat.tunnelings().begin(), lat.tunnelings().end())},
                     {"gammas", std::vector<double>(lat.gammas().begin(), lat.gammas().end())}};
  json tones = json::array();
  for (const auto& t : cfg.modulation.tones()) tones.push_back(tone_to_json(t));
  root["modulation"] = {{"l", cfg.modulation.l()}, {"omega0", cfg.modulation.omega0()}, {"tones", tones}};
  root["coupling"] = {{"method", std::string(to_string(cfg.coupling.method))},
                      {"window_periods", cfg.coupling.window_periods},
                      {"steps_per_period", cfg.coupling.steps_per_period}};
  if (cfg.kappa || cfg.gamma_sq) {
    json scan = json::object();
    if (cfg.kappa) {
      scan["kappa"] = range_to_json(*cfg.kappa);
      scan["kappa"]["tone"] = cfg.kappa_tone;
    }
    if (cfg.gamma_sq) scan["gamma_sq"] = range_to_json(*cfg.gamma_sq);
    root["scan"] = scan;
  }
  if (cfg.threshold) root["threshold"] = {{"gamma_max", cfg.threshold->gamma_max}, {"tol", cfg.threshold->tol}};
  if (cfg.propagate) {
    const auto& p = *cfg.propagate;
    json pj{{"z_end", p.z_end}, {"steps", p.steps}, {"stride", p.stride}};
    if (p.initial_amplitudes.empty()) {
      pj["initial_site"] = p.initial_site;
    } else {
      json amps = json::array();
      for (const auto& a : p.initial_amplitudes) amps.push_back({a.real(), a.imag()});
      pj["initial_amplitudes"] = amps;
    }
    root["propagate"] = pj;
  }
  if (cfg.tol_im > 0.0) root["tolerances"] = {{"tol_im", cfg.tol_im}};
  if (!cfg.output.empty()) root["output"] = cfg.output;
  return root.dump(2) + "\n";
}

}  // namespace ptlab
