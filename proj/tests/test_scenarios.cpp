#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "ptlab/bessel.hpp"
#include "ptlab/scenarios.hpp"

using namespace ptlab;

namespace {

std::string chain_config(double gamma, const std::string& scenario, const std::string& extra) {
  std::ostringstream s;
  s << R"({"scenario": ")" << scenario << R"(",
    "lattice": {"n_sites": 16, "tunnelings": {"uniform": 1.0}, "gammas": {"alternating": )"
    << gamma << R"(}},
    "modulation": {"l": 1, "tones": [{"kappa": 1.8, "rational": [1, 1]}]})"
    << extra << "}";
  return s.str();
}

const std::string kScan = R"(, "scan": {"kappa": {"min": 0.0, "max": 4.0, "points": 81}})";

std::vector<std::vector<std::string>> rows(const Table& t) { return t.rows; }

}  // namespace

TEST_CASE("kappa scan schema and physics") {
  const auto out = run(parse_config(chain_config(0.1, "scan_kappa", kScan)));
  REQUIRE(out.tables.size() == 2);
  CHECK(out.tables[0].header == std::vector<std::string>{"kappa", "eig_index", "re_E", "im_E"});
  CHECK(out.tables[1].header == std::vector<std::string>{"kappa", "max_abs_imag", "is_real"});
  CHECK(out.tables[0].rows.size() == 81 * 16);
  const auto& summary = out.tables[1].rows;
  CHECK(summary[0][2] == "false");  // kappa = 0
  CHECK(summary[36][2] == "true");  // kappa = 1.8
}

TEST_CASE("no gain and loss means real everywhere") {
  const auto out = run(parse_config(chain_config(0.0, "scan_kappa", kScan)));
  for (const auto& r : out.tables[1].rows) CHECK(r[2] == "true");
}

TEST_CASE("output is independent of the thread count") {
  const auto cfg = parse_config(chain_config(0.1, "scan_kappa", kScan));
  const auto one = run(cfg, 1);
  const auto many = run(cfg, 7);
  CHECK(one.tables[0].to_csv() == many.tables[0].to_csv());
  CHECK(one.tables[1].to_csv() == many.tables[1].to_csv());
  CHECK(run(cfg, 1).tables[0].to_csv() == one.tables[0].to_csv());
}

TEST_CASE("dimer phase diagram") {
  const auto cfg = parse_config(R"({"scenario": "phase_diagram",
    "lattice": {"tunnelings": [1.0], "gammas": [1.0, -1.0]},
    "modulation": {"l": 1, "tones": [{"kappa": 0.0, "rational": [1, 1]}]},
    "scan": {"kappa": {"min": 0.0, "max": 4.0, "points": 41}, "gamma_sq": {"min": 0.0, "max": 0.4, "points": 21}}})");
  const auto pd = compute_phase_diagram(cfg, 3);
  REQUIRE(pd.cells.size() == 41);
  for (const auto& col : pd.cells) {
    REQUIRE(col.size() == 21);
    CHECK(col[0].is_real);
  }
  for (std::size_t i = 0; i < 41; ++i)
    for (std::size_t j = 0; j < 21; ++j) {
      const double j1 = bessel_j(1, pd.kappa_axis[i]);
      const double margin = j1 * j1 - pd.gamma_sq_axis[j];
      if (std::abs(margin) > 1e-9) CHECK(pd.cells[i][j].is_real == (margin > 0));
    }
  const auto table = run(cfg).tables[0];
  CHECK(table.header == std::vector<std::string>{"kappa", "gamma_sq_over_T_sq", "max_abs_imag", "is_real"});
  CHECK(table.rows.size() == 41 * 21);
}

TEST_CASE("first Bessel zero column is real only without gain and loss") {
  const auto cfg = parse_config(R"({"scenario": "phase_diagram",
    "lattice": {"tunnelings": [1.0], "gammas": [1.0, -1.0]},
    "modulation": {"l": 1, "tones": [{"kappa": 0.0, "rational": [1, 1]}]},
    "scan": {"kappa": {"min": 3.83170597020751, "max": 4.0, "points": 2},
             "gamma_sq": {"min": 0.0, "max": 0.4, "points": 11}}})");
  const auto pd = compute_phase_diagram(cfg);
  CHECK(pd.cells[0][0].is_real);
  for (std::size_t j = 1; j < 11; ++j) CHECK_FALSE(pd.cells[0][j].is_real);
}

TEST_CASE("threshold rows") {
  auto run_threshold_for = [](const std::string& lattice, double kappa) {
    std::ostringstream s;
    s << R"({"scenario": "threshold", "lattice": )" << lattice
      << R"(, "modulation": {"l": 1, "tones": [{"kappa": )" << kappa
      << R"(, "rational": [1, 1]}]}, "threshold": {"gamma_max": 2.0, "tol": 1e-10}})";
    return run(parse_config(s.str())).tables[0];
  };
  const std::string dimer = R"({"tunnelings": [1.0], "gammas": [1.0, -1.0]})";
  const std::string trimer = R"({"tunnelings": [1.0, 1.0], "gammas": [1.0, 0.0, -1.0]})";

  const auto t = run_threshold_for(dimer, 1.84118378134066);
  CHECK(t.header.back() == "gamma_star");
  CHECK(t.header.size() == t.rows[0].size());
  CHECK(std::stod(t.rows[0].back()) == doctest::Approx(0.58186522428159638).epsilon(1e-6));
  CHECK(run_threshold_for(dimer, 0.0).rows[0].back() == "0");
  CHECK(std::stod(run_threshold_for(trimer, 1.84118378134066).rows[0].back()) ==
        doctest::Approx(0.822881691575995).epsilon(1e-6));
}

TEST_CASE("unbroken sentinel") {
  const auto t = run(parse_config(R"({"scenario": "threshold",
    "lattice": {"tunnelings": [1.0], "gammas": [1.0, -1.0]},
    "modulation": {"l": 1, "tones": [{"kappa": 1.8412, "rational": [1, 1]}]},
    "threshold": {"gamma_max": 0.3}})")).tables[0];
  CHECK(t.rows[0].back() == "unbroken");
}

TEST_CASE("propagation trace") {
  const std::string base = R"({"scenario": "propagate",
    "lattice": {"tunnelings": [1.0], "gammas": [GAMMA, -GAMMA]},
    "modulation": {"l": 1, "omega0": 50.0, "tones": [{"kappa": KAPPA, "rational": [1, 1]}]},
    "propagate": {"periods": 50, "stride": 256}})";
  auto config = [&](const std::string& gamma, const std::string& kappa) {
    std::string s = base;
    for (auto [key, value] : {std::pair{std::string("GAMMA"), gamma}, std::pair{std::string("KAPPA"), kappa}})
      for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key)) s.replace(pos, key.size(), value);
    return parse_config(s);
  };
  auto powers = [](const Table& t) {
    std::vector<double> p;
    for (std::size_t i = 0; i < t.rows.size(); i += 2) p.push_back(std::stod(t.rows[i][4]));
    return p;
  };

  SUBCASE("Hermitian power is constant") {
    const auto t = run(config("0.0", "1.8412")).tables[0];
    CHECK(t.header == std::vector<std::string>{"z", "site", "re_psi", "im_psi", "power", "status"});
    for (double p : powers(t)) CHECK(std::abs(p - 1.0) < 1e-8);
    CHECK(t.rows.back().back() == "final");
    CHECK(t.rows.front().back() == "ok");
  }
  SUBCASE("broken phase grows") {
    const auto p = powers(run(config("0.1", "0.0")).tables[0]);
    for (std::size_t i = p.size() / 4; i + 1 < p.size(); ++i) CHECK(p[i + 1] > p[i]);
  }
  SUBCASE("pseudo-PT phase stays bounded") {
    const auto p = powers(run(config("0.1", "1.8412")).tables[0]);
    const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
    CHECK(*hi / *lo < 10.0);
  }
}

TEST_CASE("effective coupling table") {
  const auto t = run(parse_config(R"({"scenario": "effective_coupling",
    "lattice": {"tunnelings": [1.0], "gammas": [0.0, 0.0]},
    "modulation": {"l": 1, "tones": [{"kappa": 1.2, "rational": [1, 1], "phi": 0.5}]}})")).tables[0];
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0][0] == "analytic");
  CHECK(t.rows[1][0] == "analytic_raw");
  CHECK(t.rows[2][0] == "numeric");
  CHECK(std::stod(t.rows[1][1]) == doctest::Approx(std::stod(t.rows[2][1])).epsilon(1e-7));
  CHECK(std::stod(t.rows[0][3]) == doctest::Approx(std::stod(t.rows[2][3])).epsilon(1e-7));
}

TEST_CASE("parallel_for propagates exceptions") {
  CHECK_THROWS_AS(parallel_for(10, 4,
                               [](std::size_t i) {
                                 if (i == 6) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}
