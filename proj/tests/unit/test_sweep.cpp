#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "support.hpp"
#include "wgcasimir/analytic.hpp"
#include "wgcasimir/diagrams.hpp"
#include "wgcasimir/master.hpp"
#include "wgcasimir/model.hpp"
#include "wgcasimir/sweep.hpp"
#include "wgcasimir/validate.hpp"

using namespace wgcasimir;
using namespace wgcasimir::sweep;
using wgcasimir::testing::rel_err;

namespace {

ScanSpec small_two_qubit_scan() {
  ScanSpec spec;
  spec.base = SystemConfig::uniform(2, 10.0, 0.8, 0.01);
  spec.axis1 = {"Omega", linspace(1995.0, 2015.0, 4)};
  spec.axis2 = {"qd", linspace(0.5, 2.5, 3)};
  spec.observables = {Observable::I_minus, Observable::I_plus, Observable::G2mm, Observable::directivity};
  spec.engines = parse_engines("all");
  spec.overlays = true;
  spec.threads = 1;
  return spec;
}

bool same_values(const RMatrix& a, const RMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const bool both_nan = std::isnan(a(i, j)) && std::isnan(b(i, j));
      if (!both_nan && a(i, j) != b(i, j)) return false;
    }
  return true;
}

void check_same(const ScanResult& a, const ScanResult& b) {
  CHECK(a.base == b.base);
  CHECK(a.axis1.parameter == b.axis1.parameter);
  CHECK(a.axis1.values == b.axis1.values);
  CHECK(a.axis2.values == b.axis2.values);
  REQUIRE(a.layers.size() == b.layers.size());
  for (std::size_t k = 0; k < a.layers.size(); ++k) {
    CHECK(a.layers[k].observable == b.layers[k].observable);
    CHECK(a.layers[k].engine == b.layers[k].engine);
    CHECK(same_values(a.layers[k].values, b.layers[k].values));
  }
  REQUIRE(a.masks.size() == b.masks.size());
  for (std::size_t k = 0; k < a.masks.size(); ++k) CHECK(a.masks[k].flags == b.masks[k].flags);
  REQUIRE(a.overlays.size() == b.overlays.size());
  for (std::size_t k = 0; k < a.overlays.size(); ++k) {
    CHECK(a.overlays[k].name == b.overlays[k].name);
    CHECK(same_values(a.overlays[k].values, b.overlays[k].values));
  }
}

}  // namespace

TEST_SUITE("sweep") {
  TEST_CASE("names round trip") {
    for (auto e : {Engine::master, Engine::diagrams, Engine::analytic}) CHECK(parse_engine(to_string(e)) == e);
    for (auto o : {Observable::I1, Observable::I_minus, Observable::I_plus, Observable::G2mm, Observable::spectrum,
                   Observable::directivity})
      CHECK(parse_observable(to_string(o)) == o);
    CHECK(parse_engines("all").size() == 3);
    CHECK_THROWS_AS(parse_engine("exact"), std::invalid_argument);
    CHECK_THROWS_AS(parse_observable("G2pp"), std::invalid_argument);
    CHECK(column_name(Observable::G2mm, Engine::diagrams) == "G2mm_diagrams");
  }

  TEST_CASE("linspace") {
    CHECK(linspace(1.0, 2.0, 1) == std::vector<double>{1.0});
    const auto v = linspace(0.0, 1.0, 5);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 1.0);
    CHECK(v[2] == 0.5);
    CHECK_THROWS_AS(linspace(0.0, 1.0, 0), std::invalid_argument);
  }

  TEST_CASE("one-point scan equals a direct engine call") {
    ScanSpec spec;
    spec.base = SystemConfig::uniform(2, 10.0, 0.8, 0.01);
    spec.base.drive_phases = {0.0, 0.7};
    spec.axis1 = {"Omega", {2004.0}};
    spec.axis2 = {"qd", {1.1}};
    spec.observables = {Observable::I_minus, Observable::G2mm};
    spec.engines = parse_engines("all");
    const auto result = run_scan(spec);

    auto c = spec.base;
    c.drive_freq = 2004.0;
    c.qd = 1.1;
    const auto sol = master::stationary_rho(c);
    const auto left = model::directional_operator(c, sol.basis(), model::Direction::left);
    CHECK(result.layer(Observable::I_minus, Engine::master).values(0, 0) == master::emission_intensity(sol, left));
    CHECK(result.layer(Observable::G2mm, Engine::master).values(0, 0) == master::g2_zero(sol, left));
    CHECK(result.layer(Observable::G2mm, Engine::diagrams).values(0, 0) == diagrams::g2_zero_diagram(c));
    CHECK(result.layer(Observable::I_minus, Engine::diagrams).values(0, 0) ==
          diagrams::emission_intensities_diagram(c).i_minus);
    CHECK(result.layer(Observable::G2mm, Engine::analytic).values(0, 0) == analytic::two_qubit_highU(c).g2_b1.value);
    CHECK(result.axis1.reported == std::vector<double>{4.0});
    CHECK(result.axis1.label == "Omega_detuning");
  }

  TEST_CASE("engines agree on oracle-covered regions") {
    ScanSpec spec;
    spec.base = SystemConfig::uniform(1, 10.0, 0.0, 0.01);
    spec.axis1 = {"Omega", linspace(1990.0, 2030.0, 7)};
    spec.axis2 = {"U", {4.0, 10.0}};
    spec.observables = {Observable::I1};
    spec.engines = parse_engines("all");
    const auto r = run_scan(spec);
    const auto& m = r.layer(Observable::I1, Engine::master).values;
    const auto& a = r.layer(Observable::I1, Engine::analytic).values;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) CHECK(rel_err(m(i, j), a(i, j)) < 1e-8);
    CHECK(r.find(Observable::I1, Engine::diagrams) != nullptr);

    auto sym = small_two_qubit_scan();
    sym.observables = {Observable::I_minus};
    const auto s = run_scan(sym);
    const auto& sm = s.layer(Observable::I_minus, Engine::master).values;
    const auto& sa = s.layer(Observable::I_minus, Engine::analytic).values;
    for (Eigen::Index i = 0; i < sm.rows(); ++i)
      for (Eigen::Index j = 0; j < sm.cols(); ++j) CHECK(rel_err(sm(i, j), sa(i, j)) < 1e-4);
  }

  TEST_CASE("results do not depend on the thread count") {
    auto spec = small_two_qubit_scan();
    const auto serial = run_scan(spec);
    spec.threads = 4;
    const auto parallel = run_scan(spec);
    check_same(serial, parallel);
    CHECK(parallel.provenance.threads == 4);
  }

  TEST_CASE("permuting an axis permutes the output") {
    auto spec = small_two_qubit_scan();
    const auto forward = run_scan(spec);
    std::reverse(spec.axis1.values.begin(), spec.axis1.values.end());
    const auto reversed = run_scan(spec);
    for (const auto& layer : forward.layers) {
      const RMatrix flipped = reversed.layer(layer.observable, layer.engine).values.colwise().reverse();
      CHECK(same_values(layer.values, flipped));
    }
  }

  TEST_CASE("spectrum scans") {
    ScanSpec spec;
    spec.base = SystemConfig::uniform(1, 10.0, 0.0, 0.1);
    spec.axis1 = {"Omega", {2010.0}};
    spec.axis2 = {"omega_scan", linspace(995.0, 1015.0, 9)};
    spec.observables = {Observable::spectrum, Observable::I1};
    const auto r = run_scan(spec);
    const auto& s = r.layer(Observable::spectrum, Engine::master).values;
    for (Eigen::Index j = 0; j < s.cols(); ++j)
      CHECK(rel_err(s(0, j), analytic::spectrum_single(spec.base, spec.axis2.values[static_cast<std::size_t>(j)]).value) <
            1e-6);
    CHECK(r.axis2.label == "omega_detuning");
    CHECK(r.axis2.reported.front() == -5.0);
  }

  TEST_CASE("invalid specs are rejected before computing") {
    auto spec = small_two_qubit_scan();
    spec.axis1.parameter = "Delta";
    CHECK_THROWS_AS(run_scan(spec), std::invalid_argument);
    spec = small_two_qubit_scan();
    spec.axis2.values[1] = std::nan("");
    CHECK_THROWS_AS(run_scan(spec), std::invalid_argument);
    spec = small_two_qubit_scan();
    spec.axis2.parameter = "Omega";
    CHECK_THROWS_AS(run_scan(spec), std::invalid_argument);
    spec = small_two_qubit_scan();
    spec.axis2 = {"phi_3", {0.0}};
    CHECK_THROWS_AS(run_scan(spec), std::invalid_argument);
    spec = small_two_qubit_scan();
    spec.axis2 = {"omega_scan", {1000.0}};
    spec.observables = {Observable::spectrum};
    spec.engines = {Engine::diagrams};
    CHECK_THROWS_AS(run_scan(spec), std::invalid_argument);
    spec = small_two_qubit_scan();
    spec.observables = {Observable::spectrum};
    spec.engines = {Engine::master};
    CHECK_THROWS_AS(run_scan(spec), std::invalid_argument);
    spec = small_two_qubit_scan();
    spec.observables = {Observable::I1};
    spec.engines = {Engine::analytic};
    CHECK_THROWS_AS(run_scan(spec), std::invalid_argument);
  }

  TEST_CASE("engine capabilities") {
    const auto one = SystemConfig::uniform(1, 10.0, 0.0, 0.1);
    const auto two = SystemConfig::uniform(2, 10.0, 0.5, 0.1);
    const auto eight = SystemConfig::uniform(8, 10.0, 0.5, 0.1);
    CHECK(supports(Engine::master, Observable::spectrum, two));
    CHECK_FALSE(supports(Engine::diagrams, Observable::spectrum, one));
    CHECK(supports(Engine::diagrams, Observable::G2mm, eight));
    CHECK_FALSE(supports(Engine::diagrams, Observable::I_minus, eight));
    CHECK(supports(Engine::analytic, Observable::spectrum, one));
    CHECK_FALSE(supports(Engine::analytic, Observable::G2mm, one));
    CHECK_FALSE(supports(Engine::analytic, Observable::I_minus, SystemConfig::uniform(3, 10.0, 0.5, 0.1)));
  }

  TEST_CASE("failing points are masked, not fatal") {
    ScanSpec spec;
    spec.base = SystemConfig::uniform(2, 10.0, 0.8, 0.01);
    spec.axis1 = {"Omega", {2003.0, 2010.0}};
    spec.axis2 = {"qd", {0.0, 0.8}};
    spec.observables = {Observable::I_minus};
    const auto r = run_scan(spec);
    const auto& values = r.layer(Observable::I_minus, Engine::master).values;
    REQUIRE(r.masks.size() == 1);
    const auto& flags = r.masks[0].flags;
    for (Eigen::Index i = 0; i < 2; ++i) {
      CHECK(flags(i, 0) == 1);
      CHECK(std::isnan(values(i, 0)));
      CHECK(flags(i, 1) == 0);
      CHECK(std::isfinite(values(i, 1)));
    }
    CHECK_FALSE(r.provenance.notes.empty());
  }

  TEST_CASE("figure presets") {
    const auto fig2 = figure_preset("fig2");
    CHECK(fig2.base.n_qubits == 1);
    CHECK(fig2.base.drive_amps[0] == 0.1);
    CHECK(fig2.base.anharmonicity == 10.0);
    CHECK(fig2.base.gamma_nr == 0.0);
    CHECK(fig2.axis2.parameter == "omega_scan");
    CHECK(std::find(fig2.observables.begin(), fig2.observables.end(), Observable::spectrum) != fig2.observables.end());
    CHECK(fig2.axis1.values.size() == 101);

    const auto fig4 = figure_preset("fig4b", 11, 21);
    CHECK(fig4.base.drive_freq == 2.0 * fig4.base.omega0 + fig4.base.anharmonicity);
    CHECK(fig4.base.gamma_nr == 0.05);
    CHECK(fig4.axis1.parameter == "qd");
    CHECK(fig4.axis2.parameter == "phi_2");
    CHECK(fig4.axis1.values.size() == 11);
    CHECK(fig4.axis2.values.size() == 21);
    CHECK(std::find(fig4.observables.begin(), fig4.observables.end(), Observable::directivity) !=
          fig4.observables.end());

    const auto fig6 = figure_preset("fig6");
    CHECK(fig6.base.n_qubits == 4);
    CHECK(fig6.base.drive_amps == std::vector<double>{0.1, 0.0, 0.0, 0.0});
    CHECK(fig6.observables == std::vector<Observable>{Observable::G2mm});

    for (const auto& id : figure_ids()) CHECK_NOTHROW(figure_preset(id, 3, 3).validate());
    CHECK(figure_ids().size() == 12);
    CHECK_THROWS_AS(figure_preset("fig7"), std::invalid_argument);
    CHECK_THROWS_AS(figure_preset("fig2", 0, 5), std::invalid_argument);
  }

  TEST_CASE("CSV round trip is exact") {
    const auto r = run_scan(small_two_qubit_scan());
    const std::string csv = to_csv(r);
    CHECK(csv.find("# units: all frequencies in units of gamma_1D\n") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos);
    const auto back = parse_csv(csv);
    check_same(r, back);
    CHECK(back.provenance.code_version == r.provenance.code_version);
    CHECK(to_csv(back) == csv);
  }

  TEST_CASE("CSV schema violations are named") {
    const std::string csv = to_csv(run_scan(small_two_qubit_scan()));
    std::string renamed = csv;
    renamed.replace(renamed.find("G2mm_master"), 11, "G2pp_master");
    CHECK_THROWS_WITH_AS(parse_csv(renamed), "unknown column: G2pp_master", std::invalid_argument);

    std::string no_units = csv;
    no_units.erase(no_units.find("# units"), no_units.find('\n', no_units.find("# units")) - no_units.find("# units") + 1);
    CHECK_THROWS_AS(parse_csv(no_units), std::invalid_argument);

    std::string truncated = csv.substr(0, csv.rfind('\n', csv.size() - 2) + 1);
    CHECK_THROWS_AS(parse_csv(truncated), std::invalid_argument);

    std::string bad_axis = csv;
    bad_axis.replace(bad_axis.find("\nOmega_detuning,") + 1, 14, "Omega_absolute");
    CHECK_THROWS_AS(parse_csv(bad_axis), std::invalid_argument);
  }

  TEST_CASE("JSON round trip") {
    const auto r = run_scan(small_two_qubit_scan());
    const nlohmann::json doc = to_json(r);
    CHECK(doc.at("units") == std::string(kUnitsLine));
    CHECK(doc.at("shape") == nlohmann::json::array({4, 3}));
    CHECK(doc.at("arrays").size() == r.layers.size());
    check_same(r, from_json(nlohmann::json::parse(doc.dump())));
  }

  TEST_CASE("write_result picks the format from the extension") {
    auto spec = small_two_qubit_scan();
    spec.engines = {Engine::master};
    spec.overlays = false;
    const auto r = run_scan(spec);
    write_result(r, "wgcasimir_test_scan.csv");
    write_result(r, "wgcasimir_test_scan.json");
    std::ifstream csv("wgcasimir_test_scan.csv");
    std::stringstream text;
    text << csv.rdbuf();
    check_same(r, parse_csv(text.str()));
    std::ifstream json_in("wgcasimir_test_scan.json");
    check_same(r, from_json(nlohmann::json::parse(json_in)));
  }

  TEST_CASE("quick validation is reproducible") {
    const auto first = validate(ValidationLevel::quick, 1);
    const auto second = validate(ValidationLevel::quick, 1);
    REQUIRE(first.criteria.size() == 3);
    REQUIRE(second.criteria.size() == 3);
    for (std::size_t k = 0; k < first.criteria.size(); ++k) {
      const auto& a = first.criteria[k];
      const auto& b = second.criteria[k];
      CHECK(a.id == b.id);
      REQUIRE(a.measurements.size() == b.measurements.size());
      for (std::size_t m = 0; m < a.measurements.size(); ++m) {
        if (a.measurements[m].name == "runtime_seconds") continue;
        CHECK(a.measurements[m].value == b.measurements[m].value);
        CHECK(a.measurements[m].pass == b.measurements[m].pass);
      }
    }
    nlohmann::json doc = first;
    CHECK(doc.at("criteria").size() == 3);
    CHECK(doc.at("level") == "quick");
    CHECK(summary_line(first.criteria[0]).rfind("[PASS] criterion 1", 0) == 0);
    CHECK(parse_level("full") == ValidationLevel::full);
    CHECK_THROWS_AS(parse_level("fast"), std::invalid_argument);
  }
}
