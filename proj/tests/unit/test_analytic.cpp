#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "support.hpp"
#include "wgcasimir/analytic.hpp"
#include "wgcasimir/model.hpp"

using namespace wgcasimir;
using namespace wgcasimir::analytic;
using wgcasimir::testing::rel_err;

namespace {

SystemConfig phased(double u, double qd, double phi) {
  auto c = SystemConfig::uniform(2, u, qd, 0.01);
  c.drive_phases = {0.0, phi};
  return c;
}

double integrate(const std::function<double(double)>& f, const std::vector<double>& cuts) {
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    total += gauss_kronrod<double, 61>::integrate(f, cuts[k], cuts[k + 1], 15, 1e-12);
  return total;
}

}  // namespace

TEST_SUITE("analytic") {
  TEST_CASE("single-qubit intensity") {
    CHECK(rel_err(i1_single(SystemConfig::uniform(1, 10.0, 0.0, 0.01)).value, 5.00000123759282255e-5) < 1e-12);
    CHECK(rel_err(i1_single(SystemConfig::uniform(1, 10.0, 0.0, 0.1, 1e6)).value, 5.0e-3) < 1e-9);
    CHECK(i1_single(SystemConfig::uniform(1, 10.0, 0.0, 0.0)).value == 0.0);

    auto c = SystemConfig::uniform(1, 10.0, 0.0, 0.01);
    c.drive_freq = 2003.7;
    CHECK(rel_err(i1_single(c).value, 4.57771898381874211e-6) < 1e-12);
    auto mirrored = c;
    mirrored.drive_freq = -c.drive_freq;
    mirrored.omega0 = -c.omega0;
    mirrored.anharmonicity = -c.anharmonicity;
    CHECK(rel_err(i1_single(mirrored).value, i1_single(c).value) < 1e-14);

    const auto result = i1_single(c);
    CHECK(result.formula_id == FormulaId::eq9);
    CHECK(formula_name(result.formula_id) == "eq9");
    CHECK_FALSE(result.validity_note.empty());
  }

  TEST_CASE("single-qubit spectrum") {
    const auto c = SystemConfig::uniform(1, 10.0, 0.0, 0.1);
    CHECK(rel_err(spectrum_single(c, 1002.5).value, 2.1952411377337708e-4) < 1e-12);

    auto s = [&](double w) { return spectrum_single(c, w).value; };
    const double total = integrate(s, {0.0, 980.0, 1000.0, 1010.0, 1030.0, 2010.0});
    CHECK(rel_err(total, i1_single(c).value) < 0.005);

    const auto wide = SystemConfig::uniform(1, 1000.0, 0.0, 0.1);
    auto sw = [&](double w) { return spectrum_single(wide, w).value; };
    CHECK(std::abs(sw(1000.0) / sw(2000.0) / 3.0 - 1.0) < 0.01);
    const double lower = integrate(sw, {600.0, 1000.0, 1400.0});
    const double upper = integrate(sw, {1600.0, 2000.0, 2400.0});
    CHECK(std::abs(lower / upper - 1.0) < 0.02);
  }

  TEST_CASE("high-U two-qubit forms") {
    const auto in_phase = two_qubit_highU(phased(100.0, 0.0, 0.0));
    REQUIRE(in_phase.g2_eq12.has_value());
    const double i1 = i1_single(SystemConfig::uniform(1, 100.0, 0.0, 0.01)).value;
    CHECK(rel_err(in_phase.g2_eq12->value, 2.0 * i1) < 1e-14);

    const auto quarter = two_qubit_highU(phased(100.0, kPi / 4.0, kPi / 2.0));
    CHECK(rel_err(quarter.i_minus_eq11->value, 7.0 / 3.0 * i1) < 1e-12);
    CHECK(rel_err(quarter.i_plus_eq11->value, 5.0 / 3.0 * i1) < 1e-12);

    auto unequal = phased(100.0, 0.5, 0.3);
    unequal.drive_amps = {0.01, 0.02};
    CHECK_FALSE(two_qubit_highU(unequal).i_minus_eq11.has_value());
    CHECK_THROWS_AS(two_qubit_highU(SystemConfig::uniform(3, 100.0, 0.5, 0.01)), std::invalid_argument);
  }

  TEST_CASE("closed-form directivity maximum") {
    double best = -1.0;
    double best_qd = 0.0;
    double best_phi = 0.0;
    for (int i = 0; i <= 400; ++i) {
      for (int j = 0; j <= 40; ++j) {
        const double qd = kPi * i / 400.0;
        const double phi = 2.0 * kPi * j / 40.0;
        const auto r = two_qubit_highU(phased(1000.0, qd, phi));
        const double d = (r.i_minus_eq11->value - r.i_plus_eq11->value) / (r.i_minus_eq11->value + r.i_plus_eq11->value);
        if (d > best) {
          best = d;
          best_qd = qd;
          best_phi = phi;
        }
      }
    }
    CHECK(std::abs(best - std::sqrt(2.0) / 8.0) < 1e-5);
    CHECK(std::abs(best_qd - std::atan(2.0 * std::sqrt(2.0)) / 2.0) < kPi / 400.0);
    CHECK(std::abs(best_phi - kPi / 2.0) < 1e-12);
  }

  TEST_CASE("infinite-U forms are the limits of the general forms") {
    for (double qd : {0.3, 1.2, 2.5}) {
      for (double phi : {0.0, 1.0, 4.0}) {
        const auto r = two_qubit_highU(phased(1000.0, qd, phi));
        CHECK(rel_err(r.i_minus_eq11->value, r.i_minus_b2.value) < 0.01);
        CHECK(rel_err(r.i_plus_eq11->value, r.i_plus_b2.value) < 0.01);
        CHECK(std::abs(r.g2_eq12->value - r.g2_b1.value) < 0.01 * 2.0 * r.g2_eq12->value + 1e-20);
      }
    }
    auto c = phased(100.0, 0.9, 1.3);
    c.drive_amps = {0.01, 0.03};
    auto mirrored = c;
    mirrored.drive_amps = {0.03, 0.01};
    mirrored.drive_phases = {1.3, 0.0};
    CHECK(rel_err(two_qubit_highU(c).i_plus_b2.value, two_qubit_highU(mirrored).i_minus_b2.value) < 1e-12);
  }

  TEST_CASE("symmetric two-qubit forms") {
    auto c = SystemConfig::uniform(2, 10.0, 1e-3, 0.01);
    c.drive_freq = 2.0 * c.omega0;
    CHECK(two_qubit_symmetric(c).intensity_b4.value < 1e-10);

    for (double qd : {0.3, 1.0, 2.0}) {
      auto z = SystemConfig::uniform(2, 10.0, qd, 0.01);
      const auto points = two_qubit_special_points(z);
      REQUIRE(points.g2_zero_freq.has_value());
      z.drive_freq = points.g2_zero_freq->value;
      auto peak = SystemConfig::uniform(2, 10.0, qd, 0.01);
      CHECK(two_qubit_symmetric(z).g2_b3.value < 1e-20 * two_qubit_symmetric(peak).g2_b3.value + 1e-30);
      CHECK(points.intensity_min_freq.value == doctest::Approx(2000.0 - std::sin(2.0 * qd)));
    }

    const auto dark = two_qubit_special_points(SystemConfig::uniform(2, 10.0, kPi / 2.0, 0.01));
    CHECK_FALSE(dark.g2_zero_freq.has_value());

    auto lossy = SystemConfig::uniform(2, 10.0, 1.0, 0.01);
    lossy.gamma_nr = 0.1;
    CHECK_THROWS_AS(two_qubit_symmetric(lossy), std::invalid_argument);
    auto skew = SystemConfig::uniform(2, 10.0, 1.0, 0.01);
    skew.drive_phases = {0.0, 0.5};
    CHECK_THROWS_AS(two_qubit_symmetric(skew), std::invalid_argument);
  }

  TEST_CASE("four-qubit subradiant energies") {
    const auto [upper, lower] = subradiant_energies_n4(SystemConfig::uniform(4, 10.0, 0.05, 0.1));
    CHECK(upper.value == doctest::Approx(2000.0 - 0.1).epsilon(1e-15));
    CHECK(lower.value == doctest::Approx(2000.0 - 0.7 / 3.0).epsilon(1e-15));
    const auto [u0, l0] = subradiant_energies_n4(SystemConfig::uniform(4, 10.0, 0.0, 0.1));
    CHECK(u0.value == 2000.0);
    CHECK(l0.value == 2000.0);
    CHECK_THROWS_AS(subradiant_energies_n4(SystemConfig::uniform(3, 10.0, 0.05, 0.1)), std::invalid_argument);

    const auto spectrum = model::two_excitation_hamiltonian(SystemConfig::uniform(4, 10.0, 0.05, 0.1));
    auto close_to = [&](double target) {
      for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
        const double x = spectrum.eigenvalues(i).real() - 2000.0;
        if (std::abs(x - target) < 0.1 * std::abs(target)) return true;
      }
      return false;
    };
    CHECK(close_to(-0.1));
    CHECK(close_to(-0.7 / 3.0));
  }
}
