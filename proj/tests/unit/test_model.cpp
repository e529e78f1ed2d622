#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wgcasimir/model.hpp"

using namespace wgcasimir;
using namespace wgcasimir::model;
using wgcasimir::testing::max_abs;

namespace {

SystemConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto c = SystemConfig::uniform(2 + static_cast<int>(rng() % 2), 2.0 + 10.0 * unit(rng), 3.0 * unit(rng), 0.05);
  c.gamma_nr = 0.2 * unit(rng);
  return c;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("photon Green matrix examples") {
    const CMatrix d2 = photon_green(SystemConfig::uniform(2, 0.0, kPi / 2.0, 0.0));
    CHECK(std::abs(d2(0, 0) - cplx(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(d2(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(d2(1, 0) - 1.0) < 1e-15);
    CHECK(std::abs(photon_green(SystemConfig::uniform(1, 0.0, 0.7, 0.0))(0, 0) - cplx(0.0, -1.0)) < 1e-15);
    const CMatrix d3 = photon_green(SystemConfig::uniform(3, 0.0, kPi, 0.0));
    CHECK(std::abs(d3(0, 2) - cplx(0.0, -1.0)) < 1e-14);
  }

  TEST_CASE("decay matrix examples") {
    auto c = SystemConfig::uniform(2, 0.0, kPi / 2.0, 0.0);
    CHECK((decay_matrix(c) - RMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
    c.qd = 0.0;
    CHECK((decay_matrix(c) - RMatrix::Ones(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    auto one = SystemConfig::uniform(1, 0.0, 0.0, 0.0);
    one.gamma_nr = 0.1;
    CHECK(decay_matrix(one)(0, 0) == doctest::Approx(1.1).epsilon(1e-15));
  }

  TEST_CASE("Green matrix symmetry and decay relation") {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 10; ++k) {
      const auto c = random_config(rng);
      const CMatrix d = photon_green(c);
      CHECK(max_abs(d - d.transpose()) == 0.0);
      const RMatrix expected = -d.imag() + c.gamma_nr * RMatrix::Identity(c.n_qubits, c.n_qubits);
      CHECK((decay_matrix(c) - expected).cwiseAbs().maxCoeff() < 1e-15);
    }
  }

  TEST_CASE("bare Hamiltonian") {
    const auto one = SystemConfig::uniform(1, 10.0, 0.0, 0.0);
    const CMatrix h1 = build_h0(one, hilbert::build_basis(1, 2)).matrix();
    CHECK(max_abs(h1 - CVector(CVector::Zero(3)).asDiagonal().toDenseMatrix()) > 0.0);
    CHECK(std::abs(h1(0, 0)) == 0.0);
    CHECK(std::abs(h1(1, 1) - 1000.0) < 1e-12);
    CHECK(std::abs(h1(2, 2) - 2010.0) < 1e-12);
    CHECK(std::abs(h1(0, 1)) == 0.0);

    const auto two = SystemConfig::uniform(2, 10.0, kPi / 2.0, 0.0);
    const auto basis = hilbert::build_basis(2, 2);
    const CMatrix h2 = build_h0(two, basis).matrix();
    CHECK(std::abs(h2(*basis.index_of({1, 0}), *basis.index_of({0, 1})) - 1.0) < 1e-15);

    std::mt19937_64 rng(22);
    const auto c = random_config(rng);
    const CMatrix h = build_h0(c, hilbert::build_basis(c.n_qubits, 2)).matrix();
    CHECK(max_abs(h - h.adjoint()) < 1e-13);
  }

  TEST_CASE("drive operator matrix elements") {
    const auto c = SystemConfig::uniform(1, 10.0, 0.0, 0.1);
    const CMatrix x = drive_operator(c, hilbert::build_basis(1, 2), 0).matrix();
    CHECK(std::abs(x(2, 0) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(x(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(x(1, 1) - 3.0) < 1e-15);
    CHECK(max_abs(x - x.adjoint()) == 0.0);
    CHECK_THROWS_AS(drive_operator(c, hilbert::build_basis(1, 2), 1), std::out_of_range);
  }

  TEST_CASE("directional operators") {
    const auto one = SystemConfig::uniform(1, 10.0, 0.9, 0.1);
    const auto b1 = hilbert::build_basis(1, 2);
    const CMatrix a = hilbert::annihilation(b1, 0).matrix();
    CHECK(max_abs(directional_operator(one, b1, Direction::left).matrix() - a) == 0.0);
    CHECK(max_abs(directional_operator(one, b1, Direction::right).matrix() - a) == 0.0);

    const auto b2 = hilbert::build_basis(2, 2);
    const CMatrix a1 = hilbert::annihilation(b2, 0).matrix();
    const CMatrix a2 = hilbert::annihilation(b2, 1).matrix();
    const auto pi = SystemConfig::uniform(2, 10.0, kPi, 0.1);
    CHECK(max_abs(directional_operator(pi, b2, Direction::left).matrix() - (a1 - a2)) < 1e-15);
    const auto half = SystemConfig::uniform(2, 10.0, kPi / 2.0, 0.1);
    CHECK(max_abs(directional_operator(half, b2, Direction::left).matrix() - (a1 + kI * a2)) < 1e-15);
    CHECK(max_abs(directional_operator(half, b2, Direction::right).matrix() - (a1 - kI * a2)) < 1e-15);
  }

  TEST_CASE("single-excitation Hamiltonian") {
    auto c = SystemConfig::uniform(1, 10.0, 0.0, 0.1);
    c.gamma_nr = 0.1;
    const auto h = single_excitation_hamiltonian(c);
    CHECK(h.excitation_sector == 1);
    CHECK(std::abs(h.entries(0, 0) - cplx(1000.0, -1.1)) < 1e-12);
  }

  TEST_CASE("two-excitation Hamiltonian") {
    const auto one = two_excitation_hamiltonian(SystemConfig::uniform(1, 10.0, 0.0, 0.1));
    REQUIRE(one.eigenvalues.size() == 1);
    CHECK(std::abs(one.eigenvalues(0) - cplx(2010.0, -2.0)) < 1e-12);
    CHECK(one.hamiltonian.excitation_sector == 2);

    const auto two = two_excitation_hamiltonian(SystemConfig::uniform(2, 50.0, 1e-3, 0.1));
    REQUIRE(two.eigenvalues.size() == 4);
    const double gap = two.eigenvalues(2).real() - two.eigenvalues(1).real();
    CHECK(gap > 50.0 - 5.0);
    CHECK(gap < 50.0 + 5.0);
    CHECK(std::abs(two.eigenvalues(0).real() - 2000.0) < 3.0);
    CHECK(std::abs(two.eigenvalues(3).real() - 2050.0) < 3.0);

    std::mt19937_64 rng(23);
    for (int k = 0; k < 10; ++k) {
      const auto spectrum = two_excitation_hamiltonian(random_config(rng));
      for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) CHECK(spectrum.eigenvalues(i).imag() <= 1e-12);
      for (Eigen::Index i = 1; i < spectrum.eigenvalues.size(); ++i)
        CHECK(spectrum.eigenvalues(i).real() >= spectrum.eigenvalues(i - 1).real());
    }
  }

  TEST_CASE("pair interaction acts on doubly occupied qubits only") {
    const CMatrix v = pair_interaction(SystemConfig::uniform(3, 7.0, 0.3, 0.1));
    CHECK(v.rows() == 9);
    CHECK(v(0, 0) == 7.0);
    CHECK(v(4, 4) == 7.0);
    CHECK(v(8, 8) == 7.0);
    CHECK(std::abs(v.sum() - 21.0) == 0.0);
  }
}
