#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "wgcasimir/config.hpp"

using namespace wgcasimir;

TEST_SUITE("config") {
  TEST_CASE("defaults describe a valid undriven qubit") {
    const SystemConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.omega0 == 1000.0);
    CHECK(c.gamma1d == 1.0);
    CHECK(c.max_drive() == 0.0);
  }

  TEST_CASE("uniform drive sits on the two-photon resonance") {
    const auto c = SystemConfig::uniform(3, 10.0, 0.4, 0.1);
    CHECK(c.drive_freq == 2010.0);
    CHECK(c.drive_amps == std::vector<double>{0.1, 0.1, 0.1});
    CHECK(c.drive_phases == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(c.gamma_sigma() == 1.0);
  }

  TEST_CASE("pair amplitudes carry exp(-i phi)") {
    auto c = SystemConfig::uniform(2, 10.0, 0.4, 0.1);
    c.drive_phases = {0.0, kPi / 2.0};
    const CVector g = c.pair_amplitudes();
    CHECK(std::abs(g(0) - 0.1) < 1e-15);
    CHECK(std::abs(g(1) - cplx(0.0, -0.1)) < 1e-15);
  }

  TEST_CASE("validation names the violated constraint") {
    auto c = SystemConfig::uniform(2, 10.0, 0.4, 0.1);
    c.gamma1d = 0.0;
    CHECK_THROWS_WITH_AS(c.validate(), "gamma1d must be > 0", std::invalid_argument);
    c = SystemConfig::uniform(2, 10.0, 0.4, 0.1);
    c.gamma_nr = -0.1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SystemConfig::uniform(2, 10.0, 0.4, 0.1);
    c.drive_amps = {0.1};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SystemConfig::uniform(2, 10.0, 0.4, 0.1);
    c.qd = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SystemConfig::uniform(1, 10.0, 0.0, 0.1);
    c.n_qubits = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }

  TEST_CASE("qd outside [0, pi] is used verbatim") {
    auto c = SystemConfig::uniform(2, 10.0, 7.5, 0.1);
    CHECK_NOTHROW(c.validate());
  }

  TEST_CASE("JSON round trip") {
    auto c = SystemConfig::uniform(2, 4.0, 1.1, 0.05);
    c.gamma_nr = 0.1;
    c.drive_phases = {0.3, -1.2};
    c.drive_freq = 2001.25;
    const nlohmann::json j = c;
    CHECK(j.get<SystemConfig>() == c);
    CHECK(parse_config(j.dump()) == c);
  }

  TEST_CASE("optional keys take their defaults") {
    const auto c = parse_config(R"({"n_qubits": 2, "anharmonicity": 10, "qd": 0.5, "drive_amps": [0.1, 0.2]})");
    CHECK(c.omega0 == 1000.0);
    CHECK(c.gamma_nr == 0.0);
    CHECK(c.drive_phases == std::vector<double>{0.0, 0.0});
    CHECK(c.drive_freq == 2010.0);
  }

  TEST_CASE("unknown and missing keys are rejected") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"n_qubits": 1, "anharmonicity": 10, "qd": 0, "drive_amps": [0.1], "gamma": 0.1})"),
                         "unknown config key: gamma", std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"n_qubits": 1, "anharmonicity": 10, "drive_amps": [0.1]})"),
                         "missing config key: qd", std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"n_qubits": 2, "anharmonicity": 10, "qd": 0, "drive_amps": [0.1]})"),
                    std::invalid_argument);
    CHECK_THROWS(parse_config("[1, 2]"));
  }

  TEST_CASE("load_config reads a file") {
    const std::string path = "wgcasimir_test_config.json";
    std::ofstream(path) << R"({"n_qubits": 1, "anharmonicity": 4, "qd": 0, "drive_amps": [0.01]})";
    CHECK(load_config(path).anharmonicity == 4.0);
    CHECK_THROWS_AS(load_config("does/not/exist.json"), std::runtime_error);
  }
}
