#include "wgcasimir/sweep.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "wgcasimir/analytic.hpp"
#include "wgcasimir/detail/parallel.hpp"
#include "wgcasimir/diagrams.hpp"
#include "wgcasimir/master.hpp"
#include "wgcasimir/model.hpp"

#ifndef WGCASIMIR_VERSION
#define WGCASIMIR_VERSION "unknown"
#endif

namespace wgcasimir::sweep {

namespace {

constexpr std::array kObservables{Observable::I1,       Observable::I_minus,  Observable::I_plus,
                                  Observable::G2mm,     Observable::spectrum, Observable::directivity};
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t slot(Observable o) { return static_cast<std::size_t>(o); }

bool is_phase(const std::string& name) { return name.rfind("phi_", 0) == 0; }

int phase_index(const std::string& name, int n_qubits) {
  std::size_t used = 0;
  int j = 0;
  try {
    j = std::stoi(name.substr(4), &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad phase axis name: " + name);
  }
  if (used != name.size() - 4 || j < 1 || j > n_qubits)
    throw std::invalid_argument("phase axis " + name + " out of range for n_qubits=" + std::to_string(n_qubits));
  return j - 1;
}

void check_axis(const Axis& axis, const SystemConfig& base) {
  const auto& p = axis.parameter;
  if (p != "Omega" && p != "qd" && p != "U" && p != "omega_scan" && !is_phase(p))
    throw std::invalid_argument("unknown axis parameter: " + p);
  if (is_phase(p)) phase_index(p, base.n_qubits);
  if (axis.values.empty()) throw std::invalid_argument("axis " + p + " has no values");
  for (double v : axis.values)
    if (!std::isfinite(v)) throw std::invalid_argument("axis " + p + " has a non-finite value");
}

void apply(SystemConfig& config, const std::string& parameter, double value) {
  if (parameter == "Omega") {
    config.drive_freq = value;
  } else if (parameter == "qd") {
    config.qd = value;
  } else if (parameter == "U") {
    config.anharmonicity = value;
  } else if (is_phase(parameter)) {
    config.drive_phases[static_cast<std::size_t>(phase_index(parameter, config.n_qubits))] = value;
  }
}

AxisInfo describe(const Axis& axis, const SystemConfig& base) {
  AxisInfo info{axis.parameter, axis.parameter, axis.values, axis.values};
  double offset = 0.0;
  if (axis.parameter == "Omega") {
    info.label = "Omega_detuning";
    offset = 2.0 * base.omega0;
  } else if (axis.parameter == "omega_scan") {
    info.label = "omega_detuning";
    offset = base.omega0;
  }
  for (double& v : info.reported) v -= offset;
  return info;
}

bool symmetric_pair(const SystemConfig& c) {
  const double scale = std::max(std::abs(c.drive_amps[0]), std::abs(c.drive_amps[1]));
  const cplx g0 = c.pair_amplitudes()(0);
  const cplx g1 = c.pair_amplitudes()(1);
  return std::abs(g0 - g1) <= 1e-12 * scale && c.gamma_nr == 0.0;
}

double directivity(double i_minus, double i_plus) {
  const double sum = i_minus + i_plus;
  return sum != 0.0 ? (i_minus - i_plus) / sum : 0.0;
}

using Scalars = std::array<double, kObservables.size()>;

/// Per-configuration values; spectrum holds one entry per omega value of the task.
struct EngineOutput {
  Scalars scalars{};
  std::vector<double> spectrum;
  std::vector<bool> spectrum_valid;
};

EngineOutput evaluate_master(const ScanSpec& spec, const SystemConfig& c, const std::vector<double>& omegas,
                             bool want_spectrum) {
  const auto basis = hilbert::build_basis(c.n_qubits, spec.truncation.per_mode, spec.truncation.total);
  const auto sol = master::stationary_rho(c, basis);
  const auto left = model::directional_operator(c, basis, model::Direction::left);
  const auto right = model::directional_operator(c, basis, model::Direction::right);
  EngineOutput out;
  out.scalars.fill(kNaN);
  out.scalars[slot(Observable::I1)] = master::emission_intensity(sol, hilbert::annihilation(basis, 0));
  out.scalars[slot(Observable::I_minus)] = master::emission_intensity(sol, left);
  out.scalars[slot(Observable::I_plus)] = master::emission_intensity(sol, right);
  out.scalars[slot(Observable::G2mm)] = master::g2_zero(sol, left);
  out.scalars[slot(Observable::directivity)] =
      directivity(out.scalars[slot(Observable::I_minus)], out.scalars[slot(Observable::I_plus)]);
  if (want_spectrum) {
    for (const auto& p : master::emission_spectrum(sol, left, omegas, 1)) {
      out.spectrum.push_back(p.value);
      out.spectrum_valid.push_back(p.valid);
    }
  }
  return out;
}

EngineOutput evaluate_diagrams(const ScanSpec& spec, const SystemConfig& c) {
  EngineOutput out;
  out.scalars.fill(kNaN);
  const auto& obs = spec.observables;
  auto wants = [&](Observable o) { return std::find(obs.begin(), obs.end(), o) != obs.end(); };
  if (wants(Observable::I1) || wants(Observable::I_minus) || wants(Observable::I_plus) || wants(Observable::directivity)) {
    const auto in = diagrams::emission_intensities_diagram(c);
    out.scalars[slot(Observable::I_minus)] = in.i_minus;
    out.scalars[slot(Observable::I_plus)] = in.i_plus;
    if (c.n_qubits == 1) out.scalars[slot(Observable::I1)] = in.i_minus;
    out.scalars[slot(Observable::directivity)] = directivity(in.i_minus, in.i_plus);
  }
  if (wants(Observable::G2mm)) out.scalars[slot(Observable::G2mm)] = diagrams::g2_zero_diagram(c);
  return out;
}

EngineOutput evaluate_analytic(const SystemConfig& c, const std::vector<double>& omegas, bool want_spectrum) {
  EngineOutput out;
  out.scalars.fill(kNaN);
  if (c.n_qubits == 1) {
    const double i1 = analytic::i1_single(c).value;
    out.scalars[slot(Observable::I1)] = i1;
    out.scalars[slot(Observable::I_minus)] = i1;
    out.scalars[slot(Observable::I_plus)] = i1;
    out.scalars[slot(Observable::directivity)] = 0.0;
    if (want_spectrum) {
      for (double w : omegas) {
        out.spectrum.push_back(analytic::spectrum_single(c, w).value);
        out.spectrum_valid.push_back(true);
      }
    }
    return out;
  }
  if (symmetric_pair(c)) {
    const auto sym = analytic::two_qubit_symmetric(c);
    const double intensity = sym.intensity_b4.value / analytic::kOpticalTheoremScale;
    out.scalars[slot(Observable::I_minus)] = intensity;
    out.scalars[slot(Observable::I_plus)] = intensity;
    out.scalars[slot(Observable::G2mm)] = sym.g2_b3.value;
    out.scalars[slot(Observable::directivity)] = 0.0;
  } else {
    const auto hu = analytic::two_qubit_highU(c);
    out.scalars[slot(Observable::I_minus)] = hu.i_minus_b2.value;
    out.scalars[slot(Observable::I_plus)] = hu.i_plus_b2.value;
    out.scalars[slot(Observable::G2mm)] = hu.g2_b1.value;
    out.scalars[slot(Observable::directivity)] = directivity(hu.i_minus_b2.value, hu.i_plus_b2.value);
  }
  return out;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::master: return "master";
    case Engine::diagrams: return "diagrams";
    case Engine::analytic: return "analytic";
  }
  return "unknown";
}

std::string_view to_string(Observable observable) {
  switch (observable) {
    case Observable::I1: return "I1";
    case Observable::I_minus: return "I_minus";
    case Observable::I_plus: return "I_plus";
    case Observable::G2mm: return "G2mm";
    case Observable::spectrum: return "spectrum";
    case Observable::directivity: return "directivity";
  }
  return "unknown";
}

Engine parse_engine(std::string_view name) {
  for (Engine e : {Engine::master, Engine::diagrams, Engine::analytic})
    if (to_string(e) == name) return e;
  throw std::invalid_argument("unknown engine: " + std::string(name));
}

Observable parse_observable(std::string_view name) {
  for (Observable o : kObservables)
    if (to_string(o) == name) return o;
  throw std::invalid_argument("unknown observable: " + std::string(name));
}

std::vector<Engine> parse_engines(std::string_view name) {
  if (name == "all") return {Engine::master, Engine::diagrams, Engine::analytic};
  return {parse_engine(name)};
}

std::string column_name(Observable observable, Engine engine) {
  return std::string(to_string(observable)) + "_" + std::string(to_string(engine));
}

bool supports(Engine engine, Observable observable, const SystemConfig& base) {
  const int n = base.n_qubits;
  switch (engine) {
    case Engine::master:
      return true;
    case Engine::diagrams:
      if (observable == Observable::spectrum) return false;
      if (observable == Observable::I1) return n == 1;
      if (observable == Observable::G2mm) return true;
      return n <= diagrams::kMaxFourCopyQubits;
    case Engine::analytic:
      if (n == 1) return observable != Observable::G2mm;
      if (n == 2) return observable != Observable::I1 && observable != Observable::spectrum;
      return false;
  }
  return false;
}

void ScanSpec::validate() const {
  base.validate();
  check_axis(axis1, base);
  check_axis(axis2, base);
  if (axis1.parameter == axis2.parameter) throw std::invalid_argument("both axes scan " + axis1.parameter);
  if (observables.empty()) throw std::invalid_argument("no observables requested");
  if (engines.empty()) throw std::invalid_argument("no engines requested");
  if (truncation.per_mode < 1) throw std::invalid_argument("per-mode cutoff must be >= 1");
  if (truncation.total && *truncation.total < 1) throw std::invalid_argument("total cutoff must be >= 1");
  const bool has_omega = axis1.parameter == "omega_scan" || axis2.parameter == "omega_scan";
  for (Observable o : observables) {
    if (o == Observable::spectrum && !has_omega) throw std::invalid_argument("spectrum needs an omega_scan axis");
    bool any = false;
    for (Engine e : engines) {
      const bool ok = supports(e, o, base);
      any = any || ok;
      if (!ok && engines.size() == 1) {
        throw std::invalid_argument("engine " + std::string(to_string(e)) + " does not support " +
                                    std::string(to_string(o)) + " for n_qubits=" + std::to_string(base.n_qubits));
      }
    }
    if (!any) throw std::invalid_argument("no requested engine supports " + std::string(to_string(o)));
  }
}

const Layer* ScanResult::find(Observable observable, Engine engine) const {
  for (const auto& l : layers)
    if (l.observable == observable && l.engine == engine) return &l;
  return nullptr;
}

const Layer& ScanResult::layer(Observable observable, Engine engine) const {
  if (const Layer* l = find(observable, engine)) return *l;
  throw std::out_of_range("scan result has no layer " + column_name(observable, engine));
}

SystemConfig point_config(const ScanSpec& spec, double value1, double value2) {
  SystemConfig c = spec.base;
  apply(c, spec.axis1.parameter, value1);
  apply(c, spec.axis2.parameter, value2);
  return c;
}

std::vector<double> linspace(double first, double last, int count) {
  if (count < 1) throw std::invalid_argument("linspace needs count >= 1");
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = first;
    return v;
  }
  const double step = (last - first) / (count - 1);
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = first + step * i;
  v.back() = last;
  return v;
}

ScanResult run_scan(const ScanSpec& spec) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto n1 = static_cast<Eigen::Index>(spec.axis1.values.size());
  const auto n2 = static_cast<Eigen::Index>(spec.axis2.values.size());
  const int omega_axis = spec.axis1.parameter == "omega_scan" ? 1 : spec.axis2.parameter == "omega_scan" ? 2 : 0;

  ScanResult result;
  result.base = spec.base;
  result.axis1 = describe(spec.axis1, spec.base);
  result.axis2 = describe(spec.axis2, spec.base);
  for (Engine e : spec.engines) {
    bool used = false;
    for (Observable o : spec.observables) {
      if (!supports(e, o, spec.base)) continue;
      result.layers.push_back({o, e, RMatrix::Constant(n1, n2, kNaN)});
      used = true;
    }
    if (used) result.masks.push_back({e, Eigen::MatrixXi::Zero(n1, n2)});
  }
  const bool want_spectrum =
      std::find(spec.observables.begin(), spec.observables.end(), Observable::spectrum) != spec.observables.end();

  const int nq = spec.base.n_qubits;
  std::vector<std::string> overlay_names;
  if (spec.overlays) {
    for (int k = 0; k < nq * nq; ++k) overlay_names.push_back("pair_eig_" + std::to_string(k));
    for (int k = 0; k < nq; ++k) overlay_names.push_back("single_eig2_" + std::to_string(k));
    if (nq == 2) overlay_names.push_back("g2_zero_line");
    for (const auto& name : overlay_names) result.overlays.push_back({name, RMatrix::Constant(n1, n2, kNaN)});
  }

  // A task is a set of grid points that share one configuration.
  const std::size_t tasks = omega_axis == 2 ? static_cast<std::size_t>(n1)
                            : omega_axis == 1 ? static_cast<std::size_t>(n2)
                                              : static_cast<std::size_t>(n1 * n2);
  std::mutex notes_mutex;
  std::vector<std::string> failures;

  detail::parallel_for(tasks, spec.threads, [&](std::size_t task) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> points;
    if (omega_axis == 2) {
      for (Eigen::Index j = 0; j < n2; ++j) points.emplace_back(static_cast<Eigen::Index>(task), j);
    } else if (omega_axis == 1) {
      for (Eigen::Index i = 0; i < n1; ++i) points.emplace_back(i, static_cast<Eigen::Index>(task));
    } else {
      points.emplace_back(static_cast<Eigen::Index>(task) / n2, static_cast<Eigen::Index>(task) % n2);
    }
    const auto [i0, j0] = points.front();
    const SystemConfig config =
        point_config(spec, spec.axis1.values[static_cast<std::size_t>(i0)], spec.axis2.values[static_cast<std::size_t>(j0)]);
    std::vector<double> omegas;
    for (auto [i, j] : points) {
      if (omega_axis == 1) omegas.push_back(spec.axis1.values[static_cast<std::size_t>(i)]);
      if (omega_axis == 2) omegas.push_back(spec.axis2.values[static_cast<std::size_t>(j)]);
    }

    for (auto& mask : result.masks) {
      EngineOutput out;
      try {
        switch (mask.engine) {
          case Engine::master: out = evaluate_master(spec, config, omegas, want_spectrum); break;
          case Engine::diagrams: out = evaluate_diagrams(spec, config); break;
          case Engine::analytic: out = evaluate_analytic(config, omegas, want_spectrum); break;
        }
      } catch (const std::exception& err) {
        for (auto [i, j] : points) mask.flags(i, j) = 1;
        std::lock_guard lock(notes_mutex);
        failures.push_back(std::string(to_string(mask.engine)) + " failed at (" + std::to_string(i0) + "," +
                           std::to_string(j0) + "): " + err.what());
        continue;
      }
      for (auto& layer : result.layers) {
        if (layer.engine != mask.engine) continue;
        for (std::size_t k = 0; k < points.size(); ++k) {
          const auto [i, j] = points[k];
          if (layer.observable == Observable::spectrum) {
            layer.values(i, j) = out.spectrum[k];
            if (!out.spectrum_valid[k]) mask.flags(i, j) = 1;
          } else {
            layer.values(i, j) = out.scalars[slot(layer.observable)];
          }
        }
      }
    }

    if (!overlay_names.empty()) {
      std::vector<double> row;
      const auto two = model::two_excitation_hamiltonian(config).eigenvalues;
      for (Eigen::Index k = 0; k < two.size(); ++k) row.push_back(two(k).real() - 2.0 * config.omega0);
      Eigen::ComplexEigenSolver<CMatrix> one(model::single_excitation_hamiltonian(config).entries, false);
      std::vector<double> singles;
      for (Eigen::Index k = 0; k < one.eigenvalues().size(); ++k)
        singles.push_back(2.0 * one.eigenvalues()(k).real() - 2.0 * config.omega0);
      std::sort(singles.begin(), singles.end());
      row.insert(row.end(), singles.begin(), singles.end());
      if (nq == 2) {
        const auto sp = analytic::two_qubit_special_points(config);
        row.push_back(sp.g2_zero_freq ? sp.g2_zero_freq->value - 2.0 * config.omega0 : kNaN);
      }
      for (std::size_t k = 0; k < row.size(); ++k)
        for (auto [i, j] : points) result.overlays[k].values(i, j) = row[k];
    }
  });

  std::sort(failures.begin(), failures.end());
  result.provenance.code_version = WGCASIMIR_VERSION;
  result.provenance.created_utc = utc_now();
  result.provenance.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.provenance.threads = detail::resolve_threads(spec.threads);
  result.provenance.truncation = spec.truncation;
  result.provenance.notes = std::move(failures);
  if (nq > 1 && want_spectrum)
    result.provenance.notes.emplace_back("spectrum of p_- for n_qubits > 1 is an extension beyond the single-qubit case");
  return result;
}

}  // namespace wgcasimir::sweep
