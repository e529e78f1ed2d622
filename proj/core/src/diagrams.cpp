#include "wgcasimir/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace wgcasimir::diagrams {

namespace {

constexpr double kVertexAgreement = 1e-9;

CMatrix hamiltonian(const SystemConfig& config) {
  config.validate();
  return model::single_excitation_hamiltonian(config).entries;
}

CMatrix eye(Eigen::Index n) { return CMatrix::Identity(n, n); }

/// H (x) 1 + 1 (x) H.
CMatrix pair_hamiltonian(const CMatrix& h) {
  const CMatrix id = eye(h.rows());
  return model::kron(h, id) + model::kron(id, h);
}

Eigen::Index pair_index(int n, int i, int j) { return static_cast<Eigen::Index>(i) * n + j; }

/// Restriction of an N^2 x N^2 matrix to the doubly occupied pairs (ii),(jj).
CMatrix diagonal_pairs(const CMatrix& m, int n) {
  CMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(pair_index(n, i, i), pair_index(n, j, j));
  return out;
}

/// (Omega - H2 - V)^{-1}, the interacting pair resolvent.
CMatrix interacting_pair_resolvent(const SystemConfig& config, const CMatrix& h) {
  const CMatrix h2 = pair_hamiltonian(h);
  const CMatrix m = config.drive_freq * eye(h2.rows()) - h2 - model::pair_interaction(config);
  return m.partialPivLu().inverse();
}

CMatrix kron4(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d) {
  return model::kron(model::kron(model::kron(a, b), c), d);
}

}  // namespace

CMatrix single_green(const SystemConfig& config, cplx omega) {
  const CMatrix h = hamiltonian(config);
  const CMatrix m = omega * eye(h.rows()) - h;
  Eigen::PartialPivLU<CMatrix> lu(m);
  if (!(lu.rcond() > 1e-14)) throw NumericalError("single-excitation Green function is singular", lu.rcond());
  return lu.inverse();
}

CVector outgoing_line(const SystemConfig& config, cplx omega, Direction direction) {
  return single_green(config, omega) * model::direction_phases(config, direction);
}

CMatrix emission_vertex(const SystemConfig& config) { return -model::photon_green(config); }

PairPropagator pair_propagator(const SystemConfig& config, double omega) {
  const CMatrix h = hamiltonian(config);
  const CMatrix h2 = pair_hamiltonian(h);
  const CMatrix r = (omega * eye(h2.rows()) - h2).partialPivLu().inverse();
  const CMatrix sigma = diagonal_pairs(r, config.n_qubits);
  // Sigma is complex symmetric since H is; remove the rounding asymmetry of the inverse.
  return {0.5 * (sigma + sigma.transpose()), omega};
}

PairPropagator pair_propagator_quadrature(const SystemConfig& config, double omega, const QuadratureOptions& options) {
  using boost::math::quadrature::gauss_kronrod;
  const CMatrix h = hamiltonian(config);
  const int n = config.n_qubits;

  Eigen::ComplexEigenSolver<CMatrix> eig(h, false);
  std::vector<double> points;
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
    points.push_back(eig.eigenvalues()(k).real());
    points.push_back(omega - eig.eigenvalues()(k).real());
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<double> cuts;
  cuts.push_back(points.front() - options.window);
  for (double p : points) cuts.push_back(p);
  cuts.push_back(points.back() + options.window);
  const double inf = std::numeric_limits<double>::infinity();

  CMatrix sigma(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      auto entry = [&](double w) {
        return single_green(config, w)(i, j) * single_green(config, omega - w)(i, j);
      };
      auto integrate = [&](auto part) {
        auto f = [&](double w) { return part(entry(w)); };
        double total = gauss_kronrod<double, 61>::integrate(f, -inf, cuts.front(), options.max_depth, options.tolerance);
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
          total += gauss_kronrod<double, 61>::integrate(f, cuts[k], cuts[k + 1], options.max_depth, options.tolerance);
        total += gauss_kronrod<double, 61>::integrate(f, cuts.back(), inf, options.max_depth, options.tolerance);
        return total;
      };
      const double re = integrate([](cplx z) { return z.real(); });
      const double im = integrate([](cplx z) { return z.imag(); });
      sigma(i, j) = kI * cplx(re, im) / (2.0 * kPi);
      sigma(j, i) = sigma(i, j);
    }
  }
  return {std::move(sigma), omega};
}

DressedVertex dressed_vertex(const SystemConfig& config, double omega) {
  const int n = config.n_qubits;
  const double u = config.anharmonicity;
  DressedVertex out;
  if (u == 0.0) {
    out.m = CMatrix::Zero(n, n);
    out.m_resolvent_form = CMatrix::Zero(n, n);
    return out;
  }
  const CMatrix sigma = pair_propagator(config, omega).sigma;
  const CMatrix inv_m = eye(n) / u - sigma;
  Eigen::PartialPivLU<CMatrix> lu(inv_m);
  if (!(lu.rcond() > 1e-14)) throw NumericalError("dressed vertex is singular at this drive frequency", lu.rcond());
  out.m = lu.inverse();

  const CMatrix h = hamiltonian(config);
  const CMatrix h2 = pair_hamiltonian(h);
  const CMatrix v = model::pair_interaction(config);
  const CMatrix free = omega * eye(h2.rows()) - h2;
  const CMatrix k = free * (free - v).partialPivLu().inverse() * v;
  out.m_resolvent_form = diagonal_pairs(k, n);

  const double scale = out.m.cwiseAbs().maxCoeff();
  out.discrepancy = scale > 0.0 ? (out.m - out.m_resolvent_form).cwiseAbs().maxCoeff() / scale : 0.0;
  if (out.discrepancy > kVertexAgreement) {
    std::ostringstream msg;
    msg << "dressed vertex representations disagree by " << out.discrepancy;
    throw NumericalError(msg.str(), lu.rcond());
  }
  return out;
}

cplx two_photon_amplitude(const SystemConfig& config, PairChannel channel, double omega1) {
  config.validate();
  const int n = config.n_qubits;
  const double omega2 = config.drive_freq - omega1;
  const CVector first = outgoing_line(config, omega1, Direction::left);
  const CVector second =
      outgoing_line(config, omega2, channel == PairChannel::left_left ? Direction::left : Direction::right);
  CMatrix vertex = eye(n);
  if (config.anharmonicity != 0.0) {
    const DressedVertex m = dressed_vertex(config, config.drive_freq);
    vertex += m.m * pair_propagator(config, config.drive_freq).sigma;
  }
  const CVector created = vertex * config.pair_amplitudes();
  return config.gamma1d * (first.array() * second.array() * created.array()).sum();
}

double g2_zero_diagram(const SystemConfig& config) {
  const int n = config.n_qubits;
  const CMatrix h = hamiltonian(config);
  const CMatrix a = emission_vertex(config);
  const CMatrix r = interacting_pair_resolvent(config, h);
  const CVector g = config.pair_amplitudes();
  // Row (0,0) of A (x) A is a_0j a_0k.
  Eigen::RowVectorXcd row(n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) row(pair_index(n, j, k)) = a(0, j) * a(0, k);
  const Eigen::RowVectorXcd kernel = row * r;
  cplx sum = 0.0;
  for (int i = 0; i < n; ++i) sum += kernel(pair_index(n, i, i)) * g(i);
  return std::norm(sum) / std::pow(config.gamma1d, 4);
}

double g2_zero_high_u(const SystemConfig& config) {
  config.validate();
  const CVector g = config.pair_amplitudes();
  cplx sum = 0.0;
  for (int i = 0; i < config.n_qubits; ++i) sum += g(i) * std::exp(2.0 * kI * config.qd * static_cast<double>(i));
  const double detuning = config.drive_freq - 2.0 * config.omega0 - config.anharmonicity;
  const double gs = config.gamma_sigma();
  return std::norm(sum) / (detuning * detuning + 4.0 * gs * gs);
}

double g2_zero_low_omega(const SystemConfig& config) {
  if (config.anharmonicity == 0.0) throw std::invalid_argument("low-Omega pair correlation needs U != 0");
  const int n = config.n_qubits;
  const CMatrix h = hamiltonian(config);
  const CMatrix a = emission_vertex(config);
  const CMatrix h2 = pair_hamiltonian(h);
  const CMatrix r = (config.drive_freq * eye(h2.rows()) - h2).partialPivLu().inverse();
  Eigen::RowVectorXcd row(n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) row(pair_index(n, j, k)) = a(0, j) * a(0, k);
  const Eigen::RowVectorXcd kernel = row * r / (config.gamma1d * config.gamma1d);
  Eigen::RowVectorXcd sigma_plus(n);
  for (int i = 0; i < n; ++i) sigma_plus(i) = kernel(pair_index(n, i, i));
  const CMatrix sigma = diagonal_pairs(r, n);
  const cplx value = (sigma_plus * sigma.partialPivLu().solve(config.pair_amplitudes()))(0);
  const double u = config.anharmonicity;
  return std::norm(value) / (u * u);
}

DirectionalIntensities emission_intensities_diagram(const SystemConfig& config) {
  config.validate();
  const int n = config.n_qubits;
  if (n > kMaxFourCopyQubits) {
    throw std::invalid_argument("four-copy intensity form needs dense N^4 matrices; refusing N=" + std::to_string(n) +
                                " > " + std::to_string(kMaxFourCopyQubits));
  }
  DirectionalIntensities out;
  if (config.gamma_nr != 0.0)
    out.warnings.emplace_back("closed-form intensities assume lossless qubits; gamma_nr > 0 is exploratory");

  const CMatrix h = hamiltonian(config);
  const CMatrix hc = h.conjugate();
  const CMatrix a = emission_vertex(config);
  const CMatrix ac = a.conjugate();
  const CMatrix id = eye(n);
  const CMatrix id2 = eye(n * n);
  const Eigen::Index dim = static_cast<Eigen::Index>(n) * n * n * n;
  const CMatrix id4 = eye(dim);
  const double omega = config.drive_freq;

  const CMatrix h1 = kron4(h, id, id, id);
  const CMatrix h2 = kron4(id, h, id, id);
  const CMatrix h3 = kron4(id, id, hc, id);
  const CMatrix h4 = kron4(id, id, id, hc);
  const CMatrix v = model::pair_interaction(config);
  const CMatrix v12 = model::kron(v, id2);
  const CMatrix v34 = model::kron(id2, v);

  auto quad = [n](int i, int j, int k, int l) {
    return ((static_cast<Eigen::Index>(i) * n + j) * n + k) * n + l;
  };
  CMatrix cols = CMatrix::Zero(dim, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cols(quad(i, i, j, j), pair_index(n, i, j)) = 1.0;

  const CMatrix y1 = (omega * id4 - h3 - h4 - v34).partialPivLu().solve(cols);
  const CMatrix y2 = (omega * id4 - h1 - h2 - v12).partialPivLu().solve(y1);
  const CMatrix w1 = (h1 - h3).partialPivLu().solve(y2);
  const CMatrix w2 = (h4 - h2).partialPivLu().solve(y2);
  const CMatrix mid = (omega * id4 - h3 - h4) * w1 - (omega * id4 - h1 - h2) * w2;
  const CMatrix y3 = (omega * id4 - h1 - h4).partialPivLu().solve(mid);

  const CVector g = config.pair_amplitudes();
  const double g1 = config.gamma1d;
  auto channel = [&](int r1, int r2) {
    // Row (r1, r2, r1, r2) of A (x) A (x) A* (x) A* applied to y3.
    cplx total = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        cplx element = 0.0;
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            for (int s = 0; s < n; ++s)
              for (int t = 0; t < n; ++t)
                element += a(r1, p) * a(r2, q) * ac(r1, s) * ac(r2, t) * y3(quad(p, q, s, t), pair_index(n, i, j));
        total += g(i) * std::conj(g(j)) * element;
      }
    }
    const cplx value = total / (kI * g1 * g1);
    return value.real() / g1;
  };
  const int last = n - 1;
  out.left_left = channel(0, 0);
  out.left_right = channel(0, last);
  out.right_right = channel(last, last);
  out.right_left = channel(last, 0);
  out.i_minus = out.left_left + out.left_right;
  out.i_plus = out.right_right + out.right_left;
  return out;
}

DirectionalIntensities emission_intensities_high_u(const SystemConfig& config) {
  config.validate();
  const int n = config.n_qubits;
  DirectionalIntensities out;
  if (config.gamma_nr != 0.0)
    out.warnings.emplace_back("closed-form intensities assume lossless qubits; gamma_nr > 0 is exploratory");
  const CMatrix h = hamiltonian(config);
  const CMatrix a = emission_vertex(config);
  const CMatrix ac = a.conjugate();
  const CMatrix id = eye(n);
  const CMatrix q = model::kron(a, ac) * (model::kron(id, h.conjugate()) - model::kron(h, id)).partialPivLu().inverse();
  const double detuning = config.drive_freq - 2.0 * config.omega0 - config.anharmonicity;
  const double gs = config.gamma_sigma();
  const double lorentz = detuning * detuning + 4.0 * gs * gs;
  const double g1 = config.gamma1d;
  const CVector g = config.pair_amplitudes();
  const int last = n - 1;

  auto same = [&](int r) {
    cplx total = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        total += g(i) * std::conj(g(j)) * a(r, i) * ac(r, j) * q(pair_index(n, r, r), pair_index(n, i, j));
    return (2.0 * kI * total / (g1 * g1 * lorentz)).real() / g1;
  };
  cplx mixed = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      mixed += g(i) * std::conj(g(j)) *
               (a(0, i) * ac(0, j) * q(pair_index(n, last, last), pair_index(n, i, j)) +
                a(last, i) * ac(last, j) * q(pair_index(n, 0, 0), pair_index(n, i, j)));
    }
  }
  const double opposite = (kI * mixed / (g1 * g1 * lorentz)).real() / g1;
  out.left_left = same(0);
  out.right_right = same(last);
  out.left_right = opposite;
  out.right_left = opposite;
  out.i_minus = out.left_left + out.left_right;
  out.i_plus = out.right_right + out.right_left;
  return out;
}

OpticalTheorem optical_theorem(const SystemConfig& config) {
  const CMatrix h = hamiltonian(config);
  const CMatrix sigma = diagonal_pairs(interacting_pair_resolvent(config, h), config.n_qubits);
  const CVector g = config.pair_amplitudes();
  const cplx x = g.dot(sigma * g);
  OpticalTheorem out;
  out.s = 1.0 - kI * x;
  out.intensity_sum = -4.0 / config.gamma1d * x.imag();
  out.residual = 2.0 - 2.0 * std::norm(out.s) - out.intensity_sum;
  return out;
}

}  // namespace wgcasimir::diagrams
