#include "qfhe/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qfhe/errors.hpp"
#include "qfhe/kernels.hpp"

namespace qfhe {
namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::size_t log2_exact(std::size_t v) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < v) ++n;
  return n;
}

bool all_finite(const Matrix& m) {
  return m.unaryExpr([](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); })
      .all();
}

void check_wires(std::span<const std::size_t> wires, std::size_t n_qubits) {
  if (wires.empty()) throw std::invalid_argument("no wires given");
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (wires[i] >= n_qubits) {
      throw std::invalid_argument("wire " + std::to_string(wires[i]) + " out of range for " +
                                  std::to_string(n_qubits) + " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (wires[i] == wires[j]) {
        throw std::invalid_argument("duplicate wire " + std::to_string(wires[i]));
      }
    }
  }
}

}  // namespace

double canonical_angle(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi || r == 0.0) r = 0.0;  // also clears -0.0
  return r;
}

Bits bits_from_string(std::string_view text) {
  Bits out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string may only contain 0 and 1: '" + std::string(text) + "'");
    }
    out.push_back(c == '1');
  }
  return out;
}

std::string bits_to_string(const Bits& bits) {
  std::string out;
  out.reserve(bits.size());
  for (bool b : bits) out.push_back(b ? '1' : '0');
  return out;
}

std::size_t gate_arity(GateKind kind) { return kind == GateKind::CNOT ? 2 : 1; }

std::size_t gate_param_count(GateKind kind) {
  switch (kind) {
    case GateKind::Rz:
    case GateKind::Ry:
      return 1;
    case GateKind::U:
      return 4;
    default:
      return 0;
  }
}

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::Rz: return "rz";
    case GateKind::Ry: return "ry";
    case GateKind::U: return "u";
    case GateKind::CNOT: return "cnot";
  }
  return "?";
}

DenseOperator::DenseOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || !is_power_of_two(static_cast<std::size_t>(m_.rows()))) {
    throw DimensionError("operator must be square with power-of-two dimension, got " +
                         std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
  }
  if (!all_finite(m_)) throw std::invalid_argument("operator has non-finite entries");
  qubits_ = log2_exact(static_cast<std::size_t>(m_.rows()));
}

DenseOperator DenseOperator::identity(std::size_t n_qubits) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  return DenseOperator(Matrix::Identity(d, d));
}

bool DenseOperator::is_unitary(double tol) const {
  return max_abs_diff(m_.adjoint() * m_, Matrix::Identity(m_.rows(), m_.cols())) <= tol;
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) throw DimensionError("operator product dimension mismatch");
  return DenseOperator(a.m_ * b.m_);
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  const auto& am = a.matrix();
  const auto& bm = b.matrix();
  Matrix out(am.rows() * bm.rows(), am.cols() * bm.cols());
  for (Eigen::Index i = 0; i < am.rows(); ++i) {
    for (Eigen::Index j = 0; j < am.cols(); ++j) {
      out.block(i * bm.rows(), j * bm.cols(), bm.rows(), bm.cols()) = am(i, j) * bm;
    }
  }
  return DenseOperator(std::move(out));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  const auto d = static_cast<std::size_t>(amps_.size());
  if (!is_power_of_two(d)) {
    throw DimensionError("state length must be a power of two, got " + std::to_string(d));
  }
  if (!all_finite(amps_)) throw std::invalid_argument("state has non-finite amplitudes");
  if (std::abs(amps_.squaredNorm() - 1.0) > kInvariantTol) {
    throw std::invalid_argument("state is not normalized");
  }
  qubits_ = log2_exact(d);
}

PureState::PureState(Unchecked, std::size_t n_qubits, Vector amplitudes)
    : qubits_(n_qubits), amps_(std::move(amplitudes)) {}

PureState PureState::basis(std::size_t n_qubits, std::size_t index) {
  const std::size_t d = std::size_t{1} << n_qubits;
  if (index >= d) throw std::invalid_argument("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(Unchecked{}, n_qubits, std::move(v));
}

DensityState::DensityState(Matrix m) : m_(std::move(m)) {
  const auto d = static_cast<std::size_t>(m_.rows());
  if (m_.rows() != m_.cols() || !is_power_of_two(d)) {
    throw DimensionError("density matrix must be square with power-of-two dimension");
  }
  if (!all_finite(m_)) throw std::invalid_argument("density matrix has non-finite entries");
  if (max_abs_diff(m_, m_.adjoint()) > kInvariantTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - Complex(1.0)) > kInvariantTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kInvariantTol) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
  qubits_ = log2_exact(d);
}

DensityState::DensityState(Unchecked, std::size_t n_qubits, Matrix m)
    : qubits_(n_qubits), m_(std::move(m)) {}

DensityState DensityState::from_pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  return DensityState(Unchecked{}, psi.qubits(), v * v.adjoint());
}

DenseOperator gate_matrix(GateKind kind, std::span<const double> params) {
  if (params.size() != gate_param_count(kind)) {
    throw std::invalid_argument(std::string("gate ") + gate_name(kind) + " takes " +
                                std::to_string(gate_param_count(kind)) + " parameter(s), got " +
                                std::to_string(params.size()));
  }
  const Complex i(0.0, 1.0);
  Matrix m(2, 2);
  switch (kind) {
    case GateKind::X:
      m << 0, 1, 1, 0;
      break;
    case GateKind::Y:
      m << 0, -i, i, 0;
      break;
    case GateKind::Z:
      m << 1, 0, 0, -1;
      break;
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      m << s, s, s, -s;
      break;
    }
    case GateKind::Rz: {
      const double h = params[0] / 2.0;
      m << std::polar(1.0, -h), 0, 0, std::polar(1.0, h);
      break;
    }
    case GateKind::Ry: {
      const double c = std::cos(params[0] / 2.0);
      const double s = std::sin(params[0] / 2.0);
      m << c, -s, s, c;
      break;
    }
    case GateKind::U: {
      const double alpha = params[0];
      const double beta = params[1];
      const double gamma = params[2];
      const double delta = params[3];
      const double c = std::cos(gamma / 2.0);
      const double s = std::sin(gamma / 2.0);
      // c and s may be negative for gamma > pi, so no std::polar here.
      const auto phase = [](double t) { return Complex(std::cos(t), std::sin(t)); };
      m << c * phase(alpha - (beta + delta) / 2.0), -s * phase(alpha - (beta - delta) / 2.0),
          s * phase(alpha + (beta - delta) / 2.0), c * phase(alpha + (beta + delta) / 2.0);
      break;
    }
    case GateKind::CNOT: {
      Matrix c = Matrix::Zero(4, 4);
      c(0, 0) = 1;
      c(1, 1) = 1;
      c(2, 3) = 1;
      c(3, 2) = 1;
      return DenseOperator(std::move(c));
    }
  }
  return DenseOperator(std::move(m));
}

DenseOperator pauli_operator(const Bits& x_bits, const Bits& z_bits) {
  if (x_bits.size() != z_bits.size()) {
    throw std::invalid_argument("pauli_operator: x and z bit strings differ in length");
  }
  const std::size_t n = x_bits.size();
  const std::size_t d = std::size_t{1} << n;
  // X^a Z^b maps |c> to (-1)^{b.c} |c xor a>.
  std::size_t a = 0;
  std::size_t b = 0;
  for (std::size_t w = 0; w < n; ++w) {
    const std::size_t bit = std::size_t{1} << (n - 1 - w);
    if (x_bits[w]) a |= bit;
    if (z_bits[w]) b |= bit;
  }
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t c = 0; c < d; ++c) {
    const double sign = (std::popcount(b & c) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(c ^ a), static_cast<Eigen::Index>(c)) = sign;
  }
  return DenseOperator(std::move(m));
}

DensityState apply_to_density(const DenseOperator& u, const DensityState& rho) {
  if (u.dim() != rho.dim()) throw DimensionError("apply_to_density: dimension mismatch");
  return DensityState(Unchecked{}, rho.qubits(), u.matrix() * rho.matrix() * u.matrix().adjoint());
}

PureState apply_to_wires(const DenseOperator& u, std::span<const std::size_t> wires,
                         const PureState& psi) {
  check_wires(wires, psi.qubits());
  if (u.qubits() != wires.size()) {
    throw DimensionError("apply_to_wires: operator acts on " + std::to_string(u.qubits()) +
                         " qubit(s) but " + std::to_string(wires.size()) + " wire(s) given");
  }
  const auto n = static_cast<unsigned>(psi.qubits());
  std::vector<unsigned> bits;
  bits.reserve(wires.size());
  for (std::size_t w : wires) bits.push_back(n - 1 - static_cast<unsigned>(w));
  Vector out = psi.amplitudes();
  kernels::apply_gate(std::span<Complex>(out.data(), static_cast<std::size_t>(out.size())), n, bits,
                      u.matrix());
  return PureState(Unchecked{}, psi.qubits(), std::move(out));
}

DensityState apply_to_wires(const DenseOperator& u, std::span<const std::size_t> wires,
                            const DensityState& rho) {
  check_wires(wires, rho.qubits());
  if (u.qubits() != wires.size()) {
    throw DimensionError("apply_to_wires: operator acts on " + std::to_string(u.qubits()) +
                         " qubit(s) but " + std::to_string(wires.size()) + " wire(s) given");
  }
  Matrix out = rho.matrix();
  kernels::apply_conjugation(std::span<Complex>(out.data(), static_cast<std::size_t>(out.size())),
                             static_cast<unsigned>(rho.qubits()), wires, u.matrix());
  return DensityState(Unchecked{}, rho.qubits(), std::move(out));
}

DenseOperator embed(const DenseOperator& u, std::span<const std::size_t> wires,
                    std::size_t n_qubits) {
  check_wires(wires, n_qubits);
  if (u.qubits() != wires.size()) throw DimensionError("embed: operator/wire count mismatch");
  const std::size_t d = std::size_t{1} << n_qubits;
  const std::size_t k = wires.size();
  std::size_t mask = 0;
  for (std::size_t w : wires) mask |= std::size_t{1} << (n_qubits - 1 - w);
  auto local = [&](std::size_t index) {
    std::size_t l = 0;
    for (std::size_t i = 0; i < k; ++i) {
      l = (l << 1) | ((index >> (n_qubits - 1 - wires[i])) & 1);
    }
    return l;
  };
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = u(local(r), local(c));
    }
  }
  return DenseOperator(std::move(m));
}

double trace_distance(const DensityState& rho, const DensityState& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("trace_distance: dimension mismatch");
  const Matrix diff = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
  const double d = 0.5 * solver.eigenvalues().cwiseAbs().sum();
  return std::clamp(d, 0.0, 1.0);
}

DensityState maximally_mixed(std::size_t n_qubits) {
  if (n_qubits == 0) throw std::invalid_argument("maximally_mixed: n must be at least 1");
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  Matrix m = Matrix::Identity(d, d) / static_cast<double>(d);
  return DensityState(Unchecked{}, n_qubits, std::move(m));
}

}  // namespace qfhe
