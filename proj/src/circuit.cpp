#include "qfhe/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qfhe/errors.hpp"

namespace qfhe {
namespace {

constexpr double kDegenerateTol = 1e-12;

// Zero out angles within kDegenerateTol of 0 or 2*pi.
double snap(double radians) {
  const double r = canonical_angle(radians);
  return (r < kDegenerateTol || kTwoPi - r < kDegenerateTol) ? 0.0 : r;
}

}  // namespace

Gate::Gate(GateKind kind, std::initializer_list<std::size_t> wires,
           std::initializer_list<double> params)
    : kind_(kind) {
  if (wires.size() != gate_arity(kind)) {
    throw std::invalid_argument(std::string("gate ") + gate_name(kind) + " takes " +
                                std::to_string(gate_arity(kind)) + " wire(s)");
  }
  if (params.size() != gate_param_count(kind)) {
    throw std::invalid_argument(std::string("gate ") + gate_name(kind) + " takes " +
                                std::to_string(gate_param_count(kind)) + " parameter(s), got " +
                                std::to_string(params.size()));
  }
  std::size_t i = 0;
  for (std::size_t w : wires) wires_[i++] = w;
  i = 0;
  for (double p : params) {
    if (!std::isfinite(p)) throw std::invalid_argument("gate angle is not finite");
    params_[i++] = canonical_angle(p);
  }
  if (kind == GateKind::CNOT && wires_[0] == wires_[1]) {
    throw std::invalid_argument("cnot control and target must differ");
  }
}

Circuit::Circuit(std::size_t n_qubits, std::vector<Gate> gates) : n_(n_qubits) {
  if (n_ == 0) throw std::invalid_argument("circuit must have at least one qubit");
  gates_.reserve(gates.size());
  for (const Gate& g : gates) append(g);
}

void Circuit::append(const Gate& g) {
  for (std::size_t w : g.wires()) {
    if (w >= n_) {
      throw std::invalid_argument("wire " + std::to_string(w) + " out of range for " +
                                  std::to_string(n_) + " qubits");
    }
  }
  gates_.push_back(g);
}

namespace {

template <typename State>
State run(const Circuit& c, const State& in) {
  if (c.qubits() != in.qubits()) {
    throw DimensionError("circuit has " + std::to_string(c.qubits()) + " qubit(s) but state has " +
                         std::to_string(in.qubits()));
  }
  State out = in;
  for (const Gate& g : c.gates()) out = apply_to_wires(g.matrix(), g.wires(), out);
  return out;
}

}  // namespace

PureState simulate(const Circuit& c, const PureState& psi) { return run(c, psi); }

DensityState simulate(const Circuit& c, const DensityState& rho) { return run(c, rho); }

EulerAngles euler_decompose(const DenseOperator& u) {
  if (u.dim() != 2) throw DimensionError("euler_decompose expects a 2x2 matrix");
  if (!u.is_unitary(kInvariantTol)) throw NotUnitaryError("euler_decompose: matrix is not unitary");

  // Strip the determinant phase to land in SU(2) up to sign:
  //   v = [[e^{-i(b+d)/2} c, -e^{-i(b-d)/2} s], [e^{i(b-d)/2} s, e^{i(b+d)/2} c]].
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const Complex unphase = std::exp(Complex(0.0, -std::arg(det) / 2.0));
  const Complex v00 = unphase * u(0, 0);
  const Complex v10 = unphase * u(1, 0);
  const Complex v11 = unphase * u(1, 1);

  double gamma = 2.0 * std::atan2(std::abs(v10), std::abs(v00));
  double beta = 0.0;
  double delta = 0.0;
  if (std::sin(gamma / 2.0) <= kDegenerateTol) {
    gamma = 0.0;
    beta = 2.0 * std::arg(v11);
  } else if (std::cos(gamma / 2.0) <= kDegenerateTol) {
    gamma = std::numbers::pi;
    beta = 2.0 * std::arg(v10);
  } else {
    const double sum = 2.0 * std::arg(v11);
    const double diff = 2.0 * std::arg(v10);
    beta = (sum + diff) / 2.0;
    delta = (sum - diff) / 2.0;
  }
  beta = snap(beta);
  delta = snap(delta);

  // Canonicalizing beta and delta can flip the sign of the rotation product,
  // so the global phase is fitted last against the actual product.
  const double rotation[] = {0.0, beta, gamma, delta};
  const Matrix m = gate_matrix(GateKind::U, rotation).matrix();
  const Complex overlap = (m.adjoint() * u.matrix()).trace();
  const double alpha = snap(std::arg(overlap));
  return {alpha, beta, gamma, delta};
}

DenseOperator full_matrix(const Circuit& c) {
  if (c.qubits() > kFullMatrixMaxQubits) {
    throw SizeGuardError("full_matrix is limited to " + std::to_string(kFullMatrixMaxQubits) +
                         " qubits, circuit has " + std::to_string(c.qubits()));
  }
  DenseOperator out = DenseOperator::identity(c.qubits());
  for (const Gate& g : c.gates()) out = embed(g.matrix(), g.wires(), c.qubits()) * out;
  return out;
}

}  // namespace qfhe
