#pragma once

// Circuit IR over CNOT and single-qubit gates, reference simulation and the
// ZYZ Euler decomposition of single-qubit unitaries.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qfhe/linalg.hpp"

namespace qfhe {

// U = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta), all angles canonical.
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  bool operator==(const EulerAngles&) const = default;
};

class Gate {
 public:
  static Gate x(std::size_t wire) { return Gate(GateKind::X, {wire}, {}); }
  static Gate y(std::size_t wire) { return Gate(GateKind::Y, {wire}, {}); }
  static Gate z(std::size_t wire) { return Gate(GateKind::Z, {wire}, {}); }
  static Gate h(std::size_t wire) { return Gate(GateKind::H, {wire}, {}); }
  static Gate rz(std::size_t wire, double theta) { return Gate(GateKind::Rz, {wire}, {theta}); }
  static Gate ry(std::size_t wire, double theta) { return Gate(GateKind::Ry, {wire}, {theta}); }
  static Gate u(std::size_t wire, const EulerAngles& a) {
    return Gate(GateKind::U, {wire}, {a.alpha, a.beta, a.gamma, a.delta});
  }
  static Gate cnot(std::size_t control, std::size_t target) {
    return Gate(GateKind::CNOT, {control, target}, {});
  }

  // Generic factory; validates wire and parameter counts. Angles are canonicalized.
  Gate(GateKind kind, std::initializer_list<std::size_t> wires, std::initializer_list<double> params);

  GateKind kind() const { return kind_; }
  std::span<const std::size_t> wires() const { return {wires_.data(), gate_arity(kind_)}; }
  std::span<const double> params() const { return {params_.data(), gate_param_count(kind_)}; }

  // Single-qubit accessors.
  std::size_t wire() const { return wires_[0]; }
  double theta() const { return params_[0]; }
  EulerAngles euler() const { return {params_[0], params_[1], params_[2], params_[3]}; }

  std::size_t control() const { return wires_[0]; }
  std::size_t target() const { return wires_[1]; }

  DenseOperator matrix() const { return gate_matrix(kind_, params()); }

  bool operator==(const Gate&) const = default;

 private:
  GateKind kind_;
  std::array<std::size_t, 2> wires_{};
  std::array<double, 4> params_{};
};

class Circuit {
 public:
  // Throws std::invalid_argument if n_qubits is 0 or a gate touches a wire >= n_qubits.
  explicit Circuit(std::size_t n_qubits, std::vector<Gate> gates = {});

  std::size_t qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  void append(const Gate& g);

  bool operator==(const Circuit&) const = default;

 private:
  std::size_t n_;
  std::vector<Gate> gates_;
};

// Largest register full_matrix will build.
inline constexpr std::size_t kFullMatrixMaxQubits = 6;

// Reads the JSON circuit format. Throws ParseError with the offending field
// (and line, for syntax errors).
Circuit parse_circuit(std::string_view text);

// Canonical JSON text: fixed key order, one gate per line, shortest
// round-trip float formatting.
std::string serialize_circuit(const Circuit& c);

// Applies the gates left to right.
PureState simulate(const Circuit& c, const PureState& psi);
DensityState simulate(const Circuit& c, const DensityState& rho);

// Throws NotUnitaryError if u is not a unitary 2x2 matrix (tolerance 1e-9).
// gamma is returned in [0, pi]; when sin(gamma/2) or cos(gamma/2) vanishes
// (within 1e-12) delta is 0 and the residual z rotation is folded into beta.
EulerAngles euler_decompose(const DenseOperator& u);

// Product of the embedded gate matrices; later gates multiply on the left.
// Throws SizeGuardError above kFullMatrixMaxQubits.
DenseOperator full_matrix(const Circuit& c);

}  // namespace qfhe
