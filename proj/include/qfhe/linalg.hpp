#pragma once

// Dense complex linear algebra for n-qubit operators and states.
//
// Conventions used throughout the library:
//   * qubit (wire) 0 is the most significant tensor factor, so basis index
//     bit (n - 1 - w) belongs to wire w;
//   * products like X^a Z^b act right to left (Z^b first);
//   * angles are radians, canonical in [0, 2*pi).

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qfhe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// One bit per qubit, index = wire.
using Bits = std::vector<bool>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerance for invariants checked when a value is constructed.
inline constexpr double kInvariantTol = 1e-9;

// Reduces an angle into [0, 2*pi).
double canonical_angle(double radians);

Bits bits_from_string(std::string_view text);
std::string bits_to_string(const Bits& bits);

// Tag selecting constructors that skip invariant checks. Used by the library
// for values produced by unitary evolution of already-validated inputs.
struct Unchecked {};

enum class GateKind { X, Y, Z, H, Rz, Ry, U, CNOT };

std::size_t gate_arity(GateKind kind);
std::size_t gate_param_count(GateKind kind);
const char* gate_name(GateKind kind);

// Square 2^n x 2^n complex matrix.
class DenseOperator {
 public:
  explicit DenseOperator(Matrix m);

  static DenseOperator identity(std::size_t n_qubits);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t qubits() const { return qubits_; }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  bool is_unitary(double tol = kInvariantTol) const;
  DenseOperator adjoint() const { return DenseOperator(m_.adjoint()); }

  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);

 private:
  Matrix m_;
  std::size_t qubits_ = 0;
};

// Kronecker product; `a` is the more significant factor.
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

// Largest entrywise modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

class PureState {
 public:
  // Throws std::invalid_argument unless the length is a power of two and the
  // vector is normalized within kInvariantTol.
  explicit PureState(Vector amplitudes);
  PureState(Unchecked, std::size_t n_qubits, Vector amplitudes);

  static PureState basis(std::size_t n_qubits, std::size_t index);

  std::size_t qubits() const { return qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }

 private:
  std::size_t qubits_ = 0;
  Vector amps_;
};

class DensityState {
 public:
  // Throws std::invalid_argument unless Hermitian, unit trace and positive
  // semidefinite, each within kInvariantTol.
  explicit DensityState(Matrix m);
  DensityState(Unchecked, std::size_t n_qubits, Matrix m);

  static DensityState from_pure(const PureState& psi);

  std::size_t qubits() const { return qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

 private:
  std::size_t qubits_ = 0;
  Matrix m_;
};

// Exact 2x2 (4x4 for CNOT) matrix. Rz(t) = exp(-i t Z / 2),
// Ry(t) = exp(-i t Y / 2), U(a, b, c, d) = e^{ia} Rz(b) Ry(c) Rz(d).
// Throws std::invalid_argument on a wrong parameter count.
DenseOperator gate_matrix(GateKind kind, std::span<const double> params = {});

// X^x Z^z as a tensor product over wires, wire 0 most significant.
DenseOperator pauli_operator(const Bits& x_bits, const Bits& z_bits);

// U rho U^dagger.
DensityState apply_to_density(const DenseOperator& u, const DensityState& rho);

// Applies a 1- or 2-qubit operator routed to `wires`; wires[0] is the most
// significant factor of `u` (the control, for CNOT).
PureState apply_to_wires(const DenseOperator& u, std::span<const std::size_t> wires,
                         const PureState& psi);
DensityState apply_to_wires(const DenseOperator& u, std::span<const std::size_t> wires,
                            const DensityState& rho);

// I (x) ... (x) u (x) ... (x) I with u routed to `wires`, as a full matrix.
DenseOperator embed(const DenseOperator& u, std::span<const std::size_t> wires,
                    std::size_t n_qubits);

// (1/2) sum |eig(rho - sigma)|, clamped into [0, 1].
double trace_distance(const DensityState& rho, const DensityState& sigma);

// I / 2^n.
DensityState maximally_mixed(std::size_t n_qubits);

}  // namespace qfhe
