#pragma once

// Exhaustive checks of the scheme's security and key-independence claims at
// small scale, plus numerical checks of the Pauli commutation rules the
// rewriting relies on.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qfhe/circuit.hpp"
#include "qfhe/linalg.hpp"
#include "qfhe/qotp.hpp"

namespace qfhe {

inline constexpr std::size_t kMaxAverageQubits = 4;
inline constexpr std::size_t kMaxEvaluateAverageQubits = 3;
inline constexpr std::size_t kMaxDecomposeQubits = 4;
inline constexpr std::size_t kMaxClassifyQubits = 3;
inline constexpr double kDefaultClassifyTol = 1e-8;
inline constexpr double kIdentityTol = 1e-12;

// Enumerates all 4^n (x, z) key pairs. Index layout: x bits as the high n
// bits, z bits as the low n bits, wire 0 most significant in each half.
QotpKey key_from_index(std::size_t n_qubits, std::size_t index);

// Coefficients of U = sum_{a,b} alpha_{a,b} X^a Z^b.
class PauliCoefficients {
 public:
  PauliCoefficients(std::size_t n_qubits, std::vector<Complex> table);

  std::size_t qubits() const { return n_; }
  // Flat table indexed by (a << n) | b, a and b packed wire 0 first.
  const std::vector<Complex>& table() const { return table_; }
  Complex at(const Bits& a, const Bits& b) const;

  // sum |alpha|^2; 1 for unitary inputs.
  double norm_squared() const;
  // sum alpha_{a,b} X^a Z^b.
  DenseOperator reconstruct() const;

 private:
  std::size_t n_;
  std::vector<Complex> table_;
};

struct PauliWitness {
  Bits a;
  Bits b;
  double theta = 0.0;
};

struct ClassifyResult {
  bool key_independent = false;
  std::optional<PauliWitness> witness;
  // Worst phase-adjusted distance between U and its key conjugates.
  double max_deviation = 0.0;
};

struct SecurityReport {
  std::size_t n_qubits = 0;
  std::size_t states_tested = 0;
  double worst_encrypt_distance = 0.0;
  double worst_evaluate_distance = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct IdentityCheck {
  std::string name;
  double max_error = 0.0;
};

struct IdentityReport {
  std::vector<IdentityCheck> rows;
  // Worst mismatch along the chain X^j Z^k U(a,b,c,d) -> ... -> U'(...) X^j Z^k.
  double u_rewrite_chain_error = 0.0;

  bool pass(double tol = kIdentityTol) const;
};

// (1/4^n) sum over keys of X^a Z^b sigma Z^b X^a. Per-key terms are computed
// in parallel and summed in key-index order, so the result is bitwise
// independent of the thread count. Throws SizeGuardError for n > 4.
DensityState average_over_keys(const DensityState& sigma);

// Key average of evaluate(key, c, encrypt(key, sigma)). Same summation order.
// Throws SizeGuardError for n > 3.
DensityState average_evaluated_over_keys(const Circuit& c, const DensityState& sigma);

// Distances of both key averages to I/2^n; pass iff both are <= tol.
SecurityReport verify_security(const Circuit& c, const DensityState& sigma, double tol);

// alpha_{a,b} = tr((X^a Z^b)^dagger U) / 2^n. Throws SizeGuardError for n > 4.
PauliCoefficients pauli_decompose(const DenseOperator& u);

// Whether every conjugate X^j Z^k U Z^k X^j equals U up to a global phase.
// Cross-checked against pauli_decompose; throws std::logic_error if the two
// characterizations disagree clearly. Throws NotUnitaryError, SizeGuardError.
ClassifyResult classify_key_independent(const DenseOperator& u, double tol = kDefaultClassifyTol);

// The nine commutation rules between X, Z, H, CNOT, Rz and Ry, plus the Ry
// rule under the H/Y pad, over all bit assignments and `samples` angles.
IdentityReport check_appendix_identities(std::size_t samples, RandomSource& rng);

// Serial references for the key-averaging reductions.
namespace reference {
DensityState average_over_keys(const DensityState& sigma);
DensityState average_evaluated_over_keys(const Circuit& c, const DensityState& sigma);
}  // namespace reference

}  // namespace qfhe
