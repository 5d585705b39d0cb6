#include "qfhe/qotp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qfhe/errors.hpp"

namespace qfhe {
namespace {

void check_size(const QotpKey& key, std::size_t n_qubits) {
  if (key.qubits() != n_qubits) {
    throw DimensionError("key covers " + std::to_string(key.qubits()) + " qubit(s) but state has " +
                         std::to_string(n_qubits));
  }
}

template <typename State>
State apply_pads(const QotpKey& key, const State& state, bool inverse) {
  check_size(key, state.qubits());
  State out = state;
  for (std::size_t w = 0; w < key.qubits(); ++w) {
    if (!key.x(w) && !key.z(w)) continue;
    Matrix pad = wire_pad(key.x(w), key.z(w), key.variant());
    if (inverse) pad = pad.adjoint().eval();
    const std::size_t wire[] = {w};
    out = apply_to_wires(DenseOperator(std::move(pad)), wire, out);
  }
  return out;
}

}  // namespace

const char* variant_name(KeyVariant v) { return v == KeyVariant::XZ ? "xz" : "hy"; }

double RandomSource::next_normal() {
  double u1 = next_unit();
  while (u1 <= 0.0) u1 = next_unit();
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

QotpKey::QotpKey(Bits x_bits, Bits z_bits, KeyVariant variant)
    : x_(std::move(x_bits)), z_(std::move(z_bits)), variant_(variant) {
  if (x_.empty()) throw std::invalid_argument("key must cover at least one qubit");
  if (x_.size() != z_.size()) throw std::invalid_argument("key x and z bit strings differ in length");
}

QotpKey keygen(std::size_t n_qubits, RandomSource& rng, KeyVariant variant) {
  if (n_qubits == 0) throw std::invalid_argument("keygen: n must be at least 1");
  Bits x(n_qubits);
  Bits z(n_qubits);
  for (std::size_t w = 0; w < n_qubits; ++w) x[w] = rng.next_bit();
  for (std::size_t w = 0; w < n_qubits; ++w) z[w] = rng.next_bit();
  return QotpKey(std::move(x), std::move(z), variant);
}

Matrix wire_pad(bool x, bool z, KeyVariant variant) {
  const GateKind first = variant == KeyVariant::XZ ? GateKind::X : GateKind::H;
  const GateKind second = variant == KeyVariant::XZ ? GateKind::Z : GateKind::Y;
  Matrix m = Matrix::Identity(2, 2);
  if (x) m = gate_matrix(first).matrix();
  if (z) m = (m * gate_matrix(second).matrix()).eval();
  return m;
}

DenseOperator key_operator(const QotpKey& key) {
  DenseOperator out(wire_pad(key.x(0), key.z(0), key.variant()));
  for (std::size_t w = 1; w < key.qubits(); ++w) {
    out = kron(out, DenseOperator(wire_pad(key.x(w), key.z(w), key.variant())));
  }
  return out;
}

PureState encrypt(const QotpKey& key, const PureState& psi) { return apply_pads(key, psi, false); }

DensityState encrypt(const QotpKey& key, const DensityState& rho) {
  return apply_pads(key, rho, false);
}

PureState decrypt(const QotpKey& key, const PureState& psi) { return apply_pads(key, psi, true); }

DensityState decrypt(const QotpKey& key, const DensityState& rho) {
  return apply_pads(key, rho, true);
}

}  // namespace qfhe
