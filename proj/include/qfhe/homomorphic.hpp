#pragma once

// Key-dependent evaluation on one-time-padded ciphertexts.
//
// Every gate G is replaced by G' with G' P = P G (up to a tracked sign), where
// P is the key pad on the gate's wires. The key is never updated, so the same
// key decrypts the evaluated ciphertext.

#include <cstddef>
#include <vector>

#include "qfhe/circuit.hpp"
#include "qfhe/qotp.hpp"

namespace qfhe {

struct RewriteResult {
  std::vector<Gate> gates;
  // Number of (-1) global phase factors dropped from `gates`: the CNOT sign
  // plus one per negated rotation angle that wrapped back into [0, 2*pi).
  unsigned phase_flips = 0;
};

// Rz angle on a ciphertext padded with X^j: (-1)^j theta.
double rewrite_rz(bool j, double theta);

// Ry angle under an X^j Z^k pad: (-1)^(j+k) theta. Under an H^j Y^k pad the
// sign only depends on j.
double rewrite_ry(bool j, bool k, double theta, KeyVariant variant = KeyVariant::XZ);

// (alpha, (-1)^j beta, (-1)^(j+k) gamma, (-1)^j delta).
EulerAngles rewrite_u(bool j, bool k, const EulerAngles& angles);

// CNOT' = CNOT (Z^m (x) X^j) up to the sign (-1)^(j m), emitted as
// [Z^m on control] [X^j on target] CNOT in application order. j is the
// control wire's x bit, m the target wire's z bit.
RewriteResult rewrite_cnot(bool j_control, bool m_target, std::size_t control = 0,
                           std::size_t target = 1);

// Replacement for a single gate under an XZ key. X, Y, Z and H are first
// lifted to U form through euler_decompose.
RewriteResult rewrite_gate(const QotpKey& key, const Gate& g);

struct TracedRewrite {
  Circuit circuit;
  unsigned phase_flips = 0;
};

// Rewritten circuit C' with full_matrix(C') P = (-1)^phase_flips P full_matrix(C).
// Throws OperatorNotPermitted for non-XZ keys and DimensionError on a size mismatch.
TracedRewrite rewrite_circuit_traced(const QotpKey& key, const Circuit& c);
Circuit rewrite_circuit(const QotpKey& key, const Circuit& c);

// The circuit evaluate() runs on the ciphertext: rewrite_circuit for XZ keys,
// the per-gate Ry rule for HY keys on all-Ry circuits.
Circuit evaluation_circuit(const QotpKey& key, const Circuit& c);

// Runs the rewritten circuit on a ciphertext. HY keys are accepted only for
// circuits made entirely of Ry gates.
DensityState evaluate(const QotpKey& key, const Circuit& c, const DensityState& ciphertext);
PureState evaluate(const QotpKey& key, const Circuit& c, const PureState& ciphertext);

enum class Scheme {
  RzOnly,    // {Rz(theta)}
  RyOnly,    // {Ry(theta)}, XZ pad
  RyHy,      // {Ry(theta)}, HY pad
  Combined,  // {Rz(theta), Ry(theta)}
  CnotOnly,  // {CNOT}
};

const char* scheme_name(Scheme s);

// Single-gate evaluation restricted to a scheme's permitted operators.
// Throws OperatorNotPermitted if `op` is outside the set or the key variant
// does not belong to the scheme.
DensityState scheme_evaluate(Scheme scheme, const QotpKey& key, const Gate& op,
                             const DensityState& ciphertext);

}  // namespace qfhe
