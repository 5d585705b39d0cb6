#include "qfhe/homomorphic.hpp"

#include <string>

#include "qfhe/errors.hpp"

namespace qfhe {
namespace {

double signed_angle(bool negate, double theta) { return canonical_angle(negate ? -theta : theta); }

// Rz and Ry have period 4*pi, so wrapping -theta back into [0, 2*pi) costs a
// factor of -1 unless the result rounds to 0.
unsigned wrap_flip(bool negate, double theta) {
  return (negate && canonical_angle(-theta) != 0.0) ? 1u : 0u;
}

void check_key(const QotpKey& key, const Circuit& c) {
  if (key.qubits() != c.qubits()) {
    throw DimensionError("key covers " + std::to_string(key.qubits()) + " qubit(s) but circuit has " +
                         std::to_string(c.qubits()));
  }
}

bool all_ry(const Circuit& c) {
  for (const Gate& g : c.gates()) {
    if (g.kind() != GateKind::Ry) return false;
  }
  return true;
}

Circuit rewrite_hy(const QotpKey& key, const Circuit& c) {
  Circuit out(c.qubits());
  for (const Gate& g : c.gates()) {
    out.append(Gate::ry(g.wire(), rewrite_ry(key.x(g.wire()), key.z(g.wire()), g.theta(),
                                             KeyVariant::HY)));
  }
  return out;
}

}  // namespace

Circuit evaluation_circuit(const QotpKey& key, const Circuit& c) {
  check_key(key, c);
  if (key.variant() == KeyVariant::HY) {
    if (!all_ry(c)) {
      throw OperatorNotPermitted("hy keys only support circuits made of ry gates");
    }
    return rewrite_hy(key, c);
  }
  return rewrite_circuit(key, c);
}

double rewrite_rz(bool j, double theta) { return signed_angle(j, theta); }

double rewrite_ry(bool j, bool k, double theta, KeyVariant variant) {
  const bool negate = variant == KeyVariant::HY ? j : (j != k);
  return signed_angle(negate, theta);
}

EulerAngles rewrite_u(bool j, bool k, const EulerAngles& angles) {
  return {canonical_angle(angles.alpha), signed_angle(j, angles.beta),
          signed_angle(j != k, angles.gamma), signed_angle(j, angles.delta)};
}

RewriteResult rewrite_cnot(bool j_control, bool m_target, std::size_t control, std::size_t target) {
  RewriteResult r;
  if (m_target) r.gates.push_back(Gate::z(control));
  if (j_control) r.gates.push_back(Gate::x(target));
  r.gates.push_back(Gate::cnot(control, target));
  r.phase_flips = (j_control && m_target) ? 1 : 0;
  return r;
}

RewriteResult rewrite_gate(const QotpKey& key, const Gate& g) {
  if (key.variant() != KeyVariant::XZ) {
    throw OperatorNotPermitted("circuit rewriting requires an xz key");
  }
  for (std::size_t w : g.wires()) {
    if (w >= key.qubits()) throw DimensionError("gate wire outside the key");
  }
  switch (g.kind()) {
    case GateKind::CNOT:
      return rewrite_cnot(key.x(g.control()), key.z(g.target()), g.control(), g.target());
    case GateKind::Rz: {
      const bool j = key.x(g.wire());
      return {{Gate::rz(g.wire(), rewrite_rz(j, g.theta()))}, wrap_flip(j, g.theta())};
    }
    case GateKind::Ry: {
      const bool j = key.x(g.wire());
      const bool k = key.z(g.wire());
      return {{Gate::ry(g.wire(), rewrite_ry(j, k, g.theta()))}, wrap_flip(j != k, g.theta())};
    }
    case GateKind::U:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::H: {
      const EulerAngles a = g.kind() == GateKind::U ? g.euler() : euler_decompose(g.matrix());
      const bool j = key.x(g.wire());
      const bool k = key.z(g.wire());
      const unsigned flips = wrap_flip(j, a.beta) + wrap_flip(j != k, a.gamma) + wrap_flip(j, a.delta);
      return {{Gate::u(g.wire(), rewrite_u(j, k, a))}, flips};
    }
  }
  throw OperatorNotPermitted(std::string("unsupported gate ") + gate_name(g.kind()));
}

TracedRewrite rewrite_circuit_traced(const QotpKey& key, const Circuit& c) {
  check_key(key, c);
  if (key.variant() != KeyVariant::XZ) {
    throw OperatorNotPermitted("circuit rewriting requires an xz key");
  }
  TracedRewrite out{Circuit(c.qubits()), 0};
  for (const Gate& g : c.gates()) {
    RewriteResult r = rewrite_gate(key, g);
    for (const Gate& ng : r.gates) out.circuit.append(ng);
    out.phase_flips += r.phase_flips;
  }
  return out;
}

Circuit rewrite_circuit(const QotpKey& key, const Circuit& c) {
  return rewrite_circuit_traced(key, c).circuit;
}

DensityState evaluate(const QotpKey& key, const Circuit& c, const DensityState& ciphertext) {
  return simulate(evaluation_circuit(key, c), ciphertext);
}

PureState evaluate(const QotpKey& key, const Circuit& c, const PureState& ciphertext) {
  return simulate(evaluation_circuit(key, c), ciphertext);
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::RzOnly: return "rz-only";
    case Scheme::RyOnly: return "ry-only";
    case Scheme::RyHy: return "ry-hy";
    case Scheme::Combined: return "combined";
    case Scheme::CnotOnly: return "cnot-only";
  }
  return "?";
}

DensityState scheme_evaluate(Scheme scheme, const QotpKey& key, const Gate& op,
                             const DensityState& ciphertext) {
  bool permitted = false;
  switch (scheme) {
    case Scheme::RzOnly: permitted = op.kind() == GateKind::Rz; break;
    case Scheme::RyOnly:
    case Scheme::RyHy: permitted = op.kind() == GateKind::Ry; break;
    case Scheme::Combined: permitted = op.kind() == GateKind::Rz || op.kind() == GateKind::Ry; break;
    case Scheme::CnotOnly: permitted = op.kind() == GateKind::CNOT; break;
  }
  if (!permitted) {
    throw OperatorNotPermitted(std::string("operator ") + gate_name(op.kind()) +
                               " is not permitted by scheme " + scheme_name(scheme));
  }
  const KeyVariant expected = scheme == Scheme::RyHy ? KeyVariant::HY : KeyVariant::XZ;
  if (key.variant() != expected) {
    throw OperatorNotPermitted(std::string("scheme ") + scheme_name(scheme) + " requires a " +
                               variant_name(expected) + " key");
  }
  if (key.qubits() != ciphertext.qubits()) {
    throw DimensionError("key and ciphertext sizes differ");
  }
  return evaluate(key, Circuit(key.qubits(), {op}), ciphertext);
}

}  // namespace qfhe
