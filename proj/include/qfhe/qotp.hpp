#pragma once

// Quantum one-time pad: key generation, encryption and decryption.

#include <cstddef>
#include <cstdint>
#include <random>

#include "qfhe/linalg.hpp"

namespace qfhe {

// XZ pads each wire with X^x Z^z. HY pads with H^x Y^z and is only usable
// with circuits made of Ry rotations.
enum class KeyVariant { XZ, HY };

const char* variant_name(KeyVariant v);

// Seeded 64-bit generator. Every draw is derived from raw mt19937_64 output
// (no std distributions), so streams are identical across standard libraries.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  bool next_bit() { return (engine_() >> 63) != 0; }
  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform in [0, 2*pi).
  double next_angle() { return canonical_angle(next_unit() * kTwoPi); }
  // Standard normal via Box-Muller.
  double next_normal();

 private:
  std::mt19937_64 engine_;
};

class QotpKey {
 public:
  // Throws std::invalid_argument on empty or unequal bit strings.
  QotpKey(Bits x_bits, Bits z_bits, KeyVariant variant = KeyVariant::XZ);

  std::size_t qubits() const { return x_.size(); }
  const Bits& x_bits() const { return x_; }
  const Bits& z_bits() const { return z_; }
  bool x(std::size_t wire) const { return x_.at(wire); }
  bool z(std::size_t wire) const { return z_.at(wire); }
  KeyVariant variant() const { return variant_; }

  bool operator==(const QotpKey&) const = default;

 private:
  Bits x_;
  Bits z_;
  KeyVariant variant_;
};

// Draws x bits for every wire, then z bits. Deterministic given the source state.
QotpKey keygen(std::size_t n_qubits, RandomSource& rng, KeyVariant variant = KeyVariant::XZ);

// The 2x2 pad on one wire: X^x Z^z (XZ) or H^x Y^z (HY).
Matrix wire_pad(bool x, bool z, KeyVariant variant);

// Full pad operator over all wires.
DenseOperator key_operator(const QotpKey& key);

// P psi, or P rho P^dagger, with P = key_operator(key).
PureState encrypt(const QotpKey& key, const PureState& psi);
DensityState encrypt(const QotpKey& key, const DensityState& rho);

// P^dagger psi, or P^dagger rho P. Exact inverse of encrypt.
PureState decrypt(const QotpKey& key, const PureState& psi);
DensityState decrypt(const QotpKey& key, const DensityState& rho);

}  // namespace qfhe
