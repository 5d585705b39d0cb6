#pragma once

// Gate-application kernels over raw amplitude buffers.
//
// A buffer of 2^num_bits entries is addressed by a num_bits-bit index, bit 0
// least significant. `bits[0]` is the most significant bit of the gate's local
// index. Density matrices reuse the same kernels by viewing the column-major
// storage as a 2n-bit register (see apply_conjugation).

#include <cstddef>
#include <span>

#include "qfhe/linalg.hpp"

namespace qfhe::kernels {

// Buffers smaller than this many gate groups run single-threaded.
inline constexpr std::size_t kParallelThreshold = 1u << 10;

// In place: data <- G data, G acting on `bits` (1 to 4 entries).
void apply_gate(std::span<Complex> data, unsigned num_bits, std::span<const unsigned> bits,
                const Matrix& gate);

// In place on a column-major dim x dim matrix of n qubits: rho <- U rho U^dagger
// with U acting on `wires`.
void apply_conjugation(std::span<Complex> rho, unsigned n_qubits,
                       std::span<const std::size_t> wires, const Matrix& gate);

// Straightforward single-threaded versions kept as the reference the parallel
// kernels are tested and benchmarked against.
namespace serial {

void apply_gate(std::span<Complex> data, unsigned num_bits, std::span<const unsigned> bits,
                const Matrix& gate);

void apply_conjugation(std::span<Complex> rho, unsigned n_qubits,
                       std::span<const std::size_t> wires, const Matrix& gate);

}  // namespace serial

}  // namespace qfhe::kernels
