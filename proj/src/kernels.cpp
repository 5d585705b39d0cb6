#include "qfhe/kernels.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <omp.h>

namespace qfhe::kernels {
namespace {

constexpr std::size_t kMaxGateBits = 4;

void check_args(std::size_t size, unsigned num_bits, std::span<const unsigned> bits,
                const Matrix& gate) {
  if (bits.empty() || bits.size() > kMaxGateBits) {
    throw std::invalid_argument("kernel supports gates on 1 to 4 bits");
  }
  if (size != (std::size_t{1} << num_bits)) throw std::invalid_argument("buffer size mismatch");
  const auto local_dim = static_cast<Eigen::Index>(std::size_t{1} << bits.size());
  if (gate.rows() != local_dim || gate.cols() != local_dim) {
    throw std::invalid_argument("gate dimension does not match bit count");
  }
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] >= num_bits) throw std::invalid_argument("bit position out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (bits[i] == bits[j]) throw std::invalid_argument("duplicate bit position");
    }
  }
}

// Offset of each local basis state; bits[0] is the local MSB.
std::array<std::size_t, 1u << kMaxGateBits> local_offsets(std::span<const unsigned> bits) {
  std::array<std::size_t, 1u << kMaxGateBits> offsets{};
  const std::size_t k = bits.size();
  for (std::size_t l = 0; l < (std::size_t{1} << k); ++l) {
    std::size_t off = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if ((l >> (k - 1 - i)) & 1) off |= std::size_t{1} << bits[i];
    }
    offsets[l] = off;
  }
  return offsets;
}

std::vector<unsigned> conj_bits(unsigned n_qubits, std::span<const std::size_t> wires,
                                bool column) {
  std::vector<unsigned> bits;
  bits.reserve(wires.size());
  for (std::size_t w : wires) {
    if (w >= n_qubits) throw std::invalid_argument("wire out of range");
    const unsigned row_bit = n_qubits - 1 - static_cast<unsigned>(w);
    bits.push_back(column ? row_bit + n_qubits : row_bit);
  }
  return bits;
}

// Plain product without the C99 Annex G inf/nan recovery; inputs are finite.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Gate width as a template parameter so the inner loops unroll.
template <std::size_t K>
struct FixedGate {
  static constexpr std::size_t kDim = std::size_t{1} << K;
  std::array<Complex, kDim * kDim> g;
  std::array<std::size_t, kDim> offsets;
  std::array<unsigned, K> sorted;

  FixedGate(std::span<const unsigned> bits, const Matrix& gate) {
    const auto all = local_offsets(bits);
    std::copy(all.begin(), all.begin() + kDim, offsets.begin());
    std::copy(bits.begin(), bits.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t r = 0; r < kDim; ++r) {
      for (std::size_t c = 0; c < kDim; ++c) {
        g[r * kDim + c] = gate(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
    }
  }

  void run(Complex* ptr, std::size_t first, std::size_t last) const {
    // Local copies, so stores through ptr cannot alias the gate table.
    const auto m = g;
    const auto off = offsets;
    for (std::size_t group = first; group < last; ++group) {
      // Spread the group index around the gate bits, which are left zero.
      std::size_t base = group;
      for (std::size_t i = 0; i < K; ++i) {
        const std::size_t low = base & ((std::size_t{1} << sorted[i]) - 1);
        base = ((base >> sorted[i]) << (sorted[i] + 1)) | low;
      }
      std::array<Complex, kDim> in;
      for (std::size_t l = 0; l < kDim; ++l) in[l] = ptr[base + off[l]];
      for (std::size_t r = 0; r < kDim; ++r) {
        Complex acc = mul(m[r * kDim], in[0]);
        for (std::size_t c = 1; c < kDim; ++c) acc += mul(m[r * kDim + c], in[c]);
        ptr[base + off[r]] = acc;
      }
    }
  }
};

template <std::size_t K>
void apply_fixed(std::span<Complex> data, std::span<const unsigned> bits, const Matrix& gate) {
  const FixedGate<K> kernel(bits, gate);
  const std::size_t groups = data.size() >> K;
  Complex* ptr = data.data();
  if (groups < kParallelThreshold) {
    kernel.run(ptr, 0, groups);
    return;
  }
#pragma omp parallel
  {
    const auto threads = static_cast<std::size_t>(omp_get_num_threads());
    const auto id = static_cast<std::size_t>(omp_get_thread_num());
    kernel.run(ptr, groups * id / threads, groups * (id + 1) / threads);
  }
}

}  // namespace

void apply_gate(std::span<Complex> data, unsigned num_bits, std::span<const unsigned> bits,
                const Matrix& gate) {
  check_args(data.size(), num_bits, bits, gate);
  switch (bits.size()) {
    case 1: return apply_fixed<1>(data, bits, gate);
    case 2: return apply_fixed<2>(data, bits, gate);
    case 3: return apply_fixed<3>(data, bits, gate);
    default: return apply_fixed<4>(data, bits, gate);
  }
}

void apply_conjugation(std::span<Complex> rho, unsigned n_qubits,
                       std::span<const std::size_t> wires, const Matrix& gate) {
  const auto rows = conj_bits(n_qubits, wires, false);
  const auto cols = conj_bits(n_qubits, wires, true);
  apply_gate(rho, 2 * n_qubits, rows, gate);
  apply_gate(rho, 2 * n_qubits, cols, gate.conjugate());
}

namespace serial {

void apply_gate(std::span<Complex> data, unsigned num_bits, std::span<const unsigned> bits,
                const Matrix& gate) {
  check_args(data.size(), num_bits, bits, gate);
  const std::size_t k = bits.size();
  const auto offsets = local_offsets(bits);
  std::size_t mask = 0;
  for (unsigned b : bits) mask |= std::size_t{1} << b;

  const std::vector<Complex> in(data.begin(), data.end());
  for (std::size_t i = 0; i < in.size(); ++i) {
    std::size_t row = 0;
    for (std::size_t j = 0; j < k; ++j) row = (row << 1) | ((i >> bits[j]) & 1);
    const std::size_t rest = i & ~mask;
    Complex acc = 0.0;
    for (std::size_t c = 0; c < (std::size_t{1} << k); ++c) {
      acc += gate(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c)) *
             in[rest | offsets[c]];
    }
    data[i] = acc;
  }
}

void apply_conjugation(std::span<Complex> rho, unsigned n_qubits,
                       std::span<const std::size_t> wires, const Matrix& gate) {
  const auto rows = conj_bits(n_qubits, wires, false);
  const auto cols = conj_bits(n_qubits, wires, true);
  apply_gate(rho, 2 * n_qubits, rows, gate);
  apply_gate(rho, 2 * n_qubits, cols, gate.conjugate());
}

}  // namespace serial

}  // namespace qfhe::kernels
