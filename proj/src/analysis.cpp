#include "qfhe/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "qfhe/errors.hpp"
#include "qfhe/homomorphic.hpp"

namespace qfhe {
namespace {

void guard(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    throw SizeGuardError(std::string(what) + " is limited to " + std::to_string(limit) +
                         " qubits, got " + std::to_string(n));
  }
}

Matrix encrypted_term(const DensityState& sigma, std::size_t index) {
  return encrypt(key_from_index(sigma.qubits(), index), sigma).matrix();
}

Matrix evaluated_term(const Circuit& c, const DensityState& sigma, std::size_t index) {
  const QotpKey key = key_from_index(sigma.qubits(), index);
  return evaluate(key, c, encrypt(key, sigma)).matrix();
}

// Computes every per-key term (possibly in parallel), then sums them in
// key-index order.
template <typename Term>
DensityState parallel_key_average(std::size_t n, Term term) {
  const std::size_t keys = std::size_t{1} << (2 * n);
  std::vector<Matrix> terms(keys);
  const auto count = static_cast<std::int64_t>(keys);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) terms[static_cast<std::size_t>(i)] = term(static_cast<std::size_t>(i));

  Matrix acc = terms[0];
  for (std::size_t i = 1; i < keys; ++i) acc += terms[i];
  acc /= static_cast<double>(keys);
  return DensityState(Unchecked{}, n, std::move(acc));
}

template <typename Term>
DensityState serial_key_average(std::size_t n, Term term) {
  const std::size_t keys = std::size_t{1} << (2 * n);
  Matrix acc = term(0);
  for (std::size_t i = 1; i < keys; ++i) acc += term(i);
  acc /= static_cast<double>(keys);
  return DensityState(Unchecked{}, n, std::move(acc));
}

void check_average_args(const Circuit* c, const DensityState& sigma, std::size_t limit) {
  guard(sigma.qubits(), limit, "key averaging");
  if (c != nullptr && c->qubits() != sigma.qubits()) {
    throw DimensionError("circuit and state sizes differ");
  }
}

std::size_t pack(const Bits& bits) {
  std::size_t v = 0;
  for (bool b : bits) v = (v << 1) | (b ? 1u : 0u);
  return v;
}

Bits unpack(std::size_t v, std::size_t n) {
  Bits out(n);
  for (std::size_t w = 0; w < n; ++w) out[w] = (v >> (n - 1 - w)) & 1;
  return out;
}

// |A - e^{i phi} B|_max with phi = arg tr(B^dagger A); phi = 0 when the
// overlap vanishes, which then reads as a large deviation.
double phase_adjusted_distance(const Matrix& a, const Matrix& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const double scale = static_cast<double>(a.rows());
  const Complex phase = std::abs(overlap) <= 1e-12 * scale ? Complex(1.0) : overlap / std::abs(overlap);
  return max_abs_diff(a, phase * b);
}

}  // namespace

QotpKey key_from_index(std::size_t n_qubits, std::size_t index) {
  const std::size_t mask = (std::size_t{1} << n_qubits) - 1;
  return QotpKey(unpack((index >> n_qubits) & mask, n_qubits), unpack(index & mask, n_qubits));
}

PauliCoefficients::PauliCoefficients(std::size_t n_qubits, std::vector<Complex> table)
    : n_(n_qubits), table_(std::move(table)) {
  if (table_.size() != (std::size_t{1} << (2 * n_))) {
    throw DimensionError("pauli coefficient table must have 4^n entries");
  }
}

Complex PauliCoefficients::at(const Bits& a, const Bits& b) const {
  if (a.size() != n_ || b.size() != n_) throw DimensionError("pauli index length mismatch");
  return table_[(pack(a) << n_) | pack(b)];
}

double PauliCoefficients::norm_squared() const {
  double s = 0.0;
  for (const Complex& c : table_) s += std::norm(c);
  return s;
}

DenseOperator PauliCoefficients::reconstruct() const {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_);
  Matrix m = Matrix::Zero(d, d);
  const std::size_t mask = (std::size_t{1} << n_) - 1;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] == Complex(0.0)) continue;
    m += table_[i] * pauli_operator(unpack(i >> n_, n_), unpack(i & mask, n_)).matrix();
  }
  return DenseOperator(std::move(m));
}

bool IdentityReport::pass(double tol) const {
  if (u_rewrite_chain_error > tol) return false;
  return std::all_of(rows.begin(), rows.end(),
                     [tol](const IdentityCheck& r) { return r.max_error <= tol; });
}

DensityState average_over_keys(const DensityState& sigma) {
  check_average_args(nullptr, sigma, kMaxAverageQubits);
  return parallel_key_average(sigma.qubits(),
                              [&](std::size_t i) { return encrypted_term(sigma, i); });
}

DensityState average_evaluated_over_keys(const Circuit& c, const DensityState& sigma) {
  check_average_args(&c, sigma, kMaxEvaluateAverageQubits);
  return parallel_key_average(sigma.qubits(),
                              [&](std::size_t i) { return evaluated_term(c, sigma, i); });
}

namespace reference {

DensityState average_over_keys(const DensityState& sigma) {
  check_average_args(nullptr, sigma, kMaxAverageQubits);
  return serial_key_average(sigma.qubits(),
                            [&](std::size_t i) { return encrypted_term(sigma, i); });
}

DensityState average_evaluated_over_keys(const Circuit& c, const DensityState& sigma) {
  check_average_args(&c, sigma, kMaxEvaluateAverageQubits);
  return serial_key_average(sigma.qubits(),
                            [&](std::size_t i) { return evaluated_term(c, sigma, i); });
}

}  // namespace reference

SecurityReport verify_security(const Circuit& c, const DensityState& sigma, double tol) {
  check_average_args(&c, sigma, kMaxEvaluateAverageQubits);
  const DensityState mixed = maximally_mixed(sigma.qubits());
  SecurityReport r;
  r.n_qubits = sigma.qubits();
  r.states_tested = 1;
  r.tolerance = tol;
  r.worst_encrypt_distance = trace_distance(average_over_keys(sigma), mixed);
  r.worst_evaluate_distance = trace_distance(average_evaluated_over_keys(c, sigma), mixed);
  r.pass = r.worst_encrypt_distance <= tol && r.worst_evaluate_distance <= tol;
  return r;
}

PauliCoefficients pauli_decompose(const DenseOperator& u) {
  const std::size_t n = u.qubits();
  guard(n, kMaxDecomposeQubits, "pauli_decompose");
  const std::size_t d = u.dim();
  std::vector<Complex> table(d * d);
  // tr((X^a Z^b)^dagger U) = sum_c (-1)^{b.c} U[c ^ a, c].
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const Complex v = u(c ^ a, c);
        acc += (std::popcount(b & c) & 1) ? -v : v;
      }
      table[(a << n) | b] = acc / static_cast<double>(d);
    }
  }
  return PauliCoefficients(n, std::move(table));
}

ClassifyResult classify_key_independent(const DenseOperator& u, double tol) {
  const std::size_t n = u.qubits();
  guard(n, kMaxClassifyQubits, "classify_key_independent");
  if (!u.is_unitary(kInvariantTol)) throw NotUnitaryError("classify: matrix is not unitary");

  ClassifyResult result;
  const std::size_t keys = std::size_t{1} << (2 * n);
  for (std::size_t i = 1; i < keys; ++i) {
    const QotpKey key = key_from_index(n, i);
    const Matrix p = pauli_operator(key.x_bits(), key.z_bits()).matrix();
    const Matrix conjugate = p * u.matrix() * p.adjoint();
    result.max_deviation = std::max(result.max_deviation, phase_adjusted_distance(conjugate, u.matrix()));
  }
  result.key_independent = result.max_deviation <= tol;

  const PauliCoefficients coeffs = pauli_decompose(u);
  const auto& table = coeffs.table();
  std::size_t best = 0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (std::abs(table[i]) > std::abs(table[best])) best = i;
  }
  double second = 0.0;
  double rest = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i == best) continue;
    second = std::max(second, std::abs(table[i]));
    rest += std::abs(table[i]);
  }
  // A deviation <= tol bounds every minor coefficient by sqrt(2^n) tol / 2,
  // and minor coefficients summing below tol / 4 keep the deviation below tol.
  const double dim = static_cast<double>(u.dim());
  if ((result.key_independent && second > std::sqrt(dim) * tol) ||
      (!result.key_independent && rest <= tol / 4.0)) {
    throw std::logic_error("classifier: conjugation test and pauli decomposition disagree");
  }

  if (result.key_independent) {
    const std::size_t mask = (std::size_t{1} << n) - 1;
    result.witness = PauliWitness{unpack(best >> n, n), unpack(best & mask, n),
                                  canonical_angle(std::arg(table[best]))};
  }
  return result;
}

IdentityReport check_appendix_identities(std::size_t samples, RandomSource& rng) {
  if (samples == 0) throw std::invalid_argument("check_appendix_identities: samples must be >= 1");
  std::vector<double> angles(samples);
  for (double& t : angles) t = rng.next_angle();

  const Matrix id = Matrix::Identity(2, 2);
  const Matrix x = gate_matrix(GateKind::X).matrix();
  const Matrix y = gate_matrix(GateKind::Y).matrix();
  const Matrix z = gate_matrix(GateKind::Z).matrix();
  const Matrix h = gate_matrix(GateKind::H).matrix();
  const Matrix cnot = gate_matrix(GateKind::CNOT).matrix();
  const auto pw = [&](const Matrix& m, bool e) -> Matrix { return e ? m : id; };
  const auto rz = [](double t) { return gate_matrix(GateKind::Rz, std::span<const double>(&t, 1)).matrix(); };
  const auto ry = [](double t) { return gate_matrix(GateKind::Ry, std::span<const double>(&t, 1)).matrix(); };
  const auto sgn = [](bool e, double t) { return e ? -t : t; };
  const auto tensor = [](const Matrix& a, const Matrix& b) {
    return kron(DenseOperator(a), DenseOperator(b)).matrix();
  };

  IdentityReport report;
  const auto add = [&](std::string name, auto&& error_for) {
    double worst = 0.0;
    for (unsigned bits = 0; bits < 16; ++bits) {
      const bool j = bits & 8, k = bits & 4, l = bits & 2, m = bits & 1;
      worst = std::max(worst, error_for(j, k, l, m));
    }
    report.rows.push_back({std::move(name), worst});
  };
  const auto over_angles = [&](auto&& error_at) {
    double worst = 0.0;
    for (double t : angles) worst = std::max(worst, error_at(t));
    return worst;
  };

  add("Z^k X^j = (-1)^(jk) X^j Z^k", [&](bool j, bool k, bool, bool) {
    return max_abs_diff(pw(z, k) * pw(x, j), ((j && k) ? -1.0 : 1.0) * pw(x, j) * pw(z, k));
  });
  add("Rz(t) X^j = X^j Rz((-1)^j t)", [&](bool j, bool, bool, bool) {
    return over_angles([&](double t) { return max_abs_diff(rz(t) * pw(x, j), pw(x, j) * rz(sgn(j, t))); });
  });
  add("Ry(t) X^j = X^j Ry((-1)^j t)", [&](bool j, bool, bool, bool) {
    return over_angles([&](double t) { return max_abs_diff(ry(t) * pw(x, j), pw(x, j) * ry(sgn(j, t))); });
  });
  add("Ry(t) Z^k = Z^k Ry((-1)^k t)", [&](bool, bool k, bool, bool) {
    return over_angles([&](double t) { return max_abs_diff(ry(t) * pw(z, k), pw(z, k) * ry(sgn(k, t))); });
  });
  add("Ry(t) H^j = H^j Ry((-1)^j t)", [&](bool j, bool, bool, bool) {
    return over_angles([&](double t) { return max_abs_diff(ry(t) * pw(h, j), pw(h, j) * ry(sgn(j, t))); });
  });
  add("CNOT (X^j x I) = (X^j x X^j) CNOT", [&](bool j, bool, bool, bool) {
    return max_abs_diff(cnot * tensor(pw(x, j), id), tensor(pw(x, j), pw(x, j)) * cnot);
  });
  add("CNOT (Z^k x I) = (Z^k x I) CNOT", [&](bool, bool k, bool, bool) {
    return max_abs_diff(cnot * tensor(pw(z, k), id), tensor(pw(z, k), id) * cnot);
  });
  add("CNOT (I x X^l) = (I x X^l) CNOT", [&](bool, bool, bool l, bool) {
    return max_abs_diff(cnot * tensor(id, pw(x, l)), tensor(id, pw(x, l)) * cnot);
  });
  add("CNOT (I x Z^m) = (Z^m x Z^m) CNOT", [&](bool, bool, bool, bool m) {
    return max_abs_diff(cnot * tensor(id, pw(z, m)), tensor(pw(z, m), pw(z, m)) * cnot);
  });
  add("Ry((-1)^j t) H^j Y^k = H^j Y^k Ry(t)", [&](bool j, bool k, bool, bool) {
    return over_angles([&](double t) {
      const Matrix pad = pw(h, j) * pw(y, k);
      return max_abs_diff(ry(sgn(j, t)) * pad, pad * ry(t));
    });
  });

  // Step-by-step commutation of a pad through U(a, b, c, d).
  double chain = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double a = rng.next_angle(), b = rng.next_angle(), c = rng.next_angle(), d = rng.next_angle();
    const Complex phase = std::exp(Complex(0.0, a));
    for (unsigned bits = 0; bits < 4; ++bits) {
      const bool j = bits & 2, k = bits & 1;
      const Matrix pad = pw(x, j) * pw(z, k);
      const bool jk = j != k;
      const double u[] = {a, b, c, d};
      const double u_rewritten[] = {a, sgn(j, b), sgn(jk, c), sgn(j, d)};
      const Matrix steps[] = {
          pad * gate_matrix(GateKind::U, u).matrix(),
          phase * pad * rz(b) * ry(c) * rz(d),
          phase * rz(sgn(j, b)) * pad * ry(c) * rz(d),
          phase * rz(sgn(j, b)) * ry(sgn(jk, c)) * pad * rz(d),
          phase * rz(sgn(j, b)) * ry(sgn(jk, c)) * rz(sgn(j, d)) * pad,
          gate_matrix(GateKind::U, u_rewritten).matrix() * pad,
      };
      for (std::size_t i = 1; i < std::size(steps); ++i) {
        chain = std::max(chain, max_abs_diff(steps[i - 1], steps[i]));
      }
    }
  }
  report.u_rewrite_chain_error = chain;
  return report;
}

}  // namespace qfhe
