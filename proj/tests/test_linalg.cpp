#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qfhe/errors.hpp"
#include "qfhe/linalg.hpp"
#include "support/random_objects.hpp"

namespace qfhe {
namespace {

using testing::random_mixed;
using testing::random_pure;
using testing::random_unitary;

constexpr double kPi = std::numbers::pi;

Matrix m2(Complex a, Complex b, Complex c, Complex d) { return (Matrix(2, 2) << a, b, c, d).finished(); }

TEST(GateMatrix, RzAtZeroIsIdentity) {
  const double t[] = {0.0};
  EXPECT_EQ(gate_matrix(GateKind::Rz, t).matrix(), Matrix::Identity(2, 2));
}

TEST(GateMatrix, RzAtPi) {
  const double t[] = {kPi};
  const Complex i(0, 1);
  EXPECT_LE(max_abs_diff(gate_matrix(GateKind::Rz, t).matrix(), m2(-i, 0, 0, i)), 1e-15);
}

TEST(GateMatrix, UReproducesHadamard) {
  // Oracle: the four factors multiplied out from their definitions.
  const Matrix oracle = testing::u_def(kPi / 2, 0, kPi / 2, kPi);
  EXPECT_LE(max_abs_diff(oracle, testing::hadamard()), 1e-12);
  const double p[] = {kPi / 2, 0, kPi / 2, kPi};
  EXPECT_LE(max_abs_diff(gate_matrix(GateKind::U, p).matrix(), testing::hadamard()), 1e-12);
}

TEST(GateMatrix, UMatchesFactorProduct) {
  RandomSource rng(11);
  for (int i = 0; i < 100; ++i) {
    const double p[] = {rng.next_angle(), rng.next_angle(), rng.next_angle(), rng.next_angle()};
    EXPECT_LE(max_abs_diff(gate_matrix(GateKind::U, p).matrix(), testing::u_def(p[0], p[1], p[2], p[3])),
              1e-14);
  }
}

TEST(GateMatrix, EveryGateIsUnitary) {
  RandomSource rng(3);
  for (GateKind k : testing::kAllKinds) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> p(gate_param_count(k));
      for (double& a : p) a = rng.next_angle();
      const Matrix g = gate_matrix(k, p).matrix();
      EXPECT_LE(max_abs_diff(g.adjoint() * g, Matrix::Identity(g.rows(), g.cols())), 1e-12) << gate_name(k);
    }
  }
}

TEST(GateMatrix, RejectsWrongParameterCount) {
  const double one[] = {1.0};
  const double two[] = {1.0, 2.0};
  EXPECT_THROW(gate_matrix(GateKind::Rz), std::invalid_argument);
  EXPECT_THROW(gate_matrix(GateKind::U, two), std::invalid_argument);
  EXPECT_THROW(gate_matrix(GateKind::X, one), std::invalid_argument);
}

TEST(PauliOperator, Examples) {
  EXPECT_EQ(pauli_operator(bits_from_string("0"), bits_from_string("0")).matrix(), Matrix::Identity(2, 2));
  // X Z with Z applied first.
  EXPECT_EQ(pauli_operator(bits_from_string("1"), bits_from_string("1")).matrix(), m2(0, -1, 1, 0));
  EXPECT_EQ(pauli_operator(bits_from_string("10"), bits_from_string("01")).matrix(),
            testing::kron_def(testing::pauli_x(), testing::pauli_z()));
}

TEST(PauliOperator, MatchesKroneckerOracleAndIsUnitary) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t a = 0; a < (1u << n); ++a) {
      for (std::size_t b = 0; b < (1u << n); ++b) {
        Bits x(n), z(n);
        for (std::size_t w = 0; w < n; ++w) {
          x[w] = (a >> w) & 1;
          z[w] = (b >> w) & 1;
        }
        const Matrix p = pauli_operator(x, z).matrix();
        EXPECT_EQ(p, testing::pauli_def(x, z));
        EXPECT_LE(max_abs_diff(p * p.adjoint(), Matrix::Identity(p.rows(), p.cols())), 1e-12);
      }
    }
  }
}

TEST(PauliOperator, RejectsLengthMismatch) {
  EXPECT_THROW(pauli_operator(bits_from_string("01"), bits_from_string("1")), std::invalid_argument);
}

TEST(ApplyToDensity, Examples) {
  RandomSource rng(5);
  const DensityState rho = random_mixed(2, rng);
  EXPECT_LE(max_abs_diff(apply_to_density(DenseOperator::identity(2), rho).matrix(), rho.matrix()), 0.0);

  const DensityState zero = DensityState::from_pure(PureState::basis(1, 0));
  const DensityState one = DensityState::from_pure(PureState::basis(1, 1));
  EXPECT_EQ(apply_to_density(gate_matrix(GateKind::X), zero).matrix(), one.matrix());

  const Matrix plus = apply_to_density(gate_matrix(GateKind::H), zero).matrix();
  EXPECT_LE(max_abs_diff(plus, Matrix::Constant(2, 2, 0.5)), 1e-15);
}

TEST(ApplyToDensity, PreservesTraceAndHermiticity) {
  RandomSource rng(8);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + testing::pick(rng, 4);
    const DensityState out = apply_to_density(random_unitary(n, rng), random_mixed(n, rng));
    EXPECT_NEAR(std::abs(out.matrix().trace() - Complex(1.0)), 0.0, 1e-9);
    EXPECT_LE(max_abs_diff(out.matrix(), out.matrix().adjoint()), 1e-9);
  }
}

TEST(ApplyToDensity, RejectsDimensionMismatch) {
  EXPECT_THROW(apply_to_density(gate_matrix(GateKind::CNOT), maximally_mixed(1)), DimensionError);
}

TEST(ApplyToWires, Examples) {
  const std::size_t w1[] = {1};
  const std::size_t w01[] = {0, 1};
  const std::size_t w10[] = {1, 0};
  EXPECT_EQ(apply_to_wires(gate_matrix(GateKind::X), w1, PureState::basis(2, 0b00)).amplitudes(),
            PureState::basis(2, 0b01).amplitudes());
  EXPECT_EQ(apply_to_wires(gate_matrix(GateKind::CNOT), w01, PureState::basis(2, 0b10)).amplitudes(),
            PureState::basis(2, 0b11).amplitudes());
  EXPECT_EQ(apply_to_wires(gate_matrix(GateKind::CNOT), w10, PureState::basis(2, 0b01)).amplitudes(),
            PureState::basis(2, 0b11).amplitudes());
}

TEST(ApplyToWires, RejectsBadWires) {
  const std::size_t out_of_range[] = {2};
  const std::size_t dup[] = {1, 1};
  const std::size_t w0[] = {0};
  EXPECT_THROW(apply_to_wires(gate_matrix(GateKind::X), out_of_range, PureState::basis(2, 0)),
               std::invalid_argument);
  EXPECT_THROW(apply_to_wires(gate_matrix(GateKind::CNOT), dup, PureState::basis(2, 0)),
               std::invalid_argument);
  EXPECT_THROW(apply_to_wires(gate_matrix(GateKind::CNOT), w0, maximally_mixed(2)), DimensionError);
}

TEST(ApplyToWires, GateByGateMatchesFullEmbedding) {
  RandomSource rng(21);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 2 + testing::pick(rng, 3);
    const Circuit c = testing::random_circuit(n, 10, rng);
    const Matrix full = testing::circuit_def(c);
    PureState psi = random_pure(n, rng);
    DensityState rho = random_mixed(n, rng);
    const Vector psi_expected = full * psi.amplitudes();
    const Matrix rho_expected = full * rho.matrix() * full.adjoint();
    for (const Gate& g : c.gates()) {
      psi = apply_to_wires(g.matrix(), g.wires(), psi);
      rho = apply_to_wires(g.matrix(), g.wires(), rho);
      EXPECT_LE(max_abs_diff(embed(g.matrix(), g.wires(), n).matrix(), testing::gate_def(g, n)), 1e-15);
    }
    EXPECT_LE(max_abs_diff(psi.amplitudes(), psi_expected), 1e-9);
    EXPECT_LE(max_abs_diff(rho.matrix(), rho_expected), 1e-9);
  }
}

TEST(TraceDistance, Examples) {
  RandomSource rng(1);
  const DensityState rho = random_mixed(2, rng);
  EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-15);
  const DensityState zero = DensityState::from_pure(PureState::basis(1, 0));
  const DensityState one = DensityState::from_pure(PureState::basis(1, 1));
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(zero, maximally_mixed(1)), 0.5, 1e-15);
}

TEST(TraceDistance, SymmetricAndTriangle) {
  RandomSource rng(2);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + testing::pick(rng, 3);
    const auto a = random_mixed(n, rng);
    const auto b = DensityState::from_pure(random_pure(n, rng));
    const auto c = random_mixed(n, rng);
    EXPECT_NEAR(trace_distance(a, b), trace_distance(b, a), 1e-9);
    EXPECT_LE(trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-9);
  }
}

TEST(TraceDistance, RejectsDimensionMismatch) {
  EXPECT_THROW(trace_distance(maximally_mixed(1), maximally_mixed(2)), DimensionError);
}

TEST(MaximallyMixed, Examples) {
  EXPECT_EQ(maximally_mixed(1).matrix(), (Matrix::Identity(2, 2) * 0.5).eval());
  EXPECT_EQ(maximally_mixed(2).matrix(), (Matrix::Identity(4, 4) * 0.25).eval());
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(maximally_mixed(n).matrix().trace(), Complex(1.0));
  EXPECT_THROW(maximally_mixed(0), std::invalid_argument);
}

TEST(States, ConstructionChecksInvariants) {
  EXPECT_THROW(PureState(Vector::Ones(3) / std::sqrt(3.0)), DimensionError);
  EXPECT_THROW(PureState(Vector::Ones(2)), std::invalid_argument);
  Matrix not_hermitian = Matrix::Identity(2, 2) * 0.5;
  not_hermitian(0, 1) = 0.1;
  EXPECT_THROW(DensityState{not_hermitian}, std::invalid_argument);
  EXPECT_THROW(DensityState(Matrix::Identity(2, 2)), std::invalid_argument);
  Matrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityState{negative}, std::invalid_argument);
  Matrix nan = Matrix::Identity(2, 2) * 0.5;
  nan(0, 0) = std::nan("");
  EXPECT_THROW(DensityState{nan}, std::invalid_argument);
}

TEST(CanonicalAngle, WrapsIntoRange) {
  EXPECT_DOUBLE_EQ(canonical_angle(-kPi / 2), 3 * kPi / 2);
  EXPECT_EQ(canonical_angle(kTwoPi), 0.0);
  EXPECT_EQ(canonical_angle(-0.0), 0.0);
  EXPECT_FALSE(std::signbit(canonical_angle(-0.0)));
  EXPECT_NEAR(canonical_angle(7 * kPi), kPi, 1e-12);
  RandomSource rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double a = (rng.next_unit() - 0.5) * 100.0;
    const double c = canonical_angle(a);
    EXPECT_GE(c, 0.0);
    EXPECT_LT(c, kTwoPi);
  }
}

}  // namespace
}  // namespace qfhe
