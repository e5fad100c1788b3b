#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "qillum/fock_linalg.hpp"
#include "qillum/probe_states.hpp"

namespace qillum {
namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected qillum::Error";
  return ErrorCode::NonFiniteInput;
}

HermitianOperator random_hermitian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return HermitianOperator::symmetrized(m);
}

HermitianOperator random_psd(Index n, std::mt19937_64& rng) {
  const ComplexMatrix b = random_hermitian(n, rng).matrix();
  return HermitianOperator::symmetrized(b * b.adjoint() / static_cast<double>(n));
}

double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

TEST(BasisLayout, IndexMapsAreBijections) {
  for (std::int64_t M : {1, 3, 8}) {
    for (std::int64_t d : {1, 2, 4}) {
      const BasisLayout L{M, d};
      EXPECT_EQ(L.return_dim(), 1 + d * M);
      EXPECT_EQ(L.stored_dim(), d * M);
      std::set<Index> seen_return{BasisLayout::vacuum_index()};
      std::set<Index> seen_stored;
      for (std::int64_t k = 0; k < M; ++k) {
        for (std::int64_t j = 0; j < d; ++j) {
          const Index r = L.return_index(k, j);
          const Index s = L.stored_index(k, j);
          EXPECT_TRUE(seen_return.insert(r).second);
          EXPECT_TRUE(seen_stored.insert(s).second);
          EXPECT_EQ(L.return_mode(r).k, k);
          EXPECT_EQ(L.return_mode(r).j, j);
          EXPECT_EQ(L.stored_mode(s).k, k);
          EXPECT_EQ(L.stored_mode(s).j, j);
        }
      }
      EXPECT_EQ(static_cast<Index>(seen_return.size()), L.return_dim());
      EXPECT_EQ(*seen_return.rbegin(), L.return_dim() - 1);
      EXPECT_EQ(*seen_stored.rbegin(), L.stored_dim() - 1);
    }
  }
}

TEST(HermitianOperator, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_EQ(code_of([&] { HermitianOperator h(m); }), ErrorCode::NotHermitian);
  EXPECT_EQ(code_of([] { HermitianOperator h(ComplexMatrix::Zero(2, 3)); }),
            ErrorCode::DimensionMismatch);
}

TEST(Tensor, IdentityTimesIdentity) {
  const HermitianOperator t = tensor(HermitianOperator::identity(2), HermitianOperator::identity(3));
  EXPECT_EQ(t.dim(), 6);
  EXPECT_EQ(max_diff(t.matrix(), ComplexMatrix::Identity(6, 6)), 0.0);
}

TEST(Tensor, TraceIsMultiplicative) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_hermitian(1 + trial % 5, rng);
    const auto b = random_hermitian(2 + trial % 4, rng);
    EXPECT_NEAR(tensor(a, b).trace(), a.trace() * b.trace(), 1e-12);
  }
}

TEST(Tensor, ThermalTimesStoredMarginal) {
  const HermitianOperator rt = build_rho_thermal(8, 4, 1e-3);
  const HermitianOperator sigma = build_stored_marginal(8, 4);
  ASSERT_EQ(rt.dim(), 33);
  ASSERT_EQ(sigma.dim(), 32);
  const HermitianOperator rho0 = tensor(rt, sigma);
  EXPECT_EQ(rho0.dim(), 1056);
  EXPECT_NEAR(rho0.trace(), 1.0, 1e-12);
}

TEST(Tensor, DimensionCap) {
  EXPECT_EQ(code_of([] { tensor(HermitianOperator::identity(65), HermitianOperator::identity(64)); }),
            ErrorCode::DimensionOverflow);
  EXPECT_EQ(tensor(HermitianOperator::identity(64), HermitianOperator::identity(64)).dim(), 4096);
  EXPECT_EQ(code_of([] { tensor(HermitianOperator::identity(4), HermitianOperator::identity(4), 15); }),
            ErrorCode::DimensionOverflow);
}

TEST(PartialTrace, PsiMarginalIsMaximallyMixed) {
  const PureState psi = build_psi(2, 4);
  const HermitianOperator sigma = partial_trace(psi.projector(), psi.layout.return_dim(),
                                                psi.layout.stored_dim(), Subsystem::Second);
  ASSERT_EQ(sigma.dim(), 8);
  EXPECT_LE(max_diff(sigma.matrix(), ComplexMatrix::Identity(8, 8) / 8.0), 1e-15);
}

TEST(PartialTrace, ProductStateFactorizes) {
  std::mt19937_64 rng(2);
  const auto a = random_hermitian(3, rng);
  const auto b = random_hermitian(4, rng);
  const HermitianOperator first = partial_trace(tensor(a, b), 3, 4, Subsystem::First);
  EXPECT_LE(max_diff(first.matrix(), b.trace() * a.matrix()), 1e-12);
  const HermitianOperator second = partial_trace(tensor(a, b), 3, 4, Subsystem::Second);
  EXPECT_LE(max_diff(second.matrix(), a.trace() * b.matrix()), 1e-12);
}

TEST(PartialTrace, PreservesTrace) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d1 = 1 + trial % 4;
    const Index d2 = 1 + (trial * 7) % 5;
    const auto a = random_hermitian(d1 * d2, rng);
    EXPECT_NEAR(partial_trace(a, d1, d2, Subsystem::First).trace(), a.trace(), 1e-12);
    EXPECT_NEAR(partial_trace(a, d1, d2, Subsystem::Second).trace(), a.trace(), 1e-12);
  }
  EXPECT_EQ(code_of([&] { partial_trace(random_hermitian(6, rng), 4, 2, Subsystem::First); }),
            ErrorCode::DimensionMismatch);
}

TEST(PartialTrace, DensityMapsToDensity) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    HermitianOperator p = random_psd(12, rng);
    p = HermitianOperator(p.matrix() / p.trace());
    EXPECT_NO_THROW(check_density(partial_trace(p, 3, 4, Subsystem::First)));
    EXPECT_NO_THROW(check_density(partial_trace(p, 3, 4, Subsystem::Second)));
  }
}

TEST(Eigh, DiagonalInput) {
  const std::vector<double> v{3.0, 1.0, 2.0};
  const Eigendecomposition e = eigh(HermitianOperator::diagonal(v));
  EXPECT_DOUBLE_EQ(e.values(0), 1.0);
  EXPECT_DOUBLE_EQ(e.values(1), 2.0);
  EXPECT_DOUBLE_EQ(e.values(2), 3.0);
}

TEST(Eigh, PauliX) {
  ComplexMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  const Eigendecomposition e = eigh(HermitianOperator(x));
  EXPECT_NEAR(e.values(0), -1.0, 1e-15);
  EXPECT_NEAR(e.values(1), 1.0, 1e-15);
}

TEST(Eigh, RandomReconstruction) {
  std::mt19937_64 rng(5);
  const auto a = random_hermitian(50, rng);
  const Eigendecomposition e = eigh(a);
  const ComplexMatrix rec = e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
  EXPECT_LE(max_diff(rec, a.matrix()), 1e-10 * a.max_abs());
  EXPECT_LE(max_diff(e.vectors.adjoint() * e.vectors, ComplexMatrix::Identity(50, 50)), 1e-10);
  for (Index i = 1; i < e.values.size(); ++i) EXPECT_LE(e.values(i - 1), e.values(i));
}

TEST(Eigh, RealSymmetricInputUsesRealVectors) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  Eigen::MatrixXd b(20, 20);
  for (Index i = 0; i < 20; ++i)
    for (Index j = 0; j < 20; ++j) b(i, j) = g(rng);
  const HermitianOperator a = HermitianOperator::symmetrized((b * b.transpose()).cast<Complex>());
  const Eigendecomposition e = eigh(a);
  ASSERT_EQ(e.real_vectors.rows(), 20);
  EXPECT_EQ(eigh(random_hermitian(5, rng)).real_vectors.size(), 0);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> reference(a.matrix());
  for (Index i = 0; i < 20; ++i) {
    EXPECT_NEAR(e.values(i), reference.eigenvalues()(i), 1e-10 * a.max_abs());
  }
  const ComplexMatrix root = reference.eigenvectors() *
                             reference.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                             reference.eigenvectors().adjoint();
  EXPECT_LE(max_diff(frac_power(a, 0.5).matrix(), root), 1e-10 * a.max_abs());
}

TEST(FracPower, IdentityExponent) {
  std::mt19937_64 rng(6);
  const auto a = random_psd(10, rng);
  EXPECT_LE(max_diff(frac_power(a, 1.0).matrix(), a.matrix()), 1e-12);
}

TEST(FracPower, SquareRootOfDiagonal) {
  const std::vector<double> v{4.0, 9.0};
  const HermitianOperator r = frac_power(HermitianOperator::diagonal(v), 0.5);
  EXPECT_NEAR(r(0, 0).real(), 2.0, 1e-14);
  EXPECT_NEAR(r(1, 1).real(), 3.0, 1e-14);
  EXPECT_NEAR(std::abs(r(0, 1)), 0.0, 1e-14);
}

TEST(FracPower, ProjectorIsFixedPoint) {
  const PureState psi = build_psi(2, 2);
  const HermitianOperator p = psi.projector();
  for (double s : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    EXPECT_LE(max_diff(frac_power(p, s).matrix(), p.matrix()), 1e-12) << "s = " << s;
  }
}

TEST(FracPower, Errors) {
  const std::vector<double> neg{1.0, -0.1};
  EXPECT_EQ(code_of([&] { frac_power(HermitianOperator::diagonal(neg), 0.5); }),
            ErrorCode::NotPositiveSemidefinite);
  const std::vector<double> ok{1.0, 2.0};
  EXPECT_EQ(code_of([&] { frac_power(HermitianOperator::diagonal(ok), 0.0); }),
            ErrorCode::InvalidExponent);
  EXPECT_EQ(code_of([&] { frac_power(HermitianOperator::diagonal(ok), 1.5); }),
            ErrorCode::InvalidExponent);
}

TEST(FracPower, ClampsRoundingNegatives) {
  const std::vector<double> v{1.0, -1e-14, 0.0};
  const HermitianOperator r = frac_power(HermitianOperator::diagonal(v), 0.5);
  EXPECT_EQ(r(1, 1).real(), 0.0);
  EXPECT_EQ(r(2, 2).real(), 0.0);
}

TEST(FracPower, CompositeRootsReproduceInput) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_psd(12, rng);
    const ComplexMatrix half = frac_power(a, 0.5).matrix();
    EXPECT_LE(max_diff(half * half, a.matrix()), 1e-8);
    const ComplexMatrix third = frac_power(a, 1.0 / 3.0).matrix();
    EXPECT_LE(max_diff(third * third * third, a.matrix()), 1e-8);
  }
}

TEST(FracPower, ExponentsAdd) {
  std::mt19937_64 rng(9);
  for (auto [s1, s2] : std::vector<std::pair<double, double>>{{0.2, 0.3}, {0.5, 0.5}, {0.1, 0.7}}) {
    const auto a = random_psd(10, rng);
    const ComplexMatrix lhs = frac_power(a, s1).matrix() * frac_power(a, s2).matrix();
    EXPECT_LE(max_diff(lhs, frac_power(a, s1 + s2).matrix()), 1e-8);
  }
}

TEST(TraceProduct, MaximallyMixedWithIdentity) {
  const Index n = 7;
  const HermitianOperator mixed(ComplexMatrix::Identity(n, n) / static_cast<double>(n));
  EXPECT_NEAR(trace_product(mixed, HermitianOperator::identity(n)), 1.0, 1e-15);
}

TEST(TraceProduct, Cyclic) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_hermitian(9, rng);
    const auto b = random_hermitian(9, rng);
    EXPECT_NEAR(trace_product(a, b), trace_product(b, a), 1e-12);
    EXPECT_NEAR(trace_product(a, b), (a.matrix() * b.matrix()).trace().real(), 1e-11);
  }
  EXPECT_EQ(code_of([] { trace_product(HermitianOperator::identity(2), HermitianOperator::identity(3)); }),
            ErrorCode::DimensionMismatch);
}

}  // namespace
}  // namespace qillum
