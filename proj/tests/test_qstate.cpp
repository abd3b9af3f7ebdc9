#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qic/errors.hpp"
#include "qic/state.hpp"

using namespace qic;

TEST(MakeDensity, AcceptsAndRejects) {
  EXPECT_NO_THROW(make_density(ComplexMatrix::identity(2) * 0.5));
  EXPECT_NO_THROW(make_density(ComplexMatrix(2, 2, {0.5, 0.5, 0.5, 0.5})));
  EXPECT_THROW(make_density(ComplexMatrix(2, 2, {1.1, 0.0, 0.0, -0.1})), NotPsdError);
  EXPECT_THROW(make_density(ComplexMatrix(2, 2, {0.5, 0.0, 0.0, 0.6})), TraceError);
  EXPECT_THROW(make_density(ComplexMatrix(2, 2, {0.5, 0.3, 0.0, 0.5})), HermiticityError);
  EXPECT_THROW(make_density(ComplexMatrix(2, 3)), SizeError);
}

TEST(Mixture, Examples) {
  const DensityMatrix rho = random_density(3, 2, 4);
  const std::vector<double> one{1.0};
  EXPECT_LE((mixture(one, std::vector<DensityMatrix>{rho}).mat() - rho.mat()).max_abs(), 1e-15);

  const std::vector<cplx> e0{1.0, 0.0}, e1{0.0, 1.0};
  const std::vector<DensityMatrix> basis{pure_density(e0), pure_density(e1)};
  const std::vector<double> half{0.5, 0.5};
  EXPECT_LE((mixture(half, basis).mat() - ComplexMatrix::identity(2) * 0.5).max_abs(), 1e-15);

  EXPECT_THROW(mixture(std::vector<double>{0.7, 0.7}, basis), DistributionError);
  EXPECT_THROW(mixture(std::vector<double>{1.5, -0.5}, basis), DistributionError);
  const std::vector<DensityMatrix> mixed_dims{pure_density(e0), random_density(3, 1, 1)};
  EXPECT_THROW(mixture(half, mixed_dims), SizeError);
}

TEST(Mixture, RandomPureQubitsStayValid) {
  Rng rng(8);
  std::vector<DensityMatrix> states;
  for (int i = 0; i < 4; ++i) states.push_back(pure_density(random_vector(2, rng)));
  const std::vector<double> w(4, 0.25);
  const DensityMatrix m = mixture(w, states);
  EXPECT_NEAR(m.mat().trace().real(), 1.0, 1e-12);
  EXPECT_GE(hermitian_eig(m.mat()).eigenvalues.front(), -1e-12);
}

TEST(Schmidt, ProductAndBell) {
  const BipartitePureState prod(2, 2, {0.0, 1.0, 0.0, 0.0});
  const auto p = schmidt(prod);
  EXPECT_NEAR(p.coeffs[0], 1.0, 1e-14);
  EXPECT_NEAR(p.coeffs[1], 0.0, 1e-14);

  const double s = 1.0 / std::sqrt(2.0);
  const auto b = schmidt(BipartitePureState(2, 2, {s, 0.0, 0.0, s}));
  EXPECT_NEAR(b.coeffs[0], s, 1e-14);
  EXPECT_NEAR(b.coeffs[1], s, 1e-14);
}

TEST(Schmidt, ReassemblesRandomStates) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto psi = random_pure(3, 4, seed);
    const auto d = schmidt(psi);
    ASSERT_EQ(d.coeffs.size(), 3u);
    double norm = 0.0;
    for (double c : d.coeffs) norm += c * c;
    EXPECT_NEAR(norm, 1.0, 1e-10);
    std::vector<cplx> rebuilt(12);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 4; ++k) rebuilt[i * 4 + k] += d.coeffs[r] * d.left_basis(i, r) * d.right_basis(k, r);
    EXPECT_LE(phase_distance(rebuilt, psi.vec()), 1e-9);
    // Squared coefficients are the H-side spectrum.
    auto ev = hermitian_eig(psi.reduced(Keep::H).mat()).eigenvalues;
    std::reverse(ev.begin(), ev.end());
    for (std::size_t r = 0; r < 3; ++r) EXPECT_NEAR(d.coeffs[r] * d.coeffs[r], ev[r], 1e-10);
    // ...and the singular values of the reshaped amplitude matrix.
    const auto sv = oracle::trace_norm_via_gram(psi.reshape());
    EXPECT_NEAR(d.coeffs[0] + d.coeffs[1] + d.coeffs[2], sv, 1e-10);
  }
}

TEST(Purification, Examples) {
  const std::vector<cplx> e0{1.0, 0.0};
  const auto p = canonical_purification(pure_density(e0), 1);
  EXPECT_NEAR(std::abs(p.vec()[0]), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(p.vec()[1]), 0.0, 1e-14);

  const auto m = canonical_purification(make_density(ComplexMatrix::identity(2) * 0.5), 2);
  EXPECT_LE((m.reduced(Keep::H).mat() - ComplexMatrix::identity(2) * 0.5).max_abs(), 1e-14);
  // K-side support is |0>, |1>: reduced K matrix is diagonal.
  const ComplexMatrix rk = m.reduced(Keep::K).mat();
  EXPECT_NEAR(std::abs(rk(0, 1)), 0.0, 1e-14);

  EXPECT_THROW(canonical_purification(make_density(ComplexMatrix::identity(2) * 0.5), 1), RankError);
}

TEST(Purification, RecoversDensityAndOrdersSupport) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix rho = random_density(4, 3, seed);
    for (std::size_t dk : {3u, 4u, 6u}) {
      const auto p = canonical_purification(rho, dk);
      EXPECT_LE((partial_trace(p.density(), 4, dk, Keep::H) - rho.mat()).max_abs(), 1e-10);
      // K-side reduced matrix is diagonal with descending entries.
      const ComplexMatrix rk = p.reduced(Keep::K).mat();
      for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t j = 0; j < dk; ++j)
          if (i != j) EXPECT_LE(std::abs(rk(i, j)), 1e-10);
      for (std::size_t i = 0; i + 1 < dk; ++i) EXPECT_GE(rk(i, i).real(), rk(i + 1, i + 1).real() - 1e-12);
    }
  }
}

TEST(Purification, DegenerateSpectrumIsReproducible) {
  const DensityMatrix rho = make_density(ComplexMatrix::identity(4) * 0.25);
  const auto a = canonical_purification(rho, 4);
  const auto b = canonical_purification(rho, 4);
  EXPECT_EQ(a.vec(), b.vec());
  EXPECT_LE((a.reduced(Keep::H).mat() - rho.mat()).max_abs(), 1e-14);
}

TEST(RandomStates, DeterministicAndValid) {
  EXPECT_EQ(random_unitary(4, 99), random_unitary(4, 99));
  EXPECT_EQ(random_density(3, 2, 5).mat(), random_density(3, 2, 5).mat());
  EXPECT_EQ(random_pure(2, 3, 7).vec(), random_pure(2, 3, 7).vec());
  EXPECT_NE(random_pure(2, 3, 7).vec(), random_pure(2, 3, 8).vec());

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix u = random_unitary(4, seed);
    EXPECT_LE(unitarity_defect(u), 1e-10);
    const auto ev = hermitian_eig(random_density(2, 1, seed).mat()).eigenvalues;
    EXPECT_NEAR(ev[0], 0.0, 1e-10);
    EXPECT_NEAR(ev[1], 1.0, 1e-10);
  }
  EXPECT_THROW(random_density(2, 3, 1), RangeError);
}

TEST(RandomStates, ReducedSidesAreValidWithEqualSpectra) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto psi = random_pure(2 + seed % 3, 3 + seed % 4, seed);
    const DensityMatrix h = psi.reduced(Keep::H);
    const DensityMatrix k = psi.reduced(Keep::K);
    auto lh = hermitian_eig(h.mat()).eigenvalues;
    auto lk = hermitian_eig(k.mat()).eigenvalues;
    std::reverse(lh.begin(), lh.end());
    std::reverse(lk.begin(), lk.end());
    for (std::size_t i = 0; i < std::min(lh.size(), lk.size()); ++i) EXPECT_NEAR(lh[i], lk[i], 1e-9);
  }
}

TEST(PhaseDistance, IgnoresGlobalPhase) {
  Rng rng(3);
  const auto v = random_vector(5, rng);
  auto w = v;
  for (auto& z : w) z *= std::polar(1.0, 1.234);
  EXPECT_LE(phase_distance(v, w), 1e-7);
  const std::vector<cplx> a{1.0, 0.0}, b{0.0, 1.0};
  EXPECT_NEAR(phase_distance(a, b), std::sqrt(2.0), 1e-15);
}

TEST(StateJson, RoundTrip) {
  const auto psi = random_pure(2, 3, 12);
  const auto back = pure_state_from_json(to_json(psi));
  EXPECT_EQ(back.vec(), psi.vec());
  EXPECT_EQ(back.dim_k(), 3u);
  EXPECT_THROW(BipartitePureState(2, 2, {1.0, 1.0, 0.0, 0.0}), NormError);
}
