#include <gtest/gtest.h>

#include <cmath>

#include "qic/entropy.hpp"
#include "qic/errors.hpp"

using namespace qic;

namespace {

const double kS = 1.0 / std::sqrt(2.0);
const std::vector<cplx> k0{1.0, 0.0}, k1{0.0, 1.0}, kplus{kS, kS}, kminus{kS, -kS};

// Entropy computed straight from the definition, for cross-checks.
double h_direct(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0) h -= x * std::log(x) / std::log(2.0);
  return h;
}

}  // namespace

TEST(Shannon, Examples) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(shannon_entropy(std::vector<double>(8, 0.125)), 3.0, 1e-15);
  EXPECT_THROW(shannon_entropy(std::vector<double>{0.5, 0.6}), DistributionError);
  EXPECT_THROW(binary_entropy(1.5), RangeError);
}

TEST(BinaryGap, Examples) {
  EXPECT_NEAR(binary_entropy_gap(0.0), 0.0, 1e-15);
  EXPECT_NEAR(binary_entropy_gap(0.5), 1.0, 1e-15);
  EXPECT_THROW(binary_entropy_gap(0.6), RangeError);
}

TEST(BinaryGap, DominatesDeltaSquared) {
  for (int k = -10; k <= 10; ++k) {
    const double d = 0.05 * k;
    EXPECT_GE(binary_entropy_gap(d), d * d - 1e-12) << d;
  }
  for (int k = 0; k <= 1000; ++k) {
    const double d = -0.5 + k / 1000.0;
    EXPECT_GE(binary_entropy_gap(d), d * d - 1e-12) << d;
  }
}

TEST(Fano, Examples) {
  EXPECT_NEAR(fano_bound(0.5), 1.0, 1e-15);
  EXPECT_NEAR(fano_bound(0.0), 0.0, 1e-15);
  EXPECT_THROW(fano_bound(-0.1), RangeError);
}

TEST(Fano, BinaryChannelSweep) {
  // Uniform X, Y any binary channel. Agreement Pr[X = Y] = 1/2 + delta with
  // delta >= 0 must give I(X:Y) >= fano_bound(delta).
  const int steps = 60;
  for (int a = 0; a <= steps; ++a)
    for (int b = 0; b <= steps; ++b) {
      const double p00 = 0.5 * a / steps;       // Pr[X=0, Y=0]
      const double p11 = 0.5 * b / steps;       // Pr[X=1, Y=1]
      const std::vector<std::vector<double>> joint{{p00, 0.5 - p00}, {0.5 - p11, p11}};
      const double delta = p00 + p11 - 0.5;
      if (delta < 0) continue;
      EXPECT_GE(classical_mutual_info(joint), fano_bound(delta) - 1e-9) << a << " " << b;
    }
}

TEST(VonNeumann, Examples) {
  EXPECT_NEAR(von_neumann_entropy(pure_density(kplus)), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(make_density(ComplexMatrix::identity(2) * 0.5)), 1.0, 1e-14);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix r = random_density(5, 1, seed);
    EXPECT_NEAR(von_neumann_entropy(r), 0.0, 1e-9);
  }
}

TEST(VonNeumann, BlockStateIdentity) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    std::vector<double> p(n);
    double t = 0;
    for (auto& x : p) t += (x = rng.uniform() + 0.01);
    for (auto& x : p) x /= t;
    std::vector<DensityMatrix> s;
    double expect = h_direct(p);
    for (std::size_t i = 0; i < n; ++i) {
      s.push_back(random_density(3, 1 + rng.below(3), rng));
      expect += p[i] * von_neumann_entropy(s.back());
    }
    EXPECT_NEAR(von_neumann_entropy(block_state(p, s)), expect, 1e-9);
  }
}

TEST(VonNeumann, ConcaveAndSubadditive) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix a = random_density(4, 1 + rng.below(4), rng);
    const DensityMatrix b = random_density(4, 1 + rng.below(4), rng);
    const double w = rng.uniform();
    const std::vector<double> ws{w, 1 - w};
    const std::vector<DensityMatrix> ss{a, b};
    EXPECT_GE(von_neumann_entropy(mixture(ws, ss)),
              w * von_neumann_entropy(a) + (1 - w) * von_neumann_entropy(b) - 1e-9);

    const DensityMatrix ab = random_density(6, 1 + rng.below(6), rng);
    EXPECT_LE(von_neumann_entropy(ab),
              von_neumann_entropy(reduce(ab, 2, 3, Keep::H)) + von_neumann_entropy(reduce(ab, 2, 3, Keep::K)) + 1e-9);
  }
}

TEST(Holevo, Examples) {
  const DensityMatrix r = random_density(2, 2, 1);
  EXPECT_NEAR(holevo_information(CQEnsemble::uniform(1, {r, r})), 0.0, 1e-10);
  EXPECT_NEAR(holevo_information(CQEnsemble::uniform(1, {pure_density(k0), pure_density(k1)})), 1.0, 1e-12);
  const auto four = CQEnsemble::uniform(2, {pure_density(k0), pure_density(k1), pure_density(kplus), pure_density(kminus)});
  EXPECT_NEAR(holevo_information(four), 1.0, 1e-10);
  EXPECT_NEAR(conditional_entropy(four), 0.0, 1e-10);
}

TEST(Ensemble, Validation) {
  const DensityMatrix r = random_density(2, 2, 1);
  EXPECT_THROW(CQEnsemble(1, {0, 0}, {0.5, 0.5}, {r, r}), EnsembleError);
  EXPECT_THROW(CQEnsemble(1, {0, 2}, {0.5, 0.5}, {r, r}), EnsembleError);
  EXPECT_THROW(CQEnsemble(1, {0, 1}, {0.5, 0.6}, {r, r}), DistributionError);
  EXPECT_THROW(CQEnsemble(1, {0}, {1.0}, {r, r}), EnsembleError);
}

TEST(MeasuredInfo, ExamplesAndHolevoBound) {
  const auto basis = CQEnsemble::uniform(1, {pure_density(k0), pure_density(k1)});
  EXPECT_NEAR(measured_mutual_info(basis, computational_measurement(2)), 1.0, 1e-12);
  ProjectiveMeasurement trivial{{ComplexMatrix::identity(2)}};
  EXPECT_NEAR(measured_mutual_info(basis, trivial), 0.0, 1e-12);

  Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const unsigned bits = 1 + static_cast<unsigned>(rng.below(3));
    const std::size_t d = 2 + rng.below(3);
    std::vector<DensityMatrix> states;
    for (std::size_t i = 0; i < (std::size_t{1} << bits); ++i) states.push_back(random_density(d, 1 + rng.below(d), rng));
    const auto e = CQEnsemble::uniform(bits, states);
    const auto m = random_projective(d, 1 + rng.below(d), rng);
    EXPECT_LE(measured_mutual_info(e, m), holevo_information(e) + 1e-9);
  }
}

TEST(BipartiteInfo, Examples) {
  const DensityMatrix a = random_density(2, 2, 5), b = random_density(3, 2, 6);
  EXPECT_NEAR(bipartite_mutual_info(make_density(tensor(a.mat(), b.mat())), 2, 3), 0.0, 1e-9);
  const std::vector<cplx> bell{kS, 0.0, 0.0, kS};
  EXPECT_NEAR(bipartite_mutual_info(pure_density(bell), 2, 2), 2.0, 1e-10);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto psi = random_pure(2, 3, seed);
    const DensityMatrix rho = make_density(psi.density());
    EXPECT_NEAR(bipartite_mutual_info(rho, 2, 3), 2.0 * von_neumann_entropy(psi.reduced(Keep::H)), 1e-9);
  }
  EXPECT_THROW(bipartite_mutual_info(pure_density(bell), 3, 2), SizeError);
}

TEST(ChainRule, ClassicalIdentity) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Joint3 j = random_joint3(1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(4), rng);
    auto mi = [&](bool ax, bool ay, bool az, bool bx, bool by, bool bz) {
      return j.entropy(ax, ay, az) + j.entropy(bx, by, bz) - j.entropy(ax || bx, ay || by, az || bz);
    };
    const double x_yz = mi(true, false, false, false, true, true);
    const double x_y = mi(true, false, false, false, true, false);
    const double xy_z = mi(true, true, false, false, false, true);
    const double y_z = mi(false, true, false, false, false, true);
    EXPECT_NEAR(x_yz, x_y + xy_z - y_z, 1e-10);
  }
}

TEST(ChainRule, MonotoneForClassicalX) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned bits = 1 + static_cast<unsigned>(rng.below(2));
    std::vector<DensityMatrix> states;
    for (std::size_t i = 0; i < (std::size_t{1} << bits); ++i) states.push_back(random_density(6, 1 + rng.below(6), rng));
    const auto xyz = CQEnsemble::uniform(bits, states);
    const auto xy = reduce_ensemble(xyz, 2, 3, Keep::H);
    const auto xz = reduce_ensemble(xyz, 2, 3, Keep::K);
    EXPECT_GE(holevo_information(xyz), holevo_information(xy) - 1e-10);
    EXPECT_GE(holevo_information(xyz), holevo_information(xz) - 1e-10);
  }
}
