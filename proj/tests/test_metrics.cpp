#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qic/errors.hpp"
#include "qic/metrics.hpp"

using namespace qic;

namespace {

const double kS = 1.0 / std::sqrt(2.0);
const std::vector<cplx> k0{1.0, 0.0}, k1{0.0, 1.0}, kplus{kS, kS};

DensityMatrix conj_by(const DensityMatrix& r, const ComplexMatrix& u) { return make_density(u * r.mat() * u.adjoint()); }

}  // namespace

TEST(TraceNorm, Examples) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) EXPECT_NEAR(trace_norm(random_density(4, 2, seed).mat()), 1.0, 1e-12);
  EXPECT_NEAR(trace_norm(pure_density(k0).mat() - pure_density(kplus).mat()), std::sqrt(2.0), 1e-14);
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    ComplexMatrix a(2, 3), b(3, 2);
    for (auto& z : a.entries()) z = rng.complex_gaussian();
    for (auto& z : b.entries()) z = rng.complex_gaussian();
    EXPECT_NEAR(trace_norm(tensor(a, b)), trace_norm(a) * trace_norm(b), 1e-10);
  }
}

TEST(TraceDistance, Examples) {
  const DensityMatrix r = random_density(3, 3, 1);
  EXPECT_NEAR(trace_distance(r, r), 0.0, 1e-14);
  EXPECT_NEAR(trace_distance(pure_density(k0), pure_density(k1)), 2.0, 1e-14);
  EXPECT_THROW(trace_distance(r, random_density(2, 1, 1)), SizeError);
}

TEST(TraceDistance, EqualsOptimalMeasurementAndBeatsRandomOnes) {
  Rng rng(4);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t d = 2 + seed % 5;
    const DensityMatrix a = random_density(d, 1 + seed % d, rng);
    const DensityMatrix b = random_density(d, 1 + (seed / 3) % d, rng);
    const double td = trace_distance(a, b);
    const auto opt = optimal_measurement(a, b);
    EXPECT_NO_THROW(validate(opt.measurement, 1e-9));
    EXPECT_NEAR(opt.achieved_l1, td, 1e-9);
    // No projective measurement does better.
    for (int k = 0; k < 10; ++k) {
      const auto m = random_projective(d, 1 + rng.below(d), rng);
      EXPECT_LE(measured_l1(a, b, m), td + 1e-9);
    }
  }
}

TEST(TraceDistance, SymmetricAndUnitarilyInvariant) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix a = random_density(4, 2, rng);
    const DensityMatrix b = random_density(4, 3, rng);
    const ComplexMatrix u = random_unitary(4, rng);
    EXPECT_NEAR(trace_distance(a, b), trace_distance(b, a), 1e-10);
    EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-10);
    EXPECT_NEAR(trace_distance(a, b), trace_distance(conj_by(a, u), conj_by(b, u)), 1e-9);
    EXPECT_NEAR(fidelity(a, b), fidelity(conj_by(a, u), conj_by(b, u)), 1e-9);
  }
}

TEST(TraceDistance, MonotoneUnderPartialTrace) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix a = random_density(6, 1 + rng.below(6), rng);
    const DensityMatrix b = random_density(6, 1 + rng.below(6), rng);
    EXPECT_LE(trace_distance(reduce(a, 2, 3, Keep::H), reduce(b, 2, 3, Keep::H)), trace_distance(a, b) + 1e-9);
    EXPECT_LE(trace_distance(reduce(a, 2, 3, Keep::K), reduce(b, 2, 3, Keep::K)), trace_distance(a, b) + 1e-9);
  }
}

TEST(PureTraceDistance, MatchesDensityRoute) {
  EXPECT_NEAR(pure_trace_distance(k0, k0), 0.0, 1e-15);
  EXPECT_NEAR(pure_trace_distance(k0, k1), 2.0, 1e-15);
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = random_vector(5, rng);
    const auto v = random_vector(5, rng);
    EXPECT_NEAR(pure_trace_distance(u, v), trace_distance(pure_density(u), pure_density(v)), 1e-9);
  }
}

TEST(Fidelity, ClosedFormIdentities) {
  const DensityMatrix r = random_density(4, 3, 2);
  EXPECT_NEAR(fidelity(r, r), 1.0, 1e-10);
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto phi = random_vector(4, rng);
    const DensityMatrix r2 = random_density(4, 1 + rng.below(4), rng);
    const cplx expect = inner(phi, qic::apply(r2.mat(), phi));
    EXPECT_NEAR(fidelity(pure_density(phi), r2), expect.real(), 1e-10);
  }
  EXPECT_NEAR(fidelity(pure_density(k0), pure_density(k1)), 0.0, 1e-15);
}

TEST(Fidelity, MatchesQubitOptimizationOracle) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const DensityMatrix a = random_density(2, 1 + seed % 2, seed);
    const DensityMatrix b = random_density(2, 2, seed + 100);
    const auto p1 = canonical_purification(a, 2);
    const auto p2 = canonical_purification(b, 2);
    EXPECT_NEAR(fidelity(a, b), oracle::max_overlap_qubit_k(p1, p2), 1e-8);
  }
}

TEST(Bayes, Examples) {
  const DensityMatrix r = random_density(2, 2, 3);
  EXPECT_NEAR(bayes_success(r, r), 0.5, 1e-14);
  EXPECT_NEAR(bayes_success(pure_density(k0), pure_density(k1)), 1.0, 1e-14);
  EXPECT_NEAR(bayes_success(pure_density(k0), pure_density(kplus)), 0.5 + std::sqrt(2.0) / 4.0, 1e-14);
  EXPECT_NEAR(bayes_success(pure_density(k0), pure_density(kplus)), 0.85355339, 1e-8);
}

TEST(OptimalMeasurement, Examples) {
  const DensityMatrix r = random_density(3, 2, 4);
  EXPECT_NEAR(optimal_measurement(r, r).achieved_l1, 0.0, 1e-12);
  const auto m = optimal_measurement(pure_density(k0), pure_density(k1));
  EXPECT_NEAR(m.achieved_l1, 2.0, 1e-14);
  EXPECT_LE((m.measurement.projector_pos - pure_density(k0).mat()).max_abs(), 1e-14);
  EXPECT_LE((m.measurement.projector_neg - pure_density(k1).mat()).max_abs(), 1e-14);
}

TEST(Fvg, TightCasesAndSweep) {
  const DensityMatrix r = random_density(3, 3, 5);
  const auto same = fvg_check(r, r);
  EXPECT_NEAR(same.lower, 0.0, 1e-9);
  EXPECT_NEAR(same.upper, 0.0, 1e-5);  // sqrt(1 - F) amplifies the rounding in F
  const auto orth = fvg_check(pure_density(k0), pure_density(k1));
  EXPECT_NEAR(orth.lower, 0.0, 1e-14);
  EXPECT_NEAR(orth.upper, 0.0, 1e-14);

  Rng rng(10);
  double worst = 1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + rng.below(7);
    const DensityMatrix a = random_density(d, 1 + rng.below(d), rng);
    const DensityMatrix b = random_density(d, 1 + rng.below(d), rng);
    const auto s = fvg_check(a, b);
    worst = std::min({worst, s.lower, s.upper});
  }
  EXPECT_GE(worst, -1e-9);
}

TEST(Measurement, ValidationCatchesBadProjectors) {
  ProjectiveMeasurement m{{pure_density(k0).mat()}};
  EXPECT_THROW(validate(m), PreconditionError);
  EXPECT_NO_THROW(validate(computational_measurement(3)));
}
