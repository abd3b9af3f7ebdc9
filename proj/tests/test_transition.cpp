#include <gtest/gtest.h>

#include <cmath>

#include "qic/errors.hpp"
#include "qic/metrics.hpp"
#include "qic/transition.hpp"

using namespace qic;

namespace {

BipartitePureState rotate_k(const BipartitePureState& phi, const ComplexMatrix& u) {
  return BipartitePureState(phi.dim_h(), phi.dim_k(), apply_k(phi, u));
}

}  // namespace

TEST(Uhlmann, IdenticalStates) {
  const auto phi = random_pure(3, 3, 1);
  const auto r = uhlmann_align(phi, phi);
  EXPECT_NEAR(r.achieved_overlap_sq, 1.0, 1e-12);
  EXPECT_LE(r.pure_distance, 1e-6);
  EXPECT_LE(unitarity_defect(r.unitary_k), 1e-10);
  EXPECT_LE(phase_distance(apply_k(phi, r.unitary_k), phi.vec()), 1e-9);
}

TEST(Uhlmann, SameReducedStateDifferentPurification) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto phi1 = random_pure(3, 4, seed);
    const auto phi2 = rotate_k(phi1, random_unitary(4, seed + 1000));
    const auto r = uhlmann_align(phi1, phi2);
    EXPECT_NEAR(r.achieved_overlap_sq, 1.0, 1e-9);
    EXPECT_LE(phase_distance(apply_k(phi2, r.unitary_k), phi1.vec()), 1e-8);
  }
}

TEST(Uhlmann, OverlapMatchesFidelityOnRandomPairs) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dh = 2 + rng.below(3), dk = 2 + rng.below(5);
    const BipartitePureState a(dh, dk, random_vector(dh * dk, rng));
    const BipartitePureState b(dh, dk, random_vector(dh * dk, rng));
    const auto r = uhlmann_align(a, b);
    const double f = fidelity(a.reduced(Keep::H), b.reduced(Keep::H));
    EXPECT_NEAR(r.achieved_overlap_sq, f, 1e-8);
    EXPECT_LE(unitarity_defect(r.unitary_k), 1e-10);
    EXPECT_NEAR(r.pure_distance, 2.0 * std::sqrt(1.0 - r.achieved_overlap_sq), 1e-12);
    EXPECT_LE(r.pure_distance, r.bound + 1e-8);
    // The overlap is real and non-negative by construction.
    const cplx ov = inner(a.vec(), apply_k(b, r.unitary_k));
    EXPECT_NEAR(ov.imag(), 0.0, 1e-9);
    EXPECT_GE(ov.real(), -1e-12);
  }
}

TEST(Uhlmann, NoRandomUnitaryDoesBetter) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const BipartitePureState a(2, 3, random_vector(6, rng));
    const BipartitePureState b(2, 3, random_vector(6, rng));
    const auto r = uhlmann_align(a, b);
    for (int s = 0; s < 100; ++s) {
      const double ov = std::norm(inner(a.vec(), apply_k(b, random_unitary(3, rng))));
      EXPECT_LE(ov, r.achieved_overlap_sq + 1e-8);
    }
  }
}

TEST(Uhlmann, InvariantUnderKRotationOfSecondState) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const BipartitePureState a(3, 3, random_vector(9, rng));
    const BipartitePureState b(3, 3, random_vector(9, rng));
    const auto b2 = rotate_k(b, random_unitary(3, rng));
    EXPECT_NEAR(uhlmann_align(a, b).achieved_overlap_sq, uhlmann_align(a, b2).achieved_overlap_sq, 1e-9);
  }
}

TEST(Uhlmann, ContinuityAtEqualReducedStates) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_density(3, 1 + rng.below(3), rng);
    const auto p1 = canonical_purification(rho, 4);
    const auto p2 = rotate_k(p1, random_unitary(4, rng));
    ASSERT_LE(trace_distance(p1.reduced(Keep::H), p2.reduced(Keep::H)), 1e-10);
    EXPECT_LE(uhlmann_align(p1, p2).pure_distance, 1e-4);
  }
}

TEST(Uhlmann, DegenerateSpectra) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix u = random_unitary(4, rng);
    const DensityMatrix rho = make_density(u * ComplexMatrix::diagonal(std::vector<double>{0.25, 0.25, 0.5, 0.0}) * u.adjoint());
    const DensityMatrix sigma = make_density(ComplexMatrix::identity(4) * 0.25);
    const auto p1 = canonical_purification(rho, 4);
    const auto p2 = rotate_k(canonical_purification(sigma, 4), random_unitary(4, rng));
    const auto r = uhlmann_align(p1, p2);
    EXPECT_NEAR(r.achieved_overlap_sq, fidelity(rho, sigma), 1e-8);
    EXPECT_LE(unitarity_defect(r.unitary_k), 1e-10);
    EXPECT_LE(r.pure_distance, r.bound + 1e-8);

    const auto q = rotate_k(p1, random_unitary(4, rng));
    EXPECT_LE(phase_distance(apply_k(q, exact_local_transition(p1, q)), p1.vec()), 1e-8);
  }
}

TEST(Uhlmann, ShapeMismatch) {
  EXPECT_THROW(uhlmann_align(random_pure(2, 3, 1), random_pure(3, 2, 1)), SizeError);
}

TEST(ExactTransition, ConstructThenInvert) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto phi1 = random_pure(2 + seed % 3, 2 + seed % 4, seed);
    const ComplexMatrix v = random_unitary(phi1.dim_k(), seed + 77);
    const auto phi2 = rotate_k(phi1, v);
    const ComplexMatrix u = exact_local_transition(phi1, phi2);
    EXPECT_LE(phase_distance(apply_k(phi2, u), phi1.vec()), 1e-9);
    // With the real-overlap convention no phase is left over.
    const auto out = apply_k(phi2, u);
    double diff = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) diff += std::norm(out[i] - phi1.vec()[i]);
    EXPECT_LE(std::sqrt(diff), 1e-9);
  }
}

TEST(ExactTransition, BellPermutation) {
  const double s = 1.0 / std::sqrt(2.0);
  const BipartitePureState bell(2, 2, {s, 0.0, 0.0, s});
  const BipartitePureState swapped(2, 2, {0.0, s, s, 0.0});  // K basis flipped
  const ComplexMatrix u = exact_local_transition(bell, swapped);
  EXPECT_NEAR(std::abs(u(0, 1)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(u(1, 0)), 1.0, 1e-12);
  EXPECT_LE(phase_distance(apply_k(swapped, u), bell.vec()), 1e-12);

  const auto phi = random_pure(2, 2, 3);
  EXPECT_LE(phase_distance(apply_k(phi, exact_local_transition(phi, phi)), phi.vec()), 1e-9);
}

TEST(ExactTransition, RejectsDifferentReducedStates) {
  const std::vector<cplx> a{1.0, 0.0, 0.0, 0.0}, b{0.0, 0.0, 1.0, 0.0};
  EXPECT_THROW(exact_local_transition(BipartitePureState(2, 2, a), BipartitePureState(2, 2, b)), PreconditionError);
}

TEST(TransitionBound, EqualAndOrthogonalStates) {
  const DensityMatrix r = random_density(3, 2, 8);
  const auto p = canonical_purification(r, 3);
  const auto same = uhlmann_align(p, rotate_k(p, random_unitary(3, 9)));
  EXPECT_LE(same.pure_distance, 1e-6);
  EXPECT_GE(same.bound - same.pure_distance, -1e-8);

  const BipartitePureState a(2, 2, {1.0, 0.0, 0.0, 0.0}), b(2, 2, {0.0, 0.0, 1.0, 0.0});
  const auto orth = uhlmann_align(a, b);
  EXPECT_NEAR(orth.pure_distance, 2.0, 1e-12);
  EXPECT_NEAR(orth.bound, 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(orth.bound - orth.pure_distance, 0.8284271247, 1e-9);
}

TEST(TransitionBound, RandomSweep) {
  for (auto [dh, dk] : {std::pair{2, 2}, {2, 4}, {3, 3}, {4, 6}}) {
    const auto rep = verify_transition_bound(250, dh, dk, 42);
    EXPECT_EQ(rep.trials, 250u);
    EXPECT_EQ(rep.violations, 0u);
    EXPECT_GE(rep.min_slack, -1e-8);
    EXPECT_EQ(rep.chain_violations, 0u);
  }
  const auto a = verify_transition_bound(20, 3, 3, 5);
  const auto b = verify_transition_bound(20, 3, 3, 5);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}
