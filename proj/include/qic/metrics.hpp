#pragma once

#include <span>
#include <vector>

#include "qic/rng.hpp"
#include "qic/state.hpp"

namespace qic {

// Sum of singular values.
double trace_norm(const ComplexMatrix& a);

// ||r1 - r2||_t, in [0, 2].
double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2);

// 2 sqrt(1 - |<u|v>|^2) for unit vectors.
double pure_trace_distance(std::span<const cplx> u, std::span<const cplx> v);
double pure_trace_distance(const BipartitePureState& a, const BipartitePureState& b);

// Squared-overlap fidelity ||sqrt(r1) sqrt(r2)||_t^2, clamped to [0, 1].
double fidelity(const DensityMatrix& r1, const DensityMatrix& r2, double tol = kDefaultTol.validation);

struct TwoOutcomeMeasurement {
  ComplexMatrix projector_pos;
  ComplexMatrix projector_neg;
};

// Orthogonal measurement given by projectors summing to the identity.
struct ProjectiveMeasurement {
  std::vector<ComplexMatrix> projectors;
};

// Throws SizeError or PreconditionError when the projectors are not
// Hermitian, idempotent, mutually orthogonal and complete within tol.
void validate(const ProjectiveMeasurement& m, double tol = kDefaultTol.certification);
void validate(const TwoOutcomeMeasurement& m, double tol = kDefaultTol.certification);
ProjectiveMeasurement as_projective(const TwoOutcomeMeasurement& m);

// Projectors onto the computational basis vectors.
ProjectiveMeasurement computational_measurement(std::size_t dim);
// Random orthonormal basis split into `outcomes` nonempty groups.
ProjectiveMeasurement random_projective(std::size_t dim, std::size_t outcomes, Rng& rng);

std::vector<double> outcome_distribution(const DensityMatrix& rho, const ProjectiveMeasurement& m);

// sum_i |Tr P_i (r1 - r2)|
double measured_l1(const DensityMatrix& r1, const DensityMatrix& r2, const ProjectiveMeasurement& m);

struct OptimalMeasurement {
  TwoOutcomeMeasurement measurement;
  double achieved_l1;
};

// Projects on the eigenvectors of r1 - r2; eigenvalues in [-tol, tol] go to
// the positive projector.
OptimalMeasurement optimal_measurement(const DensityMatrix& r1, const DensityMatrix& r2,
                                       double tol = kDefaultTol.validation);

// 1/2 + ||r1 - r2||_t / 4
double bayes_success(const DensityMatrix& r1, const DensityMatrix& r2);

struct FvgSlack {
  double lower;  // D/2 - (1 - sqrt F)
  double upper;  // sqrt(1 - F) - D/2
};

FvgSlack fvg_check(const DensityMatrix& r1, const DensityMatrix& r2);

}  // namespace qic
