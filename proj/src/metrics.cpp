#include "qic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qic/errors.hpp"

namespace qic {

namespace {

void same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw SizeError("states have different dimensions");
}

}  // namespace

double trace_norm(const ComplexMatrix& a) {
  const auto s = svd(a).s;
  return std::accumulate(s.begin(), s.end(), 0.0);
}

double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2) {
  same_dim(r1, r2);
  // r1 - r2 is Hermitian, so its eigenvalues give the trace norm directly
  // and avoid SVD noise on the zero singular values.
  const auto ev = hermitian_eig(r1.mat() - r2.mat()).eigenvalues;
  double s = 0.0;
  for (double l : ev) s += std::abs(l);
  return std::clamp(s, 0.0, 2.0);
}

double pure_trace_distance(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw SizeError("pure states have different dimensions");
  const double ov = std::norm(inner(u, v));
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - ov));
}

double pure_trace_distance(const BipartitePureState& a, const BipartitePureState& b) {
  if (a.dim_h() != b.dim_h() || a.dim_k() != b.dim_k()) throw SizeError("pure states have different shapes");
  return pure_trace_distance(a.vec(), b.vec());
}

double fidelity(const DensityMatrix& r1, const DensityMatrix& r2, double tol) {
  same_dim(r1, r2);
  const double t = trace_norm(psd_sqrt(r1.mat(), tol) * psd_sqrt(r2.mat(), tol));
  return std::clamp(t * t, 0.0, 1.0);
}

void validate(const ProjectiveMeasurement& m, double tol) {
  if (m.projectors.empty()) throw SizeError("measurement has no outcomes");
  const std::size_t d = m.projectors[0].rows();
  ComplexMatrix sum(d, d);
  for (std::size_t i = 0; i < m.projectors.size(); ++i) {
    const ComplexMatrix& p = m.projectors[i];
    if (!p.square() || p.rows() != d) throw SizeError("projector dimensions differ");
    if (p.hermiticity_defect() > tol) throw PreconditionError("projector is not Hermitian");
    if ((p * p - p).frobenius_norm() > tol) throw PreconditionError("projector is not idempotent");
    for (std::size_t j = 0; j < i; ++j) {
      if ((p * m.projectors[j]).frobenius_norm() > tol) throw PreconditionError("projectors are not orthogonal");
    }
    sum += p;
  }
  if ((sum - ComplexMatrix::identity(d)).frobenius_norm() > tol) {
    throw PreconditionError("projectors do not sum to the identity");
  }
}

void validate(const TwoOutcomeMeasurement& m, double tol) { validate(as_projective(m), tol); }

ProjectiveMeasurement as_projective(const TwoOutcomeMeasurement& m) {
  return {{m.projector_pos, m.projector_neg}};
}

ProjectiveMeasurement computational_measurement(std::size_t dim) {
  ProjectiveMeasurement m;
  for (std::size_t i = 0; i < dim; ++i) {
    ComplexMatrix p(dim, dim);
    p(i, i) = 1.0;
    m.projectors.push_back(std::move(p));
  }
  return m;
}

ProjectiveMeasurement random_projective(std::size_t dim, std::size_t outcomes, Rng& rng) {
  if (outcomes < 1 || outcomes > dim) throw RangeError("outcome count must be in [1, dim]");
  const ComplexMatrix u = random_unitary(dim, rng);
  // Every outcome gets one basis vector, the rest are assigned at random.
  std::vector<std::size_t> group(dim);
  for (std::size_t i = 0; i < dim; ++i) group[i] = i < outcomes ? i : rng.below(outcomes);
  ProjectiveMeasurement m;
  m.projectors.assign(outcomes, ComplexMatrix(dim, dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const auto v = u.col(i);
    m.projectors[group[i]] += ComplexMatrix::outer(v, v);
  }
  return m;
}

std::vector<double> outcome_distribution(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  std::vector<double> p;
  p.reserve(m.projectors.size());
  for (const auto& proj : m.projectors) {
    if (proj.rows() != rho.dim()) throw SizeError("measurement dimension does not match the state");
    p.push_back(std::max(0.0, (proj * rho.mat()).trace().real()));
  }
  return p;
}

double measured_l1(const DensityMatrix& r1, const DensityMatrix& r2, const ProjectiveMeasurement& m) {
  same_dim(r1, r2);
  const ComplexMatrix diff = r1.mat() - r2.mat();
  double s = 0.0;
  for (const auto& proj : m.projectors) {
    if (proj.rows() != r1.dim()) throw SizeError("measurement dimension does not match the state");
    s += std::abs((proj * diff).trace().real());
  }
  return s;
}

OptimalMeasurement optimal_measurement(const DensityMatrix& r1, const DensityMatrix& r2, double tol) {
  same_dim(r1, r2);
  const std::size_t d = r1.dim();
  const ComplexMatrix diff = r1.mat() - r2.mat();
  const EigDecomposition eig = hermitian_eig(diff, tol);
  ComplexMatrix pos(d, d), neg(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto v = eig.eigenvectors.col(i);
    (eig.eigenvalues[i] >= -tol ? pos : neg) += ComplexMatrix::outer(v, v);
  }
  const double l1 = std::abs((pos * diff).trace().real()) + std::abs((neg * diff).trace().real());
  return {{pos, neg}, l1};
}

double bayes_success(const DensityMatrix& r1, const DensityMatrix& r2) {
  return 0.5 + trace_distance(r1, r2) / 4.0;
}

FvgSlack fvg_check(const DensityMatrix& r1, const DensityMatrix& r2) {
  const double half = trace_distance(r1, r2) / 2.0;
  const double f = fidelity(r1, r2);
  return {half - (1.0 - std::sqrt(f)), std::sqrt(1.0 - f) - half};
}

}  // namespace qic
