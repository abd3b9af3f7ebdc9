#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qic/metrics.hpp"
#include "qic/state.hpp"

namespace qic {

// Eigenvalues at or below this count as exactly zero in entropy sums.
inline constexpr double kEntropyFloor = 1e-12;

// Base-2 throughout. Throws DistributionError when p is not a distribution.
double shannon_entropy(std::span<const double> p, double tol = kDefaultTol.validation);
// Throws RangeError outside [0, 1].
double binary_entropy(double p);
// 1 - H(1/2 + delta), delta in [-1/2, 1/2].
double binary_entropy_gap(double delta);
// 1 - H(1/2 + delta), delta in [0, 1/2].
double fano_bound(double delta);

double von_neumann_entropy(const DensityMatrix& rho);

// Labeled classical-quantum ensemble x -> sigma_x with labels as m-bit
// integers.
class CQEnsemble {
 public:
  // Throws EnsembleError (duplicate or out-of-range labels, count mismatch)
  // or DistributionError (bad priors), SizeError on unequal dimensions.
  CQEnsemble(unsigned bits, std::vector<std::uint64_t> labels, std::vector<double> priors,
             std::vector<DensityMatrix> states, double tol = kDefaultTol.validation);

  // Uniform prior over all 2^bits labels, states indexed by label.
  static CQEnsemble uniform(unsigned bits, std::vector<DensityMatrix> states);

  unsigned bits() const { return bits_; }
  std::size_t size() const { return states_.size(); }
  std::size_t dim() const { return states_.front().dim(); }
  const std::vector<std::uint64_t>& labels() const { return labels_; }
  const std::vector<double>& priors() const { return priors_; }
  const std::vector<DensityMatrix>& states() const { return states_; }

  DensityMatrix average() const;

 private:
  unsigned bits_;
  std::vector<std::uint64_t> labels_;
  std::vector<double> priors_;
  std::vector<DensityMatrix> states_;
};

// sum_x p_x S(sigma_x)
double conditional_entropy(const CQEnsemble& e);
// S(sigma) - sum_x p_x S(sigma_x)
double holevo_information(const CQEnsemble& e);
// Classical I(X:Y) of labels against measurement outcomes.
double measured_mutual_info(const CQEnsemble& e, const ProjectiveMeasurement& m);
double measured_mutual_info(const CQEnsemble& e, const TwoOutcomeMeasurement& m);

// S(A) + S(B) - S(AB)
double bipartite_mutual_info(const DensityMatrix& rho_ab, std::size_t dim_a, std::size_t dim_b);

// Classical mutual information of a joint distribution p[x][y].
double classical_mutual_info(const std::vector<std::vector<double>>& joint);

// sum_i p_i |i><i| (x) sigma_i
DensityMatrix block_state(std::span<const double> p, std::span<const DensityMatrix> states);

// Each state of the ensemble lives on Y (x) Z; keep one side.
CQEnsemble reduce_ensemble(const CQEnsemble& e, std::size_t dim_y, std::size_t dim_z, Keep keep);

// Joint distribution of three classical variables, p[(x * ny + y) * nz + z].
struct Joint3 {
  std::size_t nx, ny, nz;
  std::vector<double> p;

  // Entropy of the marginal on the chosen variables.
  double entropy(bool x, bool y, bool z) const;
};

Joint3 random_joint3(std::size_t nx, std::size_t ny, std::size_t nz, Rng& rng);

}  // namespace qic
