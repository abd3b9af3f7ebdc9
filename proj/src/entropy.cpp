#include "qic/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <string>

#include "qic/errors.hpp"

namespace qic {

namespace {

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double shannon_entropy(std::span<const double> p, double tol) {
  double total = 0.0, h = 0.0;
  for (double x : p) {
    if (!(x >= -tol)) throw DistributionError("negative probability");
    total += x;
    h += plogp(std::max(0.0, x));
  }
  if (std::abs(total - 1.0) > tol) throw DistributionError("probabilities sum to " + std::to_string(total));
  return h;
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw RangeError("binary entropy argument outside [0, 1]");
  return plogp(p) + plogp(1.0 - p);
}

double binary_entropy_gap(double delta) {
  if (!(delta >= -0.5 && delta <= 0.5)) throw RangeError("delta outside [-1/2, 1/2]");
  return 1.0 - binary_entropy(0.5 + delta);
}

double fano_bound(double delta) {
  if (!(delta >= 0.0 && delta <= 0.5)) throw RangeError("delta outside [0, 1/2]");
  return 1.0 - binary_entropy(0.5 + delta);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double l : hermitian_eig(rho.mat()).eigenvalues) {
    const double c = std::clamp(l, 0.0, 1.0);
    if (c > kEntropyFloor) s += plogp(c);
  }
  return s;
}

CQEnsemble::CQEnsemble(unsigned bits, std::vector<std::uint64_t> labels, std::vector<double> priors,
                       std::vector<DensityMatrix> states, double tol)
    : bits_(bits), labels_(std::move(labels)), priors_(std::move(priors)), states_(std::move(states)) {
  if (states_.empty()) throw EnsembleError("ensemble has no states");
  if (labels_.size() != states_.size() || priors_.size() != states_.size()) {
    throw EnsembleError("ensemble needs one label and one prior per state");
  }
  if (bits_ > 63) throw EnsembleError("label width above 63 bits");
  std::set<std::uint64_t> seen;
  for (auto l : labels_) {
    if (l >> bits_) throw EnsembleError("label does not fit in the declared bit width");
    if (!seen.insert(l).second) throw EnsembleError("duplicate label");
  }
  shannon_entropy(priors_, tol);  // validates the prior
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) throw SizeError("ensemble states have different dimensions");
  }
}

CQEnsemble CQEnsemble::uniform(unsigned bits, std::vector<DensityMatrix> states) {
  const std::size_t n = states.size();
  if (n != (std::size_t{1} << bits)) throw EnsembleError("uniform ensemble needs 2^bits states");
  std::vector<std::uint64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i;
  return CQEnsemble(bits, std::move(labels), std::vector<double>(n, 1.0 / static_cast<double>(n)), std::move(states));
}

DensityMatrix CQEnsemble::average() const { return mixture(priors_, states_); }

double conditional_entropy(const CQEnsemble& e) {
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e.priors()[i] > 0.0) s += e.priors()[i] * von_neumann_entropy(e.states()[i]);
  }
  return s;
}

double holevo_information(const CQEnsemble& e) { return von_neumann_entropy(e.average()) - conditional_entropy(e); }

double classical_mutual_info(const std::vector<std::vector<double>>& joint) {
  if (joint.empty()) return 0.0;
  std::vector<double> px(joint.size(), 0.0), py(joint.front().size(), 0.0);
  std::vector<double> flat;
  for (std::size_t x = 0; x < joint.size(); ++x) {
    if (joint[x].size() != py.size()) throw SizeError("ragged joint distribution");
    for (std::size_t y = 0; y < py.size(); ++y) {
      px[x] += joint[x][y];
      py[y] += joint[x][y];
      flat.push_back(joint[x][y]);
    }
  }
  return shannon_entropy(px) + shannon_entropy(py) - shannon_entropy(flat);
}

double measured_mutual_info(const CQEnsemble& e, const ProjectiveMeasurement& m) {
  validate(m);
  if (m.projectors.front().rows() != e.dim()) throw SizeError("measurement dimension does not match the ensemble");
  std::vector<std::vector<double>> joint;
  for (std::size_t i = 0; i < e.size(); ++i) {
    auto row = outcome_distribution(e.states()[i], m);
    // Renormalize away rounding so the row sums to exactly one.
    double t = 0.0;
    for (double v : row) t += v;
    for (auto& v : row) v = e.priors()[i] * v / t;
    joint.push_back(std::move(row));
  }
  return std::max(0.0, classical_mutual_info(joint));
}

double measured_mutual_info(const CQEnsemble& e, const TwoOutcomeMeasurement& m) {
  return measured_mutual_info(e, as_projective(m));
}

double bipartite_mutual_info(const DensityMatrix& rho_ab, std::size_t dim_a, std::size_t dim_b) {
  if (dim_a * dim_b != rho_ab.dim()) throw SizeError("subsystem dimensions do not multiply to the state dimension");
  return von_neumann_entropy(reduce(rho_ab, dim_a, dim_b, Keep::H)) +
         von_neumann_entropy(reduce(rho_ab, dim_a, dim_b, Keep::K)) - von_neumann_entropy(rho_ab);
}

DensityMatrix block_state(std::span<const double> p, std::span<const DensityMatrix> states) {
  if (p.size() != states.size() || states.empty()) throw SizeError("block state needs one weight per block");
  shannon_entropy(p);
  const std::size_t n = p.size();
  const std::size_t d = states.front().dim();
  ComplexMatrix out(n * d, n * d);
  for (std::size_t i = 0; i < n; ++i) {
    if (states[i].dim() != d) throw SizeError("blocks have different dimensions");
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out(i * d + r, i * d + c) = p[i] * states[i].mat()(r, c);
  }
  return make_density(out);
}

CQEnsemble reduce_ensemble(const CQEnsemble& e, std::size_t dim_y, std::size_t dim_z, Keep keep) {
  std::vector<DensityMatrix> reduced;
  for (const auto& s : e.states()) reduced.push_back(reduce(s, dim_y, dim_z, keep));
  return CQEnsemble(e.bits(), e.labels(), e.priors(), std::move(reduced));
}

double Joint3::entropy(bool x, bool y, bool z) const {
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, double> marg;
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < ny; ++b)
      for (std::size_t c = 0; c < nz; ++c)
        marg[{x ? a : 0, y ? b : 0, z ? c : 0}] += p[(a * ny + b) * nz + c];
  std::vector<double> q;
  for (const auto& [k, v] : marg) q.push_back(v);
  return shannon_entropy(q);
}

Joint3 random_joint3(std::size_t nx, std::size_t ny, std::size_t nz, Rng& rng) {
  Joint3 j{nx, ny, nz, std::vector<double>(nx * ny * nz)};
  double t = 0.0;
  for (auto& v : j.p) {
    // Exponential weights give a uniform point on the simplex; some cells
    // are zeroed to exercise the 0 log 0 convention.
    v = rng.uniform() < 0.15 ? 0.0 : -std::log(1.0 - rng.uniform());
    t += v;
  }
  if (t == 0.0) {
    j.p[0] = 1.0;
    t = 1.0;
  }
  for (auto& v : j.p) v /= t;
  return j;
}

}  // namespace qic
