#include "qic/transition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qic/errors.hpp"
#include "qic/metrics.hpp"
#include "qic/parallel.hpp"

namespace qic {

std::vector<cplx> apply_k(const BipartitePureState& phi, const ComplexMatrix& u) {
  if (!u.square() || u.rows() != phi.dim_k()) throw SizeError("K-side operator does not match dim_k");
  // Reshaped, (I (x) U) phi is A U^T.
  const ComplexMatrix out = phi.reshape() * u.transpose();
  return {out.entries().begin(), out.entries().end()};
}

TransitionResult uhlmann_align(const BipartitePureState& phi1, const BipartitePureState& phi2, double /*tol*/) {
  if (phi1.dim_h() != phi2.dim_h() || phi1.dim_k() != phi2.dim_k()) {
    throw SizeError("purifications have different shapes");
  }
  const ComplexMatrix a1 = phi1.reshape();
  const ComplexMatrix a2 = phi2.reshape();
  // <phi1|(I (x) U)|phi2> = Tr(C U^T) with C = A1^dagger A2 = Uc S V^dagger.
  // U^T = V Uc^dagger turns the trace into sum(S).
  const SvdResult d = svd(a1.adjoint() * a2);
  const ComplexMatrix u = (d.v * d.u.adjoint()).transpose();

  const cplx ov = inner(phi1.vec(), apply_k(phi2, u));
  const double ov_sq = std::min(1.0, std::norm(ov));
  const double dist = 2.0 * std::sqrt(std::max(0.0, 1.0 - ov_sq));
  const double td = trace_distance(phi1.reduced(Keep::H), phi2.reduced(Keep::H));
  return {u, ov_sq, dist, 2.0 * std::sqrt(td)};
}

ComplexMatrix exact_local_transition(const BipartitePureState& phi1, const BipartitePureState& phi2, double tol) {
  if (phi1.dim_h() != phi2.dim_h() || phi1.dim_k() != phi2.dim_k()) {
    throw SizeError("purifications have different shapes");
  }
  const double td = trace_distance(phi1.reduced(Keep::H), phi2.reduced(Keep::H));
  if (td > tol) {
    throw PreconditionError("reduced states differ (trace distance " + std::to_string(td) +
                            "); use uhlmann_align for approximate transitions");
  }
  return uhlmann_align(phi1, phi2, tol).unitary_k;
}

TransitionReport verify_transition_bound(std::size_t trials, std::size_t dim_h, std::size_t dim_k,
                                         std::uint64_t seed, double tol) {
  if (trials < 1) throw RangeError("need at least one trial");
  struct Trial {
    std::uint64_t seed;
    double slack;
    double chain_slack;
  };
  const auto results = parallel_map(trials, [&](std::size_t i) {
    const std::uint64_t s = derive_seed(seed, i);
    Rng rng(s);
    const std::size_t max_rank = std::min(dim_h, dim_k);
    const DensityMatrix r1 = random_density(dim_h, 1 + rng.below(max_rank), rng);
    const DensityMatrix r2 = random_density(dim_h, 1 + rng.below(max_rank), rng);
    const TransitionResult t = uhlmann_align(canonical_purification(r1, dim_k), canonical_purification(r2, dim_k));
    const double td = trace_distance(r1, r2);
    const double f = fidelity(r1, r2);
    return Trial{s, t.bound - t.pure_distance, td - (1.0 - f)};
  });

  TransitionReport rep;
  rep.trials = trials;
  rep.min_slack = std::numeric_limits<double>::infinity();
  rep.chain_min_slack = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    if (r.slack < rep.min_slack) {
      rep.min_slack = r.slack;
      rep.worst_instance_seed = r.seed;
    }
    rep.chain_min_slack = std::min(rep.chain_min_slack, r.chain_slack);
    rep.violations += r.slack < -tol ? 1 : 0;
    rep.chain_violations += r.chain_slack < -tol ? 1 : 0;
  }
  return rep;
}

nlohmann::json to_json(const TransitionReport& r) {
  return {{"trials", r.trials},
          {"min_slack", r.min_slack},
          {"violations", r.violations},
          {"worst_instance_seed", r.worst_instance_seed},
          {"chain_min_slack", r.chain_min_slack},
          {"chain_violations", r.chain_violations}};
}

}  // namespace qic
