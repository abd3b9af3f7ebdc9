#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qic/entropy.hpp"

namespace qic {

// Default cap on the label width; Delta is a 4^m-term sum.
inline constexpr unsigned kMaxEncodingBits = 6;

using LabelPair = std::pair<std::uint64_t, std::uint64_t>;

struct Pairing {
  std::vector<LabelPair> pairs;
  double average = 0.0;  // (2 / 2^m) sum_i ||sigma_a - sigma_b||_t
  std::size_t tries = 0;
};

struct EncodingStats {
  unsigned bits = 0;
  double delta_pairwise = 0.0;  // 4^-m sum_{x1,x2} ||sigma_x1 - sigma_x2||_t
  double delta_to_mean = 0.0;   // 2^-m sum_x ||sigma - sigma_x||_t
  double info = 0.0;            // I(X:Q)
  std::vector<LabelPair> pairing;
  double pairing_average = 0.0;
};

// Slack (rhs - lhs) of each inequality the stats should satisfy.
struct EncodingSlacks {
  double mean_le_pairwise;      // Delta - Delta'
  double pairwise_le_sqrt_info; // 2 sqrt(I) - Delta
  // I - (1 - H((1 + Delta)/2)) and f(Delta) - Delta^2/4. Empty when Delta > 1,
  // where H((1 + Delta)/2) is not defined.
  std::optional<double> info_ge_avgdist;
  std::optional<double> avgdist_ge_quarter_sq;
  // I - (1 - H(1/2 + Delta/4)). Applying the one-bit case to each pair with
  // its own Delta (half the pair distance) gives this weaker bound, which
  // always holds; the Delta form above can fail for m >= 2.
  double info_ge_half_avgdist;
  double pairing_ge_delta;      // pairing average - Delta
};

// Label x is read with x_1 as its most significant bit. Throws EnsembleError
// unless the labels are exactly {0,1}^m with a uniform prior, RangeError
// when m exceeds max_bits.
std::vector<DensityMatrix> cube_states(const CQEnsemble& e, unsigned max_bits = kMaxEncodingBits,
                                       double tol = kDefaultTol.validation);

EncodingStats encoding_stats(const CQEnsemble& e, std::uint64_t pairing_seed = 0,
                             double tol = kDefaultTol.validation);
EncodingSlacks encoding_slacks(const EncodingStats& s);

// Random perfect matchings, keeping the best, until the average reaches
// Delta - tol. Throws SearchError (message carries the best average) when
// max_tries runs out.
Pairing find_pairing(const CQEnsemble& e, std::uint64_t seed, std::size_t max_tries = 1000,
                     double tol = kDefaultTol.validation);

// Uniform mixture of sigma_{yz} over all suffixes z; prefix is a string of
// '0'/'1' of length at most m.
DensityMatrix prefix_ensemble(const CQEnsemble& e, const std::string& prefix);

struct InfoDecomposition {
  double lhs;  // 2^-m sum_x sum_i I(Q_{x_1..x_i} : X_{i+1})
  double rhs;  // I(Q:X)
};

InfoDecomposition info_decomposition_check(const CQEnsemble& e);

// Random cube ensemble with 2^bits states of dimension dim, mixing ranks.
CQEnsemble random_cube_ensemble(unsigned bits, std::size_t dim, Rng& rng);

}  // namespace qic
