#include "qic/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qic/errors.hpp"
#include "qic/metrics.hpp"

namespace qic {

namespace {

// Symmetric table of pairwise trace distances, indexed by label.
std::vector<std::vector<double>> distance_table(const std::vector<DensityMatrix>& s) {
  const std::size_t n = s.size();
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) t[a][b] = t[b][a] = trace_distance(s[a], s[b]);
  return t;
}

double pairwise_delta(const std::vector<std::vector<double>>& t) {
  double sum = 0.0;
  for (const auto& row : t)
    for (double v : row) sum += v;
  const double n = static_cast<double>(t.size());
  return sum / (n * n);
}

Pairing search_pairing(const std::vector<std::vector<double>>& t, double delta, std::uint64_t seed,
                       std::size_t max_tries, double tol) {
  const std::size_t n = t.size();
  if (n < 2) throw RangeError("pairing needs m >= 1");
  Rng rng(seed);
  std::vector<std::uint64_t> perm(n);
  Pairing best;
  best.average = -1.0;
  for (std::size_t attempt = 1; attempt <= max_tries; ++attempt) {
    std::iota(perm.begin(), perm.end(), 0);
    // Fisher-Yates with the library RNG so the stream is reproducible.
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; i += 2) sum += t[perm[i]][perm[i + 1]];
    const double avg = 2.0 * sum / static_cast<double>(n);
    if (avg > best.average) {
      best.pairs.clear();
      for (std::size_t i = 0; i < n; i += 2) {
        best.pairs.emplace_back(std::min(perm[i], perm[i + 1]), std::max(perm[i], perm[i + 1]));
      }
      std::sort(best.pairs.begin(), best.pairs.end());
      best.average = avg;
    }
    best.tries = attempt;
    if (best.average >= delta - tol) return best;
  }
  throw SearchError("no pairing reached Delta = " + std::to_string(delta) + " in " + std::to_string(max_tries) +
                    " tries; best average " + std::to_string(best.average));
}

}  // namespace

std::vector<DensityMatrix> cube_states(const CQEnsemble& e, unsigned max_bits, double tol) {
  const unsigned m = e.bits();
  if (m > max_bits) throw RangeError("label width " + std::to_string(m) + " exceeds the cap");
  const std::size_t n = std::size_t{1} << m;
  if (e.size() != n) throw EnsembleError("labels do not cover {0,1}^m");
  const double p = 1.0 / static_cast<double>(n);
  std::vector<const DensityMatrix*> by_label(n, nullptr);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(e.priors()[i] - p) > tol) throw EnsembleError("prior is not uniform");
    by_label[e.labels()[i]] = &e.states()[i];
  }
  std::vector<DensityMatrix> out;
  out.reserve(n);
  for (auto* s : by_label) out.push_back(*s);
  return out;
}

EncodingStats encoding_stats(const CQEnsemble& e, std::uint64_t pairing_seed, double tol) {
  const auto states = cube_states(e, kMaxEncodingBits, tol);
  const auto t = distance_table(states);
  EncodingStats s;
  s.bits = e.bits();
  s.delta_pairwise = pairwise_delta(t);
  const DensityMatrix mean = e.average();
  for (const auto& st : states) s.delta_to_mean += trace_distance(mean, st);
  s.delta_to_mean /= static_cast<double>(states.size());
  s.info = holevo_information(e);
  if (s.bits >= 1) {
    const Pairing p = search_pairing(t, s.delta_pairwise, pairing_seed, 1000, tol);
    s.pairing = p.pairs;
    s.pairing_average = p.average;
  }
  return s;
}

EncodingSlacks encoding_slacks(const EncodingStats& s) {
  EncodingSlacks out{};
  out.mean_le_pairwise = s.delta_pairwise - s.delta_to_mean;
  out.pairwise_le_sqrt_info = 2.0 * std::sqrt(std::max(0.0, s.info)) - s.delta_pairwise;
  if (s.delta_pairwise <= 1.0) {
    const double d = std::max(0.0, s.delta_pairwise);
    const double f = 1.0 - binary_entropy((1.0 + d) / 2.0);
    out.info_ge_avgdist = s.info - f;
    out.avgdist_ge_quarter_sq = f - d * d / 4.0;
  }
  const double half = std::min(1.0, std::max(0.0, s.delta_pairwise) / 2.0);
  out.info_ge_half_avgdist = s.info - (1.0 - binary_entropy((1.0 + half) / 2.0));
  out.pairing_ge_delta = s.bits >= 1 ? s.pairing_average - s.delta_pairwise : 0.0;
  return out;
}

Pairing find_pairing(const CQEnsemble& e, std::uint64_t seed, std::size_t max_tries, double tol) {
  if (e.bits() < 1) throw RangeError("pairing needs m >= 1");
  const auto t = distance_table(cube_states(e, kMaxEncodingBits, tol));
  return search_pairing(t, pairwise_delta(t), seed, max_tries, tol);
}

DensityMatrix prefix_ensemble(const CQEnsemble& e, const std::string& prefix) {
  const unsigned m = e.bits();
  if (prefix.size() > m) throw RangeError("prefix longer than the label width");
  std::uint64_t value = 0;
  for (char c : prefix) {
    if (c != '0' && c != '1') throw RangeError("prefix must be a string of 0 and 1");
    value = (value << 1) | static_cast<std::uint64_t>(c == '1');
  }
  const unsigned shift = m - static_cast<unsigned>(prefix.size());
  std::vector<DensityMatrix> members;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if ((e.labels()[i] >> shift) == value) members.push_back(e.states()[i]);
  }
  if (members.empty()) throw EnsembleError("no label carries prefix " + prefix);
  const std::vector<double> w(members.size(), 1.0 / static_cast<double>(members.size()));
  return mixture(w, members);
}

InfoDecomposition info_decomposition_check(const CQEnsemble& e) {
  cube_states(e);
  const unsigned m = e.bits();
  double lhs = 0.0;
  for (unsigned i = 0; i < m; ++i) {
    // The summand depends only on the length-i prefix, so averaging over x
    // is averaging over prefixes.
    const std::size_t count = std::size_t{1} << i;
    double level = 0.0;
    for (std::size_t y = 0; y < count; ++y) {
      std::string prefix;
      for (unsigned b = 0; b < i; ++b) prefix += ((y >> (i - 1 - b)) & 1) ? '1' : '0';
      const CQEnsemble pair = CQEnsemble::uniform(1, {prefix_ensemble(e, prefix + "0"), prefix_ensemble(e, prefix + "1")});
      level += holevo_information(pair);
    }
    lhs += level / static_cast<double>(count);
  }
  return {lhs, holevo_information(e)};
}

CQEnsemble random_cube_ensemble(unsigned bits, std::size_t dim, Rng& rng) {
  const std::size_t n = std::size_t{1} << bits;
  std::vector<DensityMatrix> states;
  for (std::size_t i = 0; i < n; ++i) states.push_back(random_density(dim, 1 + rng.below(dim), rng));
  return CQEnsemble::uniform(bits, std::move(states));
}

}  // namespace qic
