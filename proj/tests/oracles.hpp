#pragma once

// Independent reference computations used by the tests. Each one reaches
// its answer by a different route than the library code it checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "qic/matrix.hpp"
#include "qic/state.hpp"

namespace oracle {

using qic::ComplexMatrix;
using qic::cplx;

// Partial trace over K as sum_k (I (x) <k|) A (I (x) |k>), built from
// explicit matrix products.
inline ComplexMatrix trace_out_k(const ComplexMatrix& a, std::size_t dh, std::size_t dk) {
  ComplexMatrix out(dh, dh);
  for (std::size_t k = 0; k < dk; ++k) {
    ComplexMatrix ek(dk, 1);
    ek(k, 0) = 1.0;
    const ComplexMatrix p = qic::tensor(ComplexMatrix::identity(dh), ek);
    out += p.adjoint() * a * p;
  }
  return out;
}

inline ComplexMatrix trace_out_h(const ComplexMatrix& a, std::size_t dh, std::size_t dk) {
  ComplexMatrix out(dk, dk);
  for (std::size_t i = 0; i < dh; ++i) {
    ComplexMatrix ei(dh, 1);
    ei(i, 0) = 1.0;
    const ComplexMatrix p = qic::tensor(ei, ComplexMatrix::identity(dk));
    out += p.adjoint() * a * p;
  }
  return out;
}

// Trace norm as sum of sqrt(eig(A^dagger A)), using the smaller Gram
// matrix so no structural zero eigenvalue gets square-rooted.
inline double trace_norm_via_gram(const ComplexMatrix& a) {
  const ComplexMatrix g = a.rows() < a.cols() ? a * a.adjoint() : a.adjoint() * a;
  const auto ev = qic::hermitian_eig(g).eigenvalues;
  double s = 0.0;
  for (double l : ev) s += std::sqrt(std::max(0.0, l));
  return s;
}

// Qubit unitary from Euler angles, up to a global phase.
inline ComplexMatrix euler_unitary(double a, double b, double c) {
  const cplx i(0.0, 1.0);
  ComplexMatrix u(2, 2);
  u(0, 0) = std::exp(-i * (a + c) / 2.0) * std::cos(b / 2.0);
  u(0, 1) = -std::exp(-i * (a - c) / 2.0) * std::sin(b / 2.0);
  u(1, 0) = std::exp(i * (a - c) / 2.0) * std::sin(b / 2.0);
  u(1, 1) = std::exp(i * (a + c) / 2.0) * std::cos(b / 2.0);
  return u;
}

// max over K-side qubit unitaries of |<phi1|(I (x) U)|phi2>|^2 by a dense
// Euler-angle grid followed by a shrinking pattern search. dim_k must be 2.
inline double max_overlap_qubit_k(const qic::BipartitePureState& phi1, const qic::BipartitePureState& phi2) {
  const std::size_t dh = phi1.dim_h();
  auto value = [&](double a, double b, double c) {
    const ComplexMatrix u = euler_unitary(a, b, c);
    cplx ov{};
    for (std::size_t h = 0; h < dh; ++h)
      for (std::size_t k = 0; k < 2; ++k) {
        cplx t{};
        for (std::size_t l = 0; l < 2; ++l) t += u(k, l) * phi2.vec()[h * 2 + l];
        ov += std::conj(phi1.vec()[h * 2 + k]) * t;
      }
    return std::norm(ov);
  };
  const double pi = std::numbers::pi;
  const int grid = 24;
  double best = -1.0, ba = 0, bb = 0, bc = 0;
  for (int x = 0; x < grid; ++x)
    for (int y = 0; y <= grid; ++y)
      for (int z = 0; z < grid; ++z) {
        const double a = 2 * pi * x / grid, b = pi * y / grid, c = 2 * pi * z / grid;
        const double v = value(a, b, c);
        if (v > best) best = v, ba = a, bb = b, bc = c;
      }
  double step = pi / grid;
  while (step > 1e-9) {
    bool moved = false;
    for (int dim = 0; dim < 3; ++dim)
      for (double sgn : {-1.0, 1.0}) {
        double a = ba, b = bb, c = bc;
        (dim == 0 ? a : dim == 1 ? b : c) += sgn * step;
        const double v = value(a, b, c);
        if (v > best) best = v, ba = a, bb = b, bc = c, moved = true;
      }
    if (!moved) step /= 2.0;
  }
  return best;
}

// Best perfect matching of n (even) points under the weight table, by
// exhaustive recursion: (n-1)!! matchings.
inline double best_matching_average(const std::vector<std::vector<double>>& w) {
  const std::size_t n = w.size();
  std::vector<bool> used(n, false);
  std::function<double()> rec = [&]() -> double {
    std::size_t first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) return 0.0;
    used[first] = true;
    double best = -1.0;
    for (std::size_t j = first + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      best = std::max(best, w[first][j] + rec());
      used[j] = false;
    }
    used[first] = false;
    return best;
  };
  return 2.0 * rec() / static_cast<double>(n);
}

inline std::size_t count_matchings(std::size_t n) {
  std::size_t c = 1;
  for (std::size_t k = n - 1; k > 1; k -= 2) c *= k;
  return c;
}

// Random access code n -> 1 qubit. For measurement bases given by Bloch
// directions dirs[i], each string x gets the pure state that maximizes
// sum_i Pr[outcome x_i], found as the top eigenvector of
// sum_i Pi_i^{x_i}. Returns the average success probability.
inline double rac_success_for_bases(const std::vector<std::array<double, 3>>& dirs) {
  const std::size_t n = dirs.size();
  const cplx i(0.0, 1.0);
  auto projector = [&](const std::array<double, 3>& d, int sign) {
    ComplexMatrix p(2, 2);
    p(0, 0) = 0.5 * (1.0 + sign * d[2]);
    p(1, 1) = 0.5 * (1.0 - sign * d[2]);
    p(0, 1) = 0.5 * sign * (d[0] - i * d[1]);
    p(1, 0) = 0.5 * sign * (d[0] + i * d[1]);
    return p;
  };
  double total = 0.0;
  for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
    ComplexMatrix sum(2, 2);
    for (std::size_t k = 0; k < n; ++k) {
      const int bit = (x >> (n - 1 - k)) & 1;
      sum += projector(dirs[k], bit ? -1 : 1);
    }
    total += qic::hermitian_eig(sum).eigenvalues.back() / static_cast<double>(n);
  }
  return total / static_cast<double>(std::size_t{1} << n);
}

// Grid search over measurement directions (first fixed to +z by symmetry).
inline double rac_grid_optimum(std::size_t n, int grid) {
  const double pi = std::numbers::pi;
  auto dir = [](double th, double ph) {
    return std::array<double, 3>{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
  };
  std::vector<std::pair<double, double>> angles;
  for (int a = 0; a <= grid; ++a)
    for (int b = 0; b < 2 * grid; ++b) angles.emplace_back(pi * a / grid, pi * b / grid);
  double best = 0.0;
  std::vector<std::array<double, 3>> dirs(n);
  dirs[0] = {0.0, 0.0, 1.0};
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      best = std::max(best, rac_success_for_bases(dirs));
      return;
    }
    for (const auto& [t, p] : angles) {
      dirs[k] = dir(t, p);
      rec(k + 1);
    }
  };
  rec(1);
  return best;
}

}  // namespace oracle
