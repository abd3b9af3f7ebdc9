#include "qic/register_state.hpp"

#include <algorithm>
#include <cmath>

#include "qic/errors.hpp"

namespace qic {

bool LabeledState::has(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t LabeledState::position(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ProtocolError("no simulated qubit named " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

void LabeledState::append(const std::vector<std::string>& labels, std::span<const cplx> amps) {
  if (amps.size() != (std::size_t{1} << labels.size())) throw SizeError("amplitude count does not match qubit count");
  for (const auto& l : labels) {
    if (has(l)) throw ProtocolError("qubit " + l + " is already simulated");
  }
  if ((amps_.size() << labels.size()) > kMaxDim) {
    throw SizeError("simulated state would exceed " + std::to_string(kMaxDim) + " amplitudes");
  }
  std::vector<cplx> out(amps_.size() * amps.size());
  for (std::size_t i = 0; i < amps_.size(); ++i)
    for (std::size_t j = 0; j < amps.size(); ++j) out[i * amps.size() + j] = amps_[i] * amps[j];
  amps_ = std::move(out);
  labels_.insert(labels_.end(), labels.begin(), labels.end());
}

void LabeledState::apply(const ComplexMatrix& u, const std::vector<std::string>& targets) {
  const std::size_t k = targets.size();
  if (!u.square() || u.rows() != (std::size_t{1} << k)) throw SizeError("gate size does not match its targets");
  if (k == 0) {
    for (auto& z : amps_) z *= u(0, 0);
    return;
  }
  const std::size_t n = labels_.size();
  std::vector<std::size_t> shift(k);
  std::size_t mask = 0;
  for (std::size_t t = 0; t < k; ++t) {
    shift[t] = n - 1 - position(targets[t]);
    const std::size_t bit = std::size_t{1} << shift[t];
    if (mask & bit) throw ProtocolError("gate lists a qubit twice");
    mask |= bit;
  }
  const std::size_t local = std::size_t{1} << k;
  std::vector<std::size_t> offset(local, 0);
  for (std::size_t l = 0; l < local; ++l)
    for (std::size_t t = 0; t < k; ++t)
      if ((l >> (k - 1 - t)) & 1) offset[l] |= std::size_t{1} << shift[t];
  std::vector<cplx> in(local), out(local);
  for (std::size_t base = 0; base < amps_.size(); ++base) {
    if (base & mask) continue;
    for (std::size_t l = 0; l < local; ++l) in[l] = amps_[base | offset[l]];
    for (std::size_t r = 0; r < local; ++r) {
      cplx s{};
      for (std::size_t c = 0; c < local; ++c) s += u(r, c) * in[c];
      out[r] = s;
    }
    for (std::size_t l = 0; l < local; ++l) amps_[base | offset[l]] = out[l];
  }
}

double LabeledState::probability_one(const std::string& label) const {
  const std::size_t bit = std::size_t{1} << (labels_.size() - 1 - position(label));
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if (i & bit) p += std::norm(amps_[i]);
  return p;
}

void LabeledState::remove_fixed(const std::string& label, int bit, double tol) {
  const double p1 = probability_one(label);
  const double off = bit ? 1.0 - p1 : p1;
  if (off > tol) throw WeightError("qubit " + label + " is not in a fixed basis state");
  const std::size_t pos = position(label);
  const std::size_t low = labels_.size() - 1 - pos;
  std::vector<cplx> out(amps_.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t hi = (i >> low) << (low + 1);
    const std::size_t lo = i & ((std::size_t{1} << low) - 1);
    out[i] = amps_[hi | (static_cast<std::size_t>(bit) << low) | lo];
  }
  const double len = norm2(out);
  for (auto& z : out) z /= len;
  amps_ = std::move(out);
  labels_.erase(labels_.begin() + static_cast<std::ptrdiff_t>(pos));
}

LabeledState LabeledState::permuted(const std::vector<std::string>& order) const {
  if (order.size() != labels_.size()) throw ProtocolError("permutation must list every qubit");
  const std::size_t n = labels_.size();
  std::vector<std::size_t> from(n);
  for (std::size_t t = 0; t < n; ++t) from[t] = position(order[t]);
  LabeledState out;
  out.labels_ = order;
  out.amps_.assign(amps_.size(), cplx{});
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t t = 0; t < n; ++t) j |= ((i >> (n - 1 - from[t])) & 1) << (n - 1 - t);
    out.amps_[j] = amps_[i];
  }
  return out;
}

ComplexMatrix LabeledState::reduced(const std::vector<std::string>& keep) const {
  std::vector<std::string> order = keep;
  for (const auto& l : labels_)
    if (std::find(keep.begin(), keep.end(), l) == keep.end()) order.push_back(l);
  const LabeledState p = permuted(order);
  const std::size_t dh = std::size_t{1} << keep.size();
  const std::size_t dk = p.amps_.size() / dh;
  return partial_trace(ComplexMatrix::outer(p.amps_, p.amps_), dh, dk, Keep::H);
}

BipartitePureState LabeledState::split(const std::vector<std::string>& h, const std::vector<std::string>& k) const {
  std::vector<std::string> order = h;
  order.insert(order.end(), k.begin(), k.end());
  const LabeledState p = permuted(order);
  return BipartitePureState(std::size_t{1} << h.size(), std::size_t{1} << k.size(), p.amps_,
                            kDefaultTol.certification);
}

}  // namespace qic
