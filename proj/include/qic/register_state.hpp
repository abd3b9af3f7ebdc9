#pragma once

#include <span>
#include <string>
#include <vector>

#include "qic/state.hpp"

namespace qic {

// Pure state over named qubits. Qubit 0 is the most significant bit of the
// amplitude index, matching tensor().
class LabeledState {
 public:
  // Zero qubits, amplitude 1.
  LabeledState() : amps_{1.0} {}

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<cplx>& amps() const { return amps_; }
  std::size_t qubits() const { return labels_.size(); }
  bool has(const std::string& label) const;
  std::size_t position(const std::string& label) const;

  // Tensors new qubits on the right. Throws SizeError past kMaxDim.
  void append(const std::vector<std::string>& labels, std::span<const cplx> amps);

  // Applies u to the listed qubits; the first listed is most significant.
  void apply(const ComplexMatrix& u, const std::vector<std::string>& targets);

  double probability_one(const std::string& label) const;

  // Projects the qubit on |bit> and drops it. Throws WeightError unless the
  // qubit was already in that state up to tol in probability.
  void remove_fixed(const std::string& label, int bit, double tol = kDefaultTol.certification);

  LabeledState permuted(const std::vector<std::string>& order) const;

  // Reduced density matrix of the listed qubits, in the listed order.
  ComplexMatrix reduced(const std::vector<std::string>& keep) const;

  // View as H (x) K with the given qubit split; together the lists must
  // name every qubit exactly once.
  BipartitePureState split(const std::vector<std::string>& h, const std::vector<std::string>& k) const;

 private:
  std::vector<std::string> labels_;
  std::vector<cplx> amps_;
};

}  // namespace qic
