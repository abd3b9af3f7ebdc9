#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qic/register_state.hpp"

namespace qic {

enum class Player { Alice, Bob };
enum class Role { AliceInput, BobInput, AliceWork, BobWork, Message };

inline Player other(Player p) { return p == Player::Alice ? Player::Bob : Player::Alice; }
const char* to_string(Player p);
const char* to_string(Role r);
bool is_input(Role r);

struct Register {
  std::string name;
  std::size_t qubits = 1;
  Role role = Role::AliceWork;
  Player owner = Player::Alice;  // at the start of the protocol
  // Only for input registers: every input case holds a basis state here, so
  // the register is compiled out of the simulated state and moves act on
  // the block selected by its value.
  bool classical = false;
};

// Qubit labels of a register: "name" for one qubit, "name.0", "name.1", ...
// otherwise, most significant first.
std::vector<std::string> qubit_labels(const Register& r);

struct Move {
  Player player = Player::Alice;
  ComplexMatrix unitary;              // on targets; first target most significant
  std::vector<std::string> targets;   // qubit labels
  std::vector<std::string> send;      // qubit labels handed to the other player
  std::string note;
};

struct ProtocolSpec {
  std::vector<Register> registers;
  std::vector<Move> moves;
  Player decider = Player::Bob;
  std::string output;  // qubit measured in the computational basis
};

const Register& find_register(const ProtocolSpec& spec, const std::string& name);
std::vector<std::string> register_qubits(const ProtocolSpec& spec, const std::string& name);

// Throws ProtocolError on unknown labels, size mismatches, non-unitary moves
// and ownership violations, ModelViolation when a move is not block diagonal
// on the input qubits it touches.
void validate(const ProtocolSpec& spec, double tol = kDefaultTol.validation);

std::size_t message_count(const ProtocolSpec& spec);
std::size_t message_qubits(const ProtocolSpec& spec);
// Index of the first move with a nonempty send; throws ProtocolError if none.
std::size_t first_send_move(const ProtocolSpec& spec);

// One term of the input distribution. Registers missing from amplitudes
// start in |0...0>; entries for non-input registers are ignored.
struct InputCase {
  double weight = 1.0;
  int target = 0;  // correct answer
  int slice = 0;   // grouping for per-slice errors
  std::map<std::string, std::vector<cplx>> amplitudes;
};
using InputDistribution = std::vector<InputCase>;

std::vector<cplx> basis_amplitudes(std::size_t qubits, std::size_t value);
std::vector<cplx> uniform_amplitudes(std::size_t qubits, std::size_t count);

struct RunOptions {
  std::size_t shots = 0;  // 0 = exact probabilities
  std::uint64_t seed = 0;
  double tol = kDefaultTol.validation;
};

struct RunReport {
  double error_avg = 0.0;
  std::vector<std::pair<int, double>> slice_errors;  // ascending slice
  std::vector<double> info_per_slice;                // filled by message_info_budget
  std::size_t message_qubits = 0;
  std::size_t first_message_qubits = 0;
  std::size_t rounds = 0;
  std::vector<double> p_one;  // per case, probability the output reads 1
};

RunReport run_protocol(const ProtocolSpec& spec, const InputDistribution& dist, const RunOptions& opt = {});

// Global state after the first `moves` moves (all of them by default).
// Classical registers are not part of it.
LabeledState simulate(const ProtocolSpec& spec, const InputCase& c, std::optional<std::size_t> moves = {},
                      double tol = kDefaultTol.validation);

// Density of the qubits sent in the first message, right after it is sent.
DensityMatrix first_message_density(const ProtocolSpec& spec, const InputCase& c,
                                    double tol = kDefaultTol.validation);

// Value of a register that must hold a basis state in this case.
std::optional<std::size_t> basis_value(const InputCase& c, const Register& r, double tol = kDefaultTol.validation);

// Sum_v |v><v| (x) blocks[v] with the control on the leading qubits; values
// past blocks.size() get the identity.
ComplexMatrix controlled(std::size_t control_qubits, const std::vector<ComplexMatrix>& blocks);

nlohmann::json to_json(const RunReport& r);

}  // namespace qic
