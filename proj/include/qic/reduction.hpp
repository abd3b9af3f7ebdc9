#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qic/protocol.hpp"

namespace qic {

// Bob's input slots Y_1..Y_n and how many values each can take.
struct SliceLayout {
  std::vector<std::string> registers;
  std::size_t values = 2;
};

struct InfoBudget {
  std::vector<double> mu;   // I(M : Y_i) per requested slice
  std::size_t ell1 = 0;     // first-message qubits
  double joint = -1.0;      // I(M : Y_1..Y_n), negative when not computable
};

// Information the first message carries about each listed Y register, from
// the per-value averages of the first-message density. Throws SliceError
// when a listed register is not in a basis state in some case.
InfoBudget message_info_budget(const ProtocolSpec& spec, const InputDistribution& dist,
                               const std::vector<std::string>& slices, double tol = kDefaultTol.validation);

// P': Bob prepares the Y_i (i != j) and a fresh register psi himself, runs
// his first moves with psi in place of Y_j, sends M, and then fixes up his
// side with T_z controlled on Y_j = z. The first message no longer depends
// on Y_j.
struct ModifiedProtocol {
  ProtocolSpec spec;
  std::size_t j = 0;
  SliceLayout slices;
  std::string psi;
  std::vector<std::string> message;   // qubits of the first message
  std::vector<std::string> bob_rest;  // Bob's qubits besides Y_j and M after it
  std::size_t t_move = 0;
  std::vector<double> t_z;            // ||rho_M(P') - rho_M(P, z)||_t
  std::vector<double> align_distance; // trace distance of T_z phi' and phi(z)
  std::vector<double> align_bound;    // 2 sqrt(t_z)
};

// Throws ReductionError when the first message is not sent by Bob or the
// Y registers do not fit the layout.
ModifiedProtocol modify_first_message(const ProtocolSpec& p, const SliceLayout& slices, std::size_t j,
                                      double tol = kDefaultTol.validation);

struct ZeroInfoReport {
  std::size_t j = 0;
  double epsilon_j = 0.0;   // error of P under the a = j distribution
  double delta_j = 0.0;     // error of P'
  double mu_j = 0.0;        // I(M:Y_j) in P
  double mu_j_prime = 0.0;  // I(M:Y_j) in P'
  double mean_sqrt_t = 0.0; // E_z sqrt(t_z)
  double chain_slack = 0.0; // eps_j + 2 E_z sqrt(t_z) - delta_j
  double info_slack = 0.0;  // eps_j + 4 mu_j^{1/4} - delta_j
};

ZeroInfoReport certify_modification(const ProtocolSpec& p, const ModifiedProtocol& mp, const InputDistribution& dist_j,
                                    double tol = kDefaultTol.validation);

// P'': Alice starts by preparing the purification of the (fixed) first
// message over (M, B), runs her part, and sends B and j along with her
// first message. Bob then maps his side onto the P' state with V_z.
struct DroppedProtocol {
  ProtocolSpec spec;
  std::size_t rank = 0;      // of rho_M
  std::size_t b_qubits = 0;
  std::size_t j_qubits = 0;
  double rho_m_spread = 0.0; // max trace distance between per-z rho_M
};

// Throws ReductionError when rho_M depends on Y_j or the transition
// preconditions fail.
DroppedProtocol drop_first_message(const ModifiedProtocol& mp, double tol = kDefaultTol.certification);

struct DropReport {
  double tv_max = 0.0;         // max over cases of |Pr'[1] - Pr''[1]|
  double error_prime = 0.0;    // P'
  double error_dprime = 0.0;   // P''
  std::size_t rounds_prime = 0;
  std::size_t rounds_dprime = 0;
  std::size_t qubits_prime = 0;
  std::size_t qubits_dprime = 0;
  std::size_t qubit_budget = 0;  // l + ceil(log n)
};

DropReport certify_drop(const ModifiedProtocol& mp, const DroppedProtocol& dp, const InputDistribution& dist_j,
                        double tol = kDefaultTol.validation);

// Whole chain for every j on one protocol.
struct PipelineReport {
  std::string name;
  double epsilon = 0.0;        // P under the uniform distribution
  double epsilon_prime = 0.0;  // mean over j of the P'' errors
  double vacuous_bound = 0.0;  // epsilon + 4 (l/n)^{1/4}
  double chain_bound = 0.0;    // mean over j of eps_j + 2 E_z sqrt(t_z)
  std::size_t ell = 0;
  std::size_t n = 0;
  InfoBudget budget;           // on the uniform distribution
  std::vector<ZeroInfoReport> zero;
  std::vector<DropReport> drop;
};

struct PipelineInput {
  std::string name;
  ProtocolSpec protocol;
  SliceLayout slices;
  InputDistribution uniform;                   // for epsilon and the budget
  std::vector<InputDistribution> per_pointer;  // a = j distributions
};

PipelineReport run_pipeline(const PipelineInput& in, double tol = kDefaultTol.validation);

nlohmann::json to_json(const InfoBudget& b);
nlohmann::json to_json(const ZeroInfoReport& r);
nlohmann::json to_json(const DropReport& r);
nlohmann::json to_json(const PipelineReport& r);

}  // namespace qic
