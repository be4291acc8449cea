#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "latticeweak/circuit.hpp"
#include "latticeweak/evolution.hpp"
#include "latticeweak/hamiltonian.hpp"
#include "latticeweak/vqe.hpp"

namespace latticeweak {

// Symbolic Clifford conjugation: returns g Op g with g = H(q) or CNOT(c,t)
// (both self-inverse).  Verified against dense matrices in the test suite.
OperatorSum conjugate_h(const OperatorSum& op, int q);
OperatorSum conjugate_cnot(const OperatorSum& op, int c, int t);
// Conjugate by a whole Clifford gate list in applied order.
OperatorSum conjugate_clifford(const OperatorSum& op, const std::vector<Gate>& gates);

// Clifford basis change (CNOT chain + one H) that diagonalizes a Hermitian
// family whose terms share a single X-mask; throws if no chain works.
std::vector<Gate> diagonalizing_basis(const OperatorSum& family);

// Emit exp(-i * D * t) for a diagonal operator as RZ rotations over a shared
// parity network (Gray-ordered when the terms form a full subset lattice).
// The identity component is dropped (global phase).
void emit_diagonal_exponential(Circuit& c, const OperatorSum& diag, double t);

// exp(-i * family * t) for one X-mask family: basis, diagonal, reverse basis.
Circuit family_exponential(const OperatorSum& family, double t, int nqubits_total);

struct TrotterCircuitOptions {
    bool use_ancilla = true;      // parity ancilla shared across the hop block
    bool cancel_cnots = true;     // run the peephole pass
    bool skip_first_strong = true;
};

// One beta step: the three color families in ascending X-mask order.
Circuit beta_step_circuit(const LatticeParams& p, const QubitLayout& layout, double t,
                          int nqubits_total = -1);

// One strong step: M, hops, diagonal glue, color-exchange families.
Circuit strong_step_circuit(const LatticeParams& p, const QubitLayout& layout, double t,
                            bool use_ancilla = true, int nqubits_total = -1);

// `steps` Trotter steps of physical duration t in total (step size t/steps).
Circuit trotter_step_circuit(const LatticeParams& p, const QubitLayout& layout, double t,
                             int steps, const TrotterCircuitOptions& opt = {});

// Delta- state preparation (9 CNOTs); closed-form angles from the exact
// block amplitudes, consistent with the variational relations.
Circuit state_prep_circuit(const LatticeParams& p, int nqubits_total = -1);
// The six closed-form preparation angles for the given parameters.
AnsatzAngles state_prep_angles(const LatticeParams& p);

// The two 4-qubit GHZ-preparation circuits whose conjugation diagonalizes
// the two 8-term XY families.
std::pair<Circuit, Circuit> ghz_circuits();

// Per-block CNOT accounting for one compiled Trotter schedule.
struct GateCountReport {
    struct Block {
        std::string name;
        int cnots = 0;
        int rz = 0;
        int h = 0;
    };
    std::vector<Block> blocks;
    int total_cnots = 0;
    nlohmann::json to_json() const;
};

GateCountReport gate_count_report(const LatticeParams& p, const QubitLayout& layout, double t,
                                  int steps, const TrotterCircuitOptions& opt = {});

}  // namespace latticeweak
