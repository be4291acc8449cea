#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "latticeweak/circuit.hpp"
#include "latticeweak/evolution.hpp"
#include "latticeweak/params.hpp"

namespace latticeweak {

// Dense statevector over nqubits (qubit 0 = least significant bit).
class Statevector {
  public:
    explicit Statevector(int nqubits);

    int nqubits() const { return nqubits_; }
    const Eigen::VectorXcd& amplitudes() const { return amp_; }
    Eigen::VectorXcd& amplitudes() { return amp_; }

    void apply(const Gate& g);
    void apply(const Circuit& c);

    // Probability that qubit q measures the given bit.
    double prob_bit(int q, int bit) const;
    double norm() const;

  private:
    int nqubits_;
    Eigen::VectorXcd amp_;
};

struct ShotResult {
    int shots = 0;
    std::uint64_t seed = 0;
    int kept = 0;  // after post-selection; == shots for raw results
    std::map<std::string, int> counts;  // bitstring (q0 leftmost? no: q_{n-1}..q_0) -> count

    double kept_fraction() const { return shots ? static_cast<double>(kept) / shots : 0.0; }
    std::string to_json_string() const;
};

// Sample `shots` computational-basis outcomes from |amp|^2.
ShotResult run(const Circuit& c, int shots, std::uint64_t seed);

struct PostSelectFilters {
    bool baryon = true;   // B = 1 (quark sector)
    bool lepton = true;   // L_lep = 0
    int ancilla = -1;     // qubit index that must read 0; -1 = no ancilla filter
};

// Filter counts on conserved charges; kept updated, shots preserved.
// Throws std::runtime_error if nothing survives.
ShotResult post_select(const ShotResult& r, const QubitLayout& layout,
                       const PostSelectFilters& f);

// Charge values of one bitstring (bit q = (index>>q)&1) under the occupation
// convention (fermion occupied = bit 0, antifermion occupied = bit 1).
double bitstring_baryon_number(std::uint64_t index, const QubitLayout& layout);
double bitstring_lepton_number(std::uint64_t index, const QubitLayout& layout);

// Table II "Theory": infinite-shot decay probabilities obtained by running the
// compiled circuits (state preparation + n-step Trotter schedule) on the
// statevector simulator and reading P(electron mode occupied).
DecayCurve trotter_decay_table(const LatticeParams& p, int steps,
                               const std::vector<double>& times);

}  // namespace latticeweak
