#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "latticeweak/hamiltonian.hpp"
#include "latticeweak/sector.hpp"
#include "latticeweak/spectra.hpp"

namespace latticeweak {

// Computational-basis index of the bare Delta- state: three d quarks plus the
// lepton (tilde) vacuum.  With occupied = |0>, the set bits are the u-quark
// qubits and the nu/e qubits.
std::uint64_t bare_delta_minus_index(const QubitLayout& layout);

// Dynamical sector of the decay problem: baryon number 1 (N_u + N_d = 3) and
// lepton number 0.  Charges are checked to commute with H.
SectorSpec dynamical_sector(const OperatorSum& H, const QubitLayout& layout);

// Strong-interaction ground state in the (N_u=0, N_d=3) subsector, embedded
// as a vector over `sector` (the initial state of the decay quench).
Eigen::VectorXcd dressed_delta_minus(const OperatorSum& H_strong, const SectorSpec& sector,
                                     const QubitLayout& layout);

// Exact evolution via one cached dense eigendecomposition of the sector block.
class ExactEvolver {
  public:
    ExactEvolver(const OperatorSum& H, const SectorSpec& sector);
    Eigen::VectorXcd state(const Eigen::VectorXcd& v0, double t) const;
    const EigenSystem& eigensystem() const { return sys_; }

  private:
    EigenSystem sys_;
};

// Krylov (Lanczos) short-step propagator; matrix-free, used to cross-check
// the dense path and to reach sectors beyond the dense cap.
Eigen::VectorXcd evolve_krylov(const OperatorSum& H, const SectorSpec& sector,
                               const Eigen::VectorXcd& v0, double t, int krylov_dim = 30,
                               double step_tol = 1e-12);

// P(electron mode occupied) = <(1 + Z_e)/2>, i.e. the weight on basis states
// with the e qubit clear.
double decay_probability(const SectorSpec& sector, const Eigen::VectorXcd& v,
                         const QubitLayout& layout);

// Linear entropy 1 - Tr[rho^2] of the reduced state on the given qubits.
double linear_entropy(const SectorSpec& sector, const Eigen::VectorXcd& v,
                      const std::vector<int>& qubits);
// Convenience: the six valence-quark qubits (u and d particle modes, site 0).
std::vector<int> valence_quark_qubits(const QubitLayout& layout);

struct DecayCurve {
    std::vector<double> times;
    std::vector<double> probability;
    std::vector<double> entropy;  // empty unless requested
};

DecayCurve exact_decay_curve(const LatticeParams& p, double t_max, double dt,
                             bool with_entropy = false);

// ---------------------------------------------------------------------------
// Trotterization.  The step structure is frozen: per step, the strong pieces
// in the order M (diagonal masses), K (hops), D (diagonal glue), then the
// color-exchange families in descending X-mask order, followed by the three
// beta color families in ascending X-mask order.  The first step of an
// n-step schedule may drop its strong half ("skip first strong").
// ---------------------------------------------------------------------------

struct TrotterFamily {
    std::string label;
    OperatorSum op;
};

// Strong-piece families in applied order: M, K, D, V(desc X-mask)...
std::vector<TrotterFamily> strong_families(const LatticeParams& p, const QubitLayout& layout,
                                           LeptonBasis lepton_basis = LeptonBasis::Tilde);
// Beta color families in applied order (ascending X-mask).
std::vector<TrotterFamily> beta_families(const LatticeParams& p, const QubitLayout& layout,
                                         BetaForm form = BetaForm::Valence);

class TrotterEvolver {
  public:
    TrotterEvolver(const LatticeParams& p, const QubitLayout& layout, const SectorSpec& sector,
                   LeptonBasis lepton_basis = LeptonBasis::Tilde,
                   BetaForm beta_form = BetaForm::Valence);

    // Apply `steps` Trotter steps of size tau each to v.
    Eigen::VectorXcd evolve(const Eigen::VectorXcd& v0, double tau, int steps,
                            bool skip_first_strong = false) const;

  private:
    struct CachedFamily {
        std::string label;
        EigenSystem sys;
    };
    Eigen::VectorXcd apply_family(const CachedFamily& f, const Eigen::VectorXcd& v,
                                  double tau) const;
    std::vector<CachedFamily> strong_;
    std::vector<CachedFamily> beta_;
};

// Decay probabilities of the n-step Trotterized quench at the given times
// (skip-first-strong schedule, step size t/steps).
std::vector<double> trotter_decay_probabilities(const LatticeParams& p,
                                                const std::vector<double>& times, int steps,
                                                bool skip_first_strong = true);

// Coarse two-factor Trotterization, one exact strong exponential followed by
// one exact beta exponential per step.  This is the reference splitting for
// decay-curve cross-checks; the family-level schedule above is the one the
// compiled circuits implement.
std::vector<double> two_factor_trotter_decay(const LatticeParams& p,
                                             const std::vector<double>& times, int steps);

// ---------------------------------------------------------------------------
// Signal helpers.
// ---------------------------------------------------------------------------

// Magnitudes of the real-input DFT (bins 0..N/2) of a uniformly sampled signal.
std::vector<double> dft_magnitudes(const std::vector<double>& samples);

// Frequencies (in angular units, 2*pi*k/(N*dt)) of the two strongest non-DC
// local maxima of the DFT magnitude; returns {f_low, f_high}.
std::pair<double, double> dominant_frequencies(const std::vector<double>& samples, double dt);

}  // namespace latticeweak
