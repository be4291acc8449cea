#pragma once

#include "latticeweak/layout.hpp"
#include "latticeweak/params.hpp"
#include "latticeweak/pauli.hpp"

namespace latticeweak {

// Single-mode energies of the L=1 free lepton Hamiltonian in the tilde basis
// and the derived coefficients entering the tilde beta operator.
struct TildeCoefficients {
    double lambda_e = 0.5;
    double lambda_nu = 0.5;
    double c_e = 0.5;   // lambda_e - m_e
    double c_nu = 0.5;  // m_nu + lambda_nu
    // Coefficients of the two quark-bilinear families of the tilde operator.
    double coeff_same = 1.0;   // (c_e + c_nu) / sqrt((1-4 m_e c_e)(1+4 m_nu c_nu))
    double coeff_cross = 1.0;  // (1 + 4 c_e c_nu) / (2 sqrt(...))
};

TildeCoefficients tilde_coefficients(double m_e, double m_nu);

enum class LeptonBasis { Standard, Tilde };
enum class BetaForm { Standard, Tilde, Valence, Grouped };

// JW fermion operators with full Z strings for the given layout ordering.
OperatorSum jw_annihilate(int mode_qubit, int nqubits);
OperatorSum jw_create(int mode_qubit, int nqubits);
// chi_i^dagger chi_j (normalized).
OperatorSum jw_bilinear(int i, int j, int nqubits);

OperatorSum build_h_quarks(const LatticeParams& p, const QubitLayout& layout);
OperatorSum build_h_leptons(const LatticeParams& p, const QubitLayout& layout, LeptonBasis basis);
OperatorSum build_h_glue(const LatticeParams& p, const QubitLayout& layout);
OperatorSum build_h_beta(const LatticeParams& p, const QubitLayout& layout, BetaForm form);
OperatorSum build_h_majorana(const LatticeParams& p, const QubitLayout& layout);

struct FullOptions {
    LeptonBasis lepton_basis = LeptonBasis::Tilde;
    BetaForm beta_form = BetaForm::Valence;
    bool include_majorana = false;
};

OperatorSum build_full(const LatticeParams& p, const QubitLayout& layout, const FullOptions& opt = {});

// Diagonal conserved charges.
OperatorSum op_flavor_number(const QubitLayout& layout, Species flavor);  // u or d
OperatorSum op_baryon_number(const QubitLayout& layout);
OperatorSum op_lepton_number(const QubitLayout& layout);
OperatorSum op_total_z(const QubitLayout& layout);
// Single-qubit occupation projector expectation helper: Z on one mode.
OperatorSum op_mode_z(const QubitLayout& layout, int site, Species sp, int color = -1);

}  // namespace latticeweak
