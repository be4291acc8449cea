#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "latticeweak/hamiltonian.hpp"
#include "latticeweak/sector.hpp"

namespace latticeweak {

struct EigenSystem {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXcd vectors; // columns
};

// Dense sector diagonalization with a residual check (<= 1e-9 per pair).
// Sectors larger than `dense_cap` fall back to an iterative extremal
// (Lanczos) solve of the lowest eigenpair only.
EigenSystem diagonalize(const OperatorSum& H, const SectorSpec& sector, int dense_cap = 4096);

// Lowest eigenvalue only (iterative, works beyond the dense cap).
double lowest_eigenvalue(const OperatorSum& H, const SectorSpec& sector, int max_iter = 400,
                         double tol = 1e-10);

struct SpectrumRow {
    std::string label;
    double gap = 0.0;
};

using SpectrumTable = std::vector<SpectrumRow>;

// Labeled gaps above the vacuum for the baryon + lepton-pair states
// (requires G=0 for the baryon labels to be exact).
SpectrumTable spectrum_table(const LatticeParams& p);

}  // namespace latticeweak
