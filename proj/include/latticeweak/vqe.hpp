#pragma once

#include <array>

#include <Eigen/Dense>

#include "latticeweak/hamiltonian.hpp"
#include "latticeweak/sector.hpp"

namespace latticeweak {

// The six rotation angles of the Delta- preparation ansatz.  theta, theta1,
// theta11 are the free variational parameters; theta0, theta01, theta00 are
// fixed by the symmetry relations
//   theta0  = -2 asin[tan(theta/2)  cos(theta1/2)]
//   theta01 = -2 asin[cos(theta11/2) tan(theta1/2)]
//   theta00 = -2 asin[tan(theta0/2) cos(theta01/2)]
struct AnsatzAngles {
    double theta = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
    double theta00 = 0.0;
    double theta01 = 0.0;
    double theta11 = 0.0;
};

AnsatzAngles derive_dependent_angles(double theta, double theta1, double theta11);

// The 8-dimensional (N_u=0, N_d=3, lepton vacuum) block spanned by
// u/ubar color-pair excitations on top of the bare |ddd> state, ordered by
// the 3-bit pair-occupation pattern (bit c set = color-c pair present).
Eigen::MatrixXd delta_minus_block(const LatticeParams& p, const QubitLayout& layout);

// Exact ground-state amplitudes by pair count k=0..3 (all positive); the
// amplitude of a pattern with pair set P is a_{|P|} * pattern_sign(P).
Eigen::Vector4d exact_block_amplitudes(const LatticeParams& p);
int pattern_sign(int pattern);  // (-1)^{sum of colors in P + k(k-1)/2}

// Ansatz amplitudes over the 8 patterns for the given angles.
Eigen::VectorXd ansatz_amplitudes(const AnsatzAngles& a);

struct VqeResult {
    AnsatzAngles angles;
    double energy = 0.0;      // block ground energy at the optimum
    double infidelity = 0.0;  // vs exact block ground state
    int iterations = 0;
};

// Nelder-Mead minimization of <ansatz|H_block|ansatz> over (theta, theta1,
// theta11) with the dependent angles tied by the relations above.
VqeResult vqe_optimize(const LatticeParams& p, double tol = 1e-12, int max_iter = 4000);

}  // namespace latticeweak
