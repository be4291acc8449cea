#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "latticeweak/pauli.hpp"

namespace latticeweak {

// One diagonal conserved charge (a Z-string-weighted sum) with a target value.
struct ChargeConstraint {
    std::string name;
    OperatorSum op;  // must be diagonal
    double value = 0.0;
};

// Basis of computational states with fixed values of a set of diagonal
// charges that all commute with the Hamiltonian of interest.
class SectorSpec {
  public:
    SectorSpec() = default;

    const std::vector<std::uint64_t>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    int nqubits() const { return nqubits_; }
    const std::vector<ChargeConstraint>& charges() const { return charges_; }

    // Index of a computational state within the sector basis, or -1.
    long position(std::uint64_t state) const;

    // Throws (naming the offending term) if any charge fails to commute
    // with H symbolically.
    static SectorSpec build(const OperatorSum& H, std::vector<ChargeConstraint> charges,
                            double tol = 1e-9);

    // Enumerate a basis from charge values only (no commutation check) --
    // used for auxiliary restrictions inside an already-validated sector.
    static SectorSpec from_charges_unchecked(int nqubits, std::vector<ChargeConstraint> charges,
                                             double tol = 1e-9);

  private:
    int nqubits_ = 0;
    std::vector<ChargeConstraint> charges_;
    std::vector<std::uint64_t> basis_;
    std::vector<long> pos_;  // full-index -> sector position (or -1)
};

// Dense sector-projected matrix.  Verifies that H does not leak outside the
// sector (guaranteed when charges commute).
Eigen::MatrixXcd project_to_sector(const OperatorSum& H, const SectorSpec& sector,
                                   int dense_cap = 4096);

// Apply H to a sector-basis vector without materializing the matrix.
Eigen::VectorXcd apply_in_sector(const OperatorSum& H, const SectorSpec& sector,
                                 const Eigen::VectorXcd& v);

// Embed a sector vector into the full 2^n statevector.
Eigen::VectorXcd embed_full(const SectorSpec& sector, const Eigen::VectorXcd& v);
// Restrict a full statevector to the sector (drops outside amplitudes).
Eigen::VectorXcd restrict_to_sector(const SectorSpec& sector, const Eigen::VectorXcd& full);

// Diagonal charge value of one computational state.
double charge_value(const OperatorSum& diag_op, std::uint64_t state);

}  // namespace latticeweak
