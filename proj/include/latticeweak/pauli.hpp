#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace latticeweak {

using cplx = std::complex<double>;

// One weighted Pauli string over `nqubits` qubits.
//
// The per-qubit symbol is encoded in two bitmasks: bit q of `x` / `z` set
// means the string carries an X / Z factor on qubit q (both set = Y).  The
// coefficient is the coefficient of the *symbol* string, i.e. the operator is
//   coeff * prod_q S_q,   S_q in {I, X, Y, Z}.
//
// Qubit 0 is the least significant bit of a computational basis index.
struct PauliTerm {
    int nqubits = 0;
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    cplx coeff{0.0, 0.0};

    // Symbol on one qubit: 'I', 'X', 'Y' or 'Z'.
    char symbol(int q) const;
    // String rendered with qubit 0 rightmost, e.g. "IZXY".
    std::string to_string() const;
    bool same_string(const PauliTerm& o) const { return x == o.x && z == o.z; }
};

// Lexicographic order on the rendered string (qubit n-1 first), the canonical
// term order used for normalization and golden dumps.
bool term_string_less(const PauliTerm& a, const PauliTerm& b);

// Product of two single terms (phase tracked exactly).
PauliTerm term_multiply(const PauliTerm& a, const PauliTerm& b);

// A sum of Pauli terms; the universal operator representation.
class OperatorSum {
  public:
    OperatorSum() = default;
    explicit OperatorSum(int nqubits) : nqubits_(nqubits) {}

    int nqubits() const { return nqubits_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    void add_term(PauliTerm t);
    void add_symbol_term(cplx coeff, std::uint64_t xmask, std::uint64_t zmask);

    OperatorSum& operator+=(const OperatorSum& o);
    OperatorSum& operator-=(const OperatorSum& o);
    OperatorSum& operator*=(cplx s);
    friend OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }
    friend OperatorSum operator-(OperatorSum a, const OperatorSum& b) { return a -= b; }
    friend OperatorSum operator*(cplx s, OperatorSum a) { return a *= s; }

    // Merge equal strings, drop |coeff| < tol, sort canonically.
    OperatorSum normalized(double drop_tol = 1e-12) const;

    OperatorSum dagger() const;
    bool is_hermitian(double tol = 1e-12) const;
    // True if every term is a Z-string (x == 0).
    bool is_diagonal() const;

    // Dense rendering under the qubit-0 = LSB convention.
    Eigen::MatrixXcd dense_matrix(int max_qubits = 14) const;

    // y <- y + A x on a full 2^n statevector.
    void apply_accumulate(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& in) const;

    // Diagonal matrix element <s|A|s> (valid terms only; off-diagonal terms
    // contribute nothing).
    cplx diagonal_element(std::uint64_t s) const;

    // One term per line: "<re> <im> <string>", qubit 0 rightmost.
    std::string dump() const;
    static OperatorSum parse(const std::string& text, int nqubits);

  private:
    int nqubits_ = 0;
    std::vector<PauliTerm> terms_;
};

OperatorSum multiply(const OperatorSum& a, const OperatorSum& b, double drop_tol = 1e-12);
OperatorSum commutator(const OperatorSum& a, const OperatorSum& b, double drop_tol = 1e-12);

// sigma^+ / sigma^- on one qubit as a 2-term sum (no JW string attached).
// raise: 1/2 X + i/2 Y = |0><1| (moves a mode to occupied, which is |0>).
enum class Ladder { Raise, Lower };
OperatorSum jw_ladder(int qubit, Ladder kind, int nqubits);

// Plain building blocks.
OperatorSum identity_op(int nqubits, cplx coeff = 1.0);
OperatorSum pauli_z(int qubit, int nqubits, cplx coeff = 1.0);
OperatorSum pauli_x(int qubit, int nqubits, cplx coeff = 1.0);

}  // namespace latticeweak
