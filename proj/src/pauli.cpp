#include "latticeweak/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace latticeweak {

namespace {

constexpr cplx kI{0.0, 1.0};

int popcount(std::uint64_t v) { return std::popcount(v); }

// i^k for k mod 4.
cplx ipow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

char PauliTerm::symbol(int q) const {
    const bool bx = (x >> q) & 1u;
    const bool bz = (z >> q) & 1u;
    if (bx && bz) return 'Y';
    if (bx) return 'X';
    if (bz) return 'Z';
    return 'I';
}

std::string PauliTerm::to_string() const {
    std::string s(static_cast<std::size_t>(nqubits), 'I');
    for (int q = 0; q < nqubits; ++q) s[static_cast<std::size_t>(nqubits - 1 - q)] = symbol(q);
    return s;
}

bool term_string_less(const PauliTerm& a, const PauliTerm& b) {
    for (int q = std::max(a.nqubits, b.nqubits) - 1; q >= 0; --q) {
        const char ca = a.symbol(q);
        const char cb = b.symbol(q);
        if (ca != cb) return ca < cb;
    }
    return false;
}

PauliTerm term_multiply(const PauliTerm& a, const PauliTerm& b) {
    if (a.nqubits != b.nqubits) throw std::invalid_argument("pauli: qubit count mismatch in multiply");
    // Convert symbol coefficients to X^x Z^z form: S = i^{|x&z|} would be wrong
    // sign-wise; the correct identity is Y = i X Z, so symbol string
    //   prod S_q = i^{popcount(x&z)} X^x Z^z.
    const int pa = popcount(a.x & a.z);
    const int pb = popcount(b.x & b.z);
    PauliTerm r;
    r.nqubits = a.nqubits;
    r.x = a.x ^ b.x;
    r.z = a.z ^ b.z;
    const int pr = popcount(r.x & r.z);
    // (X^{xa} Z^{za})(X^{xb} Z^{zb}) = (-1)^{|za & xb|} X^{xa^xb} Z^{za^zb}
    const int sign = popcount(a.z & b.x) & 1;
    r.coeff = a.coeff * b.coeff * ipow(pa + pb - pr) * (sign ? -1.0 : 1.0);
    return r;
}

void OperatorSum::add_term(PauliTerm t) {
    if (nqubits_ == 0) nqubits_ = t.nqubits;
    if (t.nqubits != nqubits_) throw std::invalid_argument("pauli: qubit count mismatch in add_term");
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
        throw std::invalid_argument("pauli: non-finite coefficient");
    terms_.push_back(t);
}

void OperatorSum::add_symbol_term(cplx coeff, std::uint64_t xmask, std::uint64_t zmask) {
    add_term(PauliTerm{nqubits_, xmask, zmask, coeff});
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& o) {
    if (nqubits_ == 0) nqubits_ = o.nqubits_;
    if (!o.terms_.empty() && o.nqubits_ != nqubits_)
        throw std::invalid_argument("pauli: qubit count mismatch in +=");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& o) {
    OperatorSum neg = o;
    neg *= cplx{-1.0, 0.0};
    return *this += neg;
}

OperatorSum& OperatorSum::operator*=(cplx s) {
    for (auto& t : terms_) t.coeff *= s;
    return *this;
}

OperatorSum OperatorSum::normalized(double drop_tol) const {
    std::vector<PauliTerm> ts = terms_;
    std::sort(ts.begin(), ts.end(), [](const PauliTerm& a, const PauliTerm& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.z < b.z;
    });
    OperatorSum out(nqubits_);
    std::size_t i = 0;
    while (i < ts.size()) {
        PauliTerm acc = ts[i];
        std::size_t j = i + 1;
        while (j < ts.size() && ts[j].same_string(acc)) {
            acc.coeff += ts[j].coeff;
            ++j;
        }
        if (std::abs(acc.coeff) > drop_tol) out.terms_.push_back(acc);
        i = j;
    }
    std::sort(out.terms_.begin(), out.terms_.end(), term_string_less);
    return out;
}

OperatorSum OperatorSum::dagger() const {
    OperatorSum out(nqubits_);
    for (const auto& t : terms_) {
        PauliTerm c = t;
        c.coeff = std::conj(c.coeff);  // Pauli strings are hermitian
        out.terms_.push_back(c);
    }
    return out;
}

bool OperatorSum::is_hermitian(double tol) const {
    OperatorSum d = (*this - dagger()).normalized(tol);
    return d.empty();
}

bool OperatorSum::is_diagonal() const {
    for (const auto& t : terms_)
        if (t.x != 0) return false;
    return true;
}

Eigen::MatrixXcd OperatorSum::dense_matrix(int max_qubits) const {
    if (nqubits_ > max_qubits) throw std::invalid_argument("pauli: dense cap exceeded");
    const std::uint64_t dim = 1ull << nqubits_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<long>(dim), static_cast<long>(dim));
    for (const auto& t : terms_) {
        const cplx base = t.coeff * ipow(popcount(t.x & t.z));
        for (std::uint64_t s = 0; s < dim; ++s) {
            const int sign = popcount(t.z & s) & 1;
            m(static_cast<long>(s ^ t.x), static_cast<long>(s)) += sign ? -base : base;
        }
    }
    return m;
}

void OperatorSum::apply_accumulate(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
    const std::uint64_t dim = 1ull << nqubits_;
    if (in.size() != static_cast<long>(dim) || out.size() != static_cast<long>(dim))
        throw std::invalid_argument("pauli: statevector dimension mismatch");
    for (const auto& t : terms_) {
        const cplx base = t.coeff * ipow(popcount(t.x & t.z));
        for (std::uint64_t s = 0; s < dim; ++s) {
            const int sign = popcount(t.z & s) & 1;
            out[static_cast<long>(s ^ t.x)] += (sign ? -base : base) * in[static_cast<long>(s)];
        }
    }
}

Eigen::VectorXcd OperatorSum::apply(const Eigen::VectorXcd& in) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
    apply_accumulate(in, out);
    return out;
}

cplx OperatorSum::diagonal_element(std::uint64_t s) const {
    cplx v{0.0, 0.0};
    for (const auto& t : terms_) {
        if (t.x != 0) continue;
        const int sign = popcount(t.z & s) & 1;
        v += sign ? -t.coeff : t.coeff;
    }
    return v;
}

std::string OperatorSum::dump() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto& t : terms_) os << t.coeff.real() << " " << t.coeff.imag() << " " << t.to_string() << "\n";
    return os.str();
}

OperatorSum OperatorSum::parse(const std::string& text, int nqubits) {
    OperatorSum out(nqubits);
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double re = 0.0, im = 0.0;
        std::string s;
        if (!(ls >> re >> im >> s)) throw std::invalid_argument("pauli: malformed dump line: " + line);
        if (static_cast<int>(s.size()) != nqubits) throw std::invalid_argument("pauli: bad string length: " + line);
        PauliTerm t;
        t.nqubits = nqubits;
        t.coeff = {re, im};
        for (int q = 0; q < nqubits; ++q) {
            const char c = s[static_cast<std::size_t>(nqubits - 1 - q)];
            if (c == 'X' || c == 'Y') t.x |= 1ull << q;
            if (c == 'Z' || c == 'Y') t.z |= 1ull << q;
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                throw std::invalid_argument("pauli: bad symbol in dump line: " + line);
        }
        out.add_term(t);
    }
    return out;
}

OperatorSum multiply(const OperatorSum& a, const OperatorSum& b, double drop_tol) {
    if (a.nqubits() != b.nqubits()) throw std::invalid_argument("pauli: qubit count mismatch in multiply");
    OperatorSum out(a.nqubits());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) out.add_term(term_multiply(ta, tb));
    return out.normalized(drop_tol);
}

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b, double drop_tol) {
    return (multiply(a, b, drop_tol) - multiply(b, a, drop_tol)).normalized(drop_tol);
}

OperatorSum jw_ladder(int qubit, Ladder kind, int nqubits) {
    if (qubit < 0 || qubit >= nqubits) throw std::out_of_range("pauli: ladder qubit out of range");
    OperatorSum out(nqubits);
    const std::uint64_t m = 1ull << qubit;
    out.add_symbol_term(0.5, m, 0);
    out.add_symbol_term(kind == Ladder::Raise ? 0.5 * kI : -0.5 * kI, m, m);
    return out;
}

OperatorSum identity_op(int nqubits, cplx coeff) {
    OperatorSum out(nqubits);
    out.add_symbol_term(coeff, 0, 0);
    return out;
}

OperatorSum pauli_z(int qubit, int nqubits, cplx coeff) {
    OperatorSum out(nqubits);
    out.add_symbol_term(coeff, 0, 1ull << qubit);
    return out;
}

OperatorSum pauli_x(int qubit, int nqubits, cplx coeff) {
    OperatorSum out(nqubits);
    out.add_symbol_term(coeff, 1ull << qubit, 0);
    return out;
}

}  // namespace latticeweak
