#include "latticeweak/sector.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace latticeweak {

double charge_value(const OperatorSum& diag_op, std::uint64_t state) {
    const cplx v = diag_op.diagonal_element(state);
    return v.real();
}

long SectorSpec::position(std::uint64_t state) const {
    if (state >= pos_.size()) return -1;
    return pos_[state];
}

SectorSpec SectorSpec::from_charges_unchecked(int nqubits, std::vector<ChargeConstraint> charges,
                                              double tol) {
    SectorSpec s;
    s.nqubits_ = nqubits;
    for (const auto& c : charges)
        if (!c.op.is_diagonal())
            throw std::invalid_argument("sector: charge '" + c.name + "' is not diagonal");
    s.charges_ = std::move(charges);
    const std::uint64_t dim = 1ull << nqubits;
    s.pos_.assign(dim, -1);
    for (std::uint64_t st = 0; st < dim; ++st) {
        bool ok = true;
        for (const auto& c : s.charges_)
            if (std::abs(charge_value(c.op, st) - c.value) > tol) {
                ok = false;
                break;
            }
        if (ok) {
            s.pos_[st] = static_cast<long>(s.basis_.size());
            s.basis_.push_back(st);
        }
    }
    return s;
}

SectorSpec SectorSpec::build(const OperatorSum& H, std::vector<ChargeConstraint> charges, double tol) {
    for (const auto& c : charges) {
        OperatorSum comm = commutator(H, c.op);
        if (!comm.empty()) {
            const auto& t = comm.terms().front();
            throw std::invalid_argument("sector: charge '" + c.name +
                                        "' does not commute with H; leading commutator term " +
                                        t.to_string());
        }
    }
    return from_charges_unchecked(H.nqubits(), std::move(charges), tol);
}

Eigen::MatrixXcd project_to_sector(const OperatorSum& H, const SectorSpec& sector, int dense_cap) {
    const long d = static_cast<long>(sector.dim());
    if (d > dense_cap) throw std::invalid_argument("sector: dimension exceeds dense cap");
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(d, d);
    double leak = 0.0;
    std::map<std::uint64_t, cplx> leaked;  // per-column out-of-sector amplitudes
    for (long col = 0; col < d; ++col) {
        const std::uint64_t s = sector.basis()[static_cast<std::size_t>(col)];
        leaked.clear();
        for (const auto& t : H.terms()) {
            // coefficient of the symbol string in X^x Z^z form
            const int ny = std::popcount(t.x & t.z);
            cplx base = t.coeff;
            switch (((ny % 4) + 4) % 4) {
                case 1: base *= cplx(0, 1); break;
                case 2: base *= -1.0; break;
                case 3: base *= cplx(0, -1); break;
                default: break;
            }
            if (std::popcount(t.z & s) & 1) base = -base;
            const std::uint64_t s2 = s ^ t.x;
            const long row = sector.position(s2);
            if (row < 0) leaked[s2] += base;  // may cancel across terms
            else M(row, col) += base;
        }
        for (const auto& [s2, amp] : leaked) leak += std::abs(amp);
    }
    if (leak > 1e-9) throw std::runtime_error("sector: operator leaks outside the sector");
    return M;
}

Eigen::VectorXcd apply_in_sector(const OperatorSum& H, const SectorSpec& sector,
                                 const Eigen::VectorXcd& v) {
    const long d = static_cast<long>(sector.dim());
    if (v.size() != d) throw std::invalid_argument("sector: vector dimension mismatch");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d);
    for (long col = 0; col < d; ++col) {
        const std::uint64_t s = sector.basis()[static_cast<std::size_t>(col)];
        const cplx amp = v[col];
        if (amp == cplx{0.0, 0.0}) continue;
        for (const auto& t : H.terms()) {
            const int ny = std::popcount(t.x & t.z);
            cplx base = t.coeff;
            switch (((ny % 4) + 4) % 4) {
                case 1: base *= cplx(0, 1); break;
                case 2: base *= -1.0; break;
                case 3: base *= cplx(0, -1); break;
                default: break;
            }
            if (std::popcount(t.z & s) & 1) base = -base;
            const long row = sector.position(s ^ t.x);
            if (row >= 0) out[row] += base * amp;
        }
    }
    return out;
}

Eigen::VectorXcd embed_full(const SectorSpec& sector, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(1ll << sector.nqubits());
    for (std::size_t i = 0; i < sector.dim(); ++i) full[static_cast<long>(sector.basis()[i])] = v[static_cast<long>(i)];
    return full;
}

Eigen::VectorXcd restrict_to_sector(const SectorSpec& sector, const Eigen::VectorXcd& full) {
    Eigen::VectorXcd v(static_cast<long>(sector.dim()));
    for (std::size_t i = 0; i < sector.dim(); ++i) v[static_cast<long>(i)] = full[static_cast<long>(sector.basis()[i])];
    return v;
}

}  // namespace latticeweak
