#include "latticeweak/compiler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace latticeweak {

namespace {

bool bit(std::uint64_t m, int q) { return (m >> q) & 1ull; }

}  // namespace

OperatorSum conjugate_h(const OperatorSum& op, int q) {
    OperatorSum out(op.nqubits());
    for (auto t : op.terms()) {
        const bool xq = bit(t.x, q), zq = bit(t.z, q);
        if (xq && zq) t.coeff = -t.coeff;  // Y -> -Y
        if (xq != zq) {                    // X <-> Z
            t.x ^= 1ull << q;
            t.z ^= 1ull << q;
        }
        out.add_term(t);
    }
    return out.normalized(0.0);
}

OperatorSum conjugate_cnot(const OperatorSum& op, int c, int t) {
    OperatorSum out(op.nqubits());
    for (auto term : op.terms()) {
        const bool xc = bit(term.x, c), zt = bit(term.z, t);
        const bool xt = bit(term.x, t), zc = bit(term.z, c);
        if (xc) term.x ^= 1ull << t;
        if (zt) term.z ^= 1ull << c;
        if (xc && zt && (xt == zc)) term.coeff = -term.coeff;
        out.add_term(term);
    }
    return out.normalized(0.0);
}

OperatorSum conjugate_clifford(const OperatorSum& op, const std::vector<Gate>& gates) {
    OperatorSum cur = op;
    for (const auto& g : gates) {
        switch (g.kind) {
            case GateKind::H: cur = conjugate_h(cur, g.q0); break;
            case GateKind::CNOT: cur = conjugate_cnot(cur, g.q0, g.q1); break;
            default:
                throw std::invalid_argument("compiler: conjugation supports H and CNOT only");
        }
    }
    return cur;
}

namespace {

std::vector<int> xmask_bits(const OperatorSum& family) {
    if (family.empty()) throw std::invalid_argument("compiler: empty family");
    const std::uint64_t x = family.terms().front().x;
    for (const auto& t : family.terms())
        if (t.x != x) throw std::invalid_argument("compiler: family terms have mixed X-masks");
    if (x == 0) throw std::invalid_argument("compiler: family is already diagonal");
    std::vector<int> bits;
    for (int q = 0; q < family.nqubits(); ++q)
        if (bit(x, q)) bits.push_back(q);
    return bits;
}

std::vector<Gate> chain_basis(const std::vector<int>& order) {
    std::vector<Gate> gates;
    for (int i = static_cast<int>(order.size()) - 2; i >= 0; --i)
        gates.push_back(Gate::cnot(order[static_cast<std::size_t>(i)],
                                   order[static_cast<std::size_t>(i + 1)]));
    gates.push_back(Gate::h(order.front()));
    return gates;
}

bool real_diagonal(const OperatorSum& op) {
    if (!op.is_diagonal()) return false;
    for (const auto& t : op.terms())
        if (std::abs(t.coeff.imag()) > 1e-10) return false;
    return true;
}

}  // namespace

std::vector<Gate> diagonalizing_basis(const OperatorSum& family) {
    std::vector<int> bits = xmask_bits(family);
    if (bits.size() == 1) {
        const std::vector<Gate> b = {Gate::h(bits[0])};
        if (real_diagonal(conjugate_clifford(family, b))) return b;
        throw std::runtime_error("compiler: cannot diagonalize single-qubit family");
    }
    // Primary template: CNOT chain folded down to the lowest X qubit, then H.
    {
        const std::vector<Gate> b = chain_basis(bits);
        if (real_diagonal(conjugate_clifford(family, b))) return b;
    }
    // Fallback: search chain orderings deterministically.
    std::sort(bits.begin(), bits.end());
    std::vector<int> perm = bits;
    do {
        const std::vector<Gate> b = chain_basis(perm);
        if (real_diagonal(conjugate_clifford(family, b))) return b;
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw std::runtime_error("compiler: no CNOT-chain basis diagonalizes the family");
}

namespace {

struct DiagTerm {
    std::uint64_t mask;
    double coeff;
};

// Emit exp(-i c t Z_S) gadgets for an ordered run of terms that all contain
// the target qubit, sharing one folded parity register on the target.
void emit_parity_run(Circuit& c, int target, const std::vector<DiagTerm>& run, double t) {
    std::uint64_t cur = 1ull << target;
    auto move_to = [&](std::uint64_t want) {
        std::uint64_t diff = cur ^ want;
        for (int q = 0; q < 64; ++q)
            if (bit(diff, q)) {
                if (q == target) throw std::logic_error("compiler: parity target flipped");
                c.add(Gate::cnot(q, target));
            }
        cur = want;
    };
    for (const auto& term : run) {
        move_to(term.mask);
        c.add(Gate::rz(target, 2.0 * term.coeff * t));
    }
    move_to(1ull << target);
}

// Order a group of terms (all containing `target`).  If the masks form a full
// subset lattice common ^ {subsets of U}, use reflected Gray order (optimal);
// otherwise greedy nearest-neighbour on symmetric difference.
std::vector<DiagTerm> order_group(int target, std::vector<DiagTerm> group) {
    std::uint64_t common = ~0ull, uni = 0;
    for (const auto& g : group) {
        common &= g.mask;
        uni |= g.mask;
    }
    const std::uint64_t U = uni & ~common;
    std::vector<int> ubits;
    for (int q = 0; q < 64; ++q)
        if (bit(U, q)) ubits.push_back(q);
    const std::size_t m = ubits.size();
    if (m < 20 && group.size() == (1ull << m)) {
        std::map<std::uint64_t, DiagTerm> by_mask;
        for (const auto& g : group) by_mask[g.mask] = g;
        if (by_mask.size() == group.size()) {
            std::vector<DiagTerm> out;
            bool ok = true;
            for (std::uint64_t r = 0; r < (1ull << m); ++r) {
                const std::uint64_t gray = r ^ (r >> 1);
                std::uint64_t mask = common;
                for (std::size_t j = 0; j < m; ++j)
                    if (bit(gray, static_cast<int>(j))) mask |= 1ull << ubits[j];
                auto it = by_mask.find(mask);
                if (it == by_mask.end()) {
                    ok = false;
                    break;
                }
                out.push_back(it->second);
            }
            if (ok) return out;
        }
    }
    // Greedy fallback.
    std::vector<DiagTerm> out;
    std::uint64_t cur = 1ull << target;
    std::vector<bool> used(group.size(), false);
    for (std::size_t step = 0; step < group.size(); ++step) {
        int best = -1, best_d = 1 << 30;
        for (std::size_t i = 0; i < group.size(); ++i) {
            if (used[i]) continue;
            const int d = std::popcount(cur ^ group[i].mask);
            if (d < best_d || (d == best_d && best >= 0 && group[i].mask < group[static_cast<std::size_t>(best)].mask)) {
                best = static_cast<int>(i);
                best_d = d;
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        out.push_back(group[static_cast<std::size_t>(best)]);
        cur = out.back().mask;
    }
    return out;
}

}  // namespace

void emit_diagonal_exponential(Circuit& c, const OperatorSum& diag, double t) {
    if (!diag.is_diagonal()) throw std::invalid_argument("compiler: operator is not diagonal");
    std::vector<DiagTerm> terms;
    for (const auto& tm : diag.terms()) {
        if (std::abs(tm.coeff.imag()) > 1e-10)
            throw std::invalid_argument("compiler: diagonal coefficients must be real");
        if (tm.z == 0) continue;  // identity: global phase
        if (std::abs(tm.coeff.real()) < 1e-14) continue;
        terms.push_back({tm.z, tm.coeff.real()});
    }
    while (!terms.empty()) {
        // Target: qubit present in the most remaining terms (tie: lowest).
        int target = -1, best_count = 0;
        for (int q = 0; q < diag.nqubits(); ++q) {
            int n = 0;
            for (const auto& tm : terms) n += bit(tm.mask, q);
            if (n > best_count) {
                best_count = n;
                target = q;
            }
        }
        std::vector<DiagTerm> group, rest;
        for (const auto& tm : terms)
            (bit(tm.mask, target) ? group : rest).push_back(tm);
        emit_parity_run(c, target, order_group(target, std::move(group)), t);
        terms = std::move(rest);
    }
}

Circuit family_exponential(const OperatorSum& family, double t, int nqubits_total) {
    if (nqubits_total < 0) nqubits_total = family.nqubits();
    Circuit c(nqubits_total);
    if (family.is_diagonal()) {
        emit_diagonal_exponential(c, family, t);
        return c;
    }
    const std::vector<Gate> basis = diagonalizing_basis(family);
    const OperatorSum D = conjugate_clifford(family, basis);
    for (const auto& g : basis) c.add(g);
    emit_diagonal_exponential(c, D, t);
    for (auto it = basis.rbegin(); it != basis.rend(); ++it) c.add(*it);
    return c;
}

namespace {

LeptonBasis default_lepton_basis(const LatticeParams& p) {
    return p.L == 1 ? LeptonBasis::Tilde : LeptonBasis::Standard;
}

BetaForm default_beta_form(const LatticeParams& p) {
    return p.L == 1 ? BetaForm::Valence : BetaForm::Standard;
}

// Split an X-mask-mixed hermitian operator into per-X-mask subfamilies,
// ascending in X-mask.
std::vector<OperatorSum> split_by_xmask(const OperatorSum& op) {
    std::map<std::uint64_t, OperatorSum> groups;
    for (const auto& t : op.terms()) {
        auto it = groups.find(t.x);
        if (it == groups.end()) it = groups.emplace(t.x, OperatorSum(op.nqubits())).first;
        it->second.add_term(t);
    }
    std::vector<OperatorSum> out;
    for (auto& [x, g] : groups) out.push_back(g.normalized());
    return out;
}

void emit_hops_with_ancilla(Circuit& c, const std::vector<OperatorSum>& hops, double t,
                            int ancilla) {
    std::uint64_t held = 0;  // string parity currently folded onto the ancilla
    auto move_ancilla = [&](std::uint64_t want) {
        std::uint64_t diff = held ^ want;
        for (int q = 0; q < 64; ++q)
            if (bit(diff, q)) c.add(Gate::cnot(q, ancilla));
        held = want;
    };
    for (const auto& hop : hops) {
        const std::vector<int> bits = xmask_bits(hop);
        if (bits.size() != 2) throw std::invalid_argument("compiler: hop family must be 2-local");
        const int l = bits[0], h = bits[1];
        const std::vector<Gate> basis = {Gate::cnot(l, h), Gate::h(l)};
        const OperatorSum D = conjugate_clifford(hop, basis);
        if (!real_diagonal(D) || D.size() != 2)
            throw std::runtime_error("compiler: unexpected hop diagonal");
        const PauliTerm* small = nullptr;
        const PauliTerm* big = nullptr;
        for (const auto& tm : D.terms()) (bit(tm.z, h) ? big : small) = &tm;
        if (!small || !big) throw std::runtime_error("compiler: hop diagonal structure");
        const std::uint64_t S = small->z & ~(1ull << l);
        if ((big->z & ~(1ull << h)) != small->z)
            throw std::runtime_error("compiler: hop diagonal string mismatch");
        move_ancilla(S);
        for (const auto& g : basis) c.add(g);
        if (S) c.add(Gate::cnot(ancilla, l));
        c.add(Gate::rz(l, 2.0 * small->coeff.real() * t));
        c.add(Gate::cnot(h, l));
        c.add(Gate::rz(l, 2.0 * big->coeff.real() * t));
        c.add(Gate::cnot(h, l));
        if (S) c.add(Gate::cnot(ancilla, l));
        for (auto it = basis.rbegin(); it != basis.rend(); ++it) c.add(*it);
    }
    move_ancilla(0);  // ancilla returns to |0>
}

}  // namespace

Circuit beta_step_circuit(const LatticeParams& p, const QubitLayout& layout, double t,
                          int nqubits_total) {
    if (nqubits_total < 0) nqubits_total = layout.nqubits();
    Circuit c(nqubits_total);
    for (const auto& fam : beta_families(p, layout, default_beta_form(p)))
        c.append(family_exponential(fam.op, t, nqubits_total));
    return peephole_optimize(c);
}

Circuit strong_step_circuit(const LatticeParams& p, const QubitLayout& layout, double t,
                            bool use_ancilla, int nqubits_total) {
    const int ancilla = layout.nqubits();
    if (nqubits_total < 0) nqubits_total = layout.nqubits() + (use_ancilla ? 1 : 0);
    Circuit c(nqubits_total);
    for (const auto& fam : strong_families(p, layout, default_lepton_basis(p))) {
        if (fam.label == "K") {
            const std::vector<OperatorSum> hops = split_by_xmask(fam.op);
            if (use_ancilla) {
                emit_hops_with_ancilla(c, hops, t, ancilla);
            } else {
                for (const auto& hop : hops) c.append(family_exponential(hop, t, nqubits_total));
            }
        } else if (fam.op.is_diagonal()) {
            emit_diagonal_exponential(c, fam.op, t);
        } else {
            c.append(family_exponential(fam.op, t, nqubits_total));
        }
    }
    return peephole_optimize(c);
}

Circuit trotter_step_circuit(const LatticeParams& p, const QubitLayout& layout, double t,
                             int steps, const TrotterCircuitOptions& opt) {
    if (steps < 1) throw std::invalid_argument("compiler: steps must be >= 1");
    const int nq = layout.nqubits() + (opt.use_ancilla ? 1 : 0);
    const double tau = t / steps;
    Circuit c(nq);
    for (int s = 0; s < steps; ++s) {
        if (!(opt.skip_first_strong && s == 0))
            c.append(strong_step_circuit(p, layout, tau, opt.use_ancilla, nq));
        c.append(beta_step_circuit(p, layout, tau, nq));
    }
    return opt.cancel_cnots ? peephole_optimize(c) : c;
}

AnsatzAngles state_prep_angles(const LatticeParams& p) {
    const Eigen::Vector4d a = exact_block_amplitudes(p);
    // Signed amplitudes indexed by qubit bits (b=0 <-> pair present).
    auto amp = [&](int b0, int b1, int b2) {
        const int pat = (1 - b0) | ((1 - b1) << 1) | ((1 - b2) << 2);
        return a[std::popcount(static_cast<unsigned>(pat))] * pattern_sign(pat);
    };
    auto sq = [](double v) { return v * v; };
    double n0[2], v2[2][2];
    for (int b0 = 0; b0 < 2; ++b0) {
        double s = 0;
        for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2) s += sq(amp(b0, b1, b2));
        n0[b0] = std::sqrt(s);
        for (int b1 = 0; b1 < 2; ++b1)
            v2[b0][b1] = std::sqrt(sq(amp(b0, b1, 0)) + sq(amp(b0, b1, 1)));
    }
    // Internal-node sign choice that makes the closed-form angles satisfy the
    // variational relations (verified in the test suite): flip the (1,0) node.
    v2[1][0] = -v2[1][0];

    auto ang = [](double a0, double a1) { return 2.0 * std::atan2(a0, a1); };
    AnsatzAngles r;
    r.theta = ang(n0[0], n0[1]);
    r.theta1 = (n0[0] > 1e-300) ? ang(v2[0][0] / n0[0], v2[0][1] / n0[0]) : 0.0;
    r.theta0 = (n0[1] > 1e-300) ? ang(v2[1][0] / n0[1], v2[1][1] / n0[1]) : 0.0;
    auto leaf = [&](int b0, int b1) {
        return (std::abs(v2[b0][b1]) > 1e-300)
                   ? ang(amp(b0, b1, 0) / v2[b0][b1], amp(b0, b1, 1) / v2[b0][b1])
                   : 0.0;
    };
    r.theta11 = leaf(0, 0);
    r.theta01 = leaf(0, 1);
    r.theta00 = leaf(1, 1);
    const double t01b = leaf(1, 0);
    if (std::abs(r.theta01 - t01b) > 1e-9)
        throw std::runtime_error("compiler: preparation angles are inconsistent");
    return r;
}

Circuit state_prep_circuit(const LatticeParams& p, int nqubits_total) {
    if (p.L != 1) throw std::invalid_argument("compiler: state preparation is defined at L=1");
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    if (nqubits_total < 0) nqubits_total = lay.nqubits();
    const AnsatzAngles a = state_prep_angles(p);

    Circuit c(nqubits_total);
    const int q0 = lay.index(0, Species::u, 0), q1 = lay.index(0, Species::u, 1),
              q2 = lay.index(0, Species::u, 2);
    // Level 1: rotation before the X so that a positive angle populates the
    // pair-present (|0>) branch with a positive amplitude.
    c.add(Gate::ry(q0, a.theta));
    c.add(Gate::x(q0));
    // Level 2: closed multiplexed RY on q1, controlled by q0.
    c.add(Gate::ry(q1, 0.5 * (a.theta1 + a.theta0)));
    c.add(Gate::cnot(q0, q1));
    c.add(Gate::ry(q1, 0.5 * (a.theta1 - a.theta0)));
    c.add(Gate::cnot(q0, q1));
    c.add(Gate::x(q1));
    // Level 3: uniformly controlled RY on q2 over (q1, q0), Walsh angles.
    const double th[4] = {a.theta11, a.theta01, a.theta01, a.theta00};  // index q1*2+q0
    const double w0 = (th[0] + th[1] + th[2] + th[3]) / 4;
    const double w1 = (th[0] - th[1] + th[2] - th[3]) / 4;
    const double w2 = (th[0] + th[1] - th[2] - th[3]) / 4;
    const double w3 = (th[0] - th[1] - th[2] + th[3]) / 4;
    c.add(Gate::ry(q2, w0));
    c.add(Gate::cnot(q0, q2));
    c.add(Gate::ry(q2, w1));
    c.add(Gate::cnot(q1, q2));
    c.add(Gate::ry(q2, w3));
    c.add(Gate::cnot(q0, q2));
    c.add(Gate::ry(q2, w2));
    c.add(Gate::cnot(q1, q2));
    c.add(Gate::x(q2));
    // Copy the pair occupation to the antiquark qubits (ubar = NOT u).
    for (int col = 0; col < 3; ++col) {
        const int u = lay.index(0, Species::u, col), ub = lay.index(0, Species::ubar, col);
        c.add(Gate::cnot(u, ub));
        c.add(Gate::x(ub));
    }
    // Lepton (tilde) vacuum: nu and e modes empty.
    c.add(Gate::x(lay.index(0, Species::nu)));
    c.add(Gate::x(lay.index(0, Species::e)));
    return c;
}

std::pair<Circuit, Circuit> ghz_circuits() {
    Circuit g(4), ghat(4);
    g.add(Gate::h(0));
    g.add(Gate::cnot(0, 1));
    g.add(Gate::cnot(0, 3));
    g.add(Gate::cnot(1, 2));
    ghat.add(Gate::h(1));
    ghat.add(Gate::cnot(1, 0));
    ghat.add(Gate::cnot(0, 2));
    ghat.add(Gate::cnot(1, 3));
    return {g, ghat};
}

nlohmann::json GateCountReport::to_json() const {
    nlohmann::json blocks_json = nlohmann::json::array();
    for (const auto& b : blocks)
        blocks_json.push_back({{"name", b.name}, {"cnot", b.cnots}, {"rz", b.rz}, {"h", b.h}});
    return {{"blocks", blocks_json}, {"total_cnot", total_cnots}};
}

GateCountReport gate_count_report(const LatticeParams& p, const QubitLayout& layout, double t,
                                  int steps, const TrotterCircuitOptions& opt) {
    GateCountReport r;
    const int nq = layout.nqubits() + (opt.use_ancilla ? 1 : 0);
    auto add_block = [&](const std::string& name, const Circuit& c) {
        r.blocks.push_back({name, c.cnot_count(), c.count(GateKind::RZ), c.count(GateKind::H)});
    };
    add_block("beta-step", beta_step_circuit(p, layout, t / steps, nq));
    add_block("strong-step", strong_step_circuit(p, layout, t / steps, opt.use_ancilla, nq));
    const Circuit full = trotter_step_circuit(p, layout, t, steps, opt);
    add_block("full-schedule", full);
    r.total_cnots = full.cnot_count();
    return r;
}

}  // namespace latticeweak
