#include "latticeweak/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latticeweak {

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::Reset: return "RESET";
    }
    return "?";
}

void Circuit::add(const Gate& g) {
    if (g.q0 < 0 || g.q0 >= nqubits || (g.kind == GateKind::CNOT && (g.q1 < 0 || g.q1 >= nqubits)))
        throw std::out_of_range("circuit: operand out of range");
    if (g.kind == GateKind::CNOT && g.q0 == g.q1)
        throw std::invalid_argument("circuit: CNOT operands must be distinct");
    if (!std::isfinite(g.angle)) throw std::invalid_argument("circuit: non-finite angle");
    gates.push_back(g);
}

void Circuit::append(const Circuit& other) {
    if (other.nqubits != nqubits) throw std::invalid_argument("circuit: qubit count mismatch");
    for (const auto& g : other.gates) add(g);
}

int Circuit::cnot_count() const { return count(GateKind::CNOT); }

int Circuit::count(GateKind k) const {
    return static_cast<int>(std::count_if(gates.begin(), gates.end(),
                                          [&](const Gate& g) { return g.kind == k; }));
}

int Circuit::depth() const {
    std::vector<int> level(static_cast<std::size_t>(nqubits), 0);
    int d = 0;
    for (const auto& g : gates) {
        int l = level[static_cast<std::size_t>(g.q0)];
        if (g.kind == GateKind::CNOT) l = std::max(l, level[static_cast<std::size_t>(g.q1)]);
        ++l;
        level[static_cast<std::size_t>(g.q0)] = l;
        if (g.kind == GateKind::CNOT) level[static_cast<std::size_t>(g.q1)] = l;
        d = std::max(d, l);
    }
    return d;
}

std::string Circuit::to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "qubits " << nqubits << "\n";
    for (const auto& g : gates) {
        os << gate_name(g.kind) << " " << g.q0;
        if (g.kind == GateKind::CNOT) os << " " << g.q1;
        if (g.kind == GateKind::RY || g.kind == GateKind::RZ) os << " " << g.angle;
        os << "\n";
    }
    return os.str();
}

Circuit Circuit::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    Circuit c;
    bool have_header = false;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("circuit: line " + std::to_string(lineno) + ": " + why);
        };
        if (!have_header) {
            if (tok != "qubits") fail("expected 'qubits N' header");
            if (!(ls >> c.nqubits) || c.nqubits < 1) fail("bad qubit count");
            have_header = true;
            continue;
        }
        Gate g{};
        if (tok == "H") g.kind = GateKind::H;
        else if (tok == "X") g.kind = GateKind::X;
        else if (tok == "RY") g.kind = GateKind::RY;
        else if (tok == "RZ") g.kind = GateKind::RZ;
        else if (tok == "CNOT") g.kind = GateKind::CNOT;
        else if (tok == "RESET") g.kind = GateKind::Reset;
        else fail("unknown gate '" + tok + "'");
        if (!(ls >> g.q0)) fail("missing operand");
        if (g.kind == GateKind::CNOT && !(ls >> g.q1)) fail("missing CNOT target");
        if ((g.kind == GateKind::RY || g.kind == GateKind::RZ) && !(ls >> g.angle))
            fail("missing angle");
        std::string extra;
        if (ls >> extra) fail("trailing token '" + extra + "'");
        c.add(g);
    }
    if (!have_header) throw std::invalid_argument("circuit: missing 'qubits N' header");
    return c;
}

Circuit Circuit::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("circuit: cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return from_text(os.str());
}

void Circuit::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("circuit: cannot write '" + path + "'");
    out << to_text();
}

namespace {

bool commutes(const Gate& a, const Gate& b) {
    auto involves = [](const Gate& g, int q) {
        return g.q0 == q || (g.kind == GateKind::CNOT && g.q1 == q);
    };
    // Disjoint supports always commute.
    if (!involves(a, b.q0) && (b.kind != GateKind::CNOT || !involves(a, b.q1))) return true;
    if (a.kind == GateKind::Reset || b.kind == GateKind::Reset) return false;
    if (a.kind == GateKind::CNOT && b.kind == GateKind::CNOT)
        return a.q1 != b.q0 && b.q1 != a.q0;  // shared control or shared target is fine
    auto rz_cnot = [](const Gate& rz, const Gate& cn) { return rz.q0 != cn.q1; };
    if (a.kind == GateKind::RZ && b.kind == GateKind::CNOT) return rz_cnot(a, b);
    if (b.kind == GateKind::RZ && a.kind == GateKind::CNOT) return rz_cnot(b, a);
    if (a.kind == GateKind::RZ && b.kind == GateKind::RZ) return true;
    auto x_cnot = [](const Gate& x, const Gate& cn) { return x.q0 != cn.q0; };
    if (a.kind == GateKind::X && b.kind == GateKind::CNOT) return x_cnot(a, b);
    if (b.kind == GateKind::X && a.kind == GateKind::CNOT) return x_cnot(b, a);
    if (a.kind == GateKind::X && b.kind == GateKind::X) return true;
    return false;
}

bool same_op(const Gate& a, const Gate& b) {
    return a.kind == b.kind && a.q0 == b.q0 && a.q1 == b.q1;
}

}  // namespace

Circuit peephole_optimize(const Circuit& c, double angle_eps) {
    Circuit out(c.nqubits);
    bool changed = true;
    std::vector<Gate> gates = c.gates;
    while (changed) {
        changed = false;
        std::vector<Gate> next;
        for (const auto& g : gates) {
            if ((g.kind == GateKind::RZ || g.kind == GateKind::RY) &&
                std::abs(g.angle) <= angle_eps) {
                changed = true;
                continue;
            }
            bool absorbed = false;
            for (int k = static_cast<int>(next.size()) - 1; k >= 0; --k) {
                Gate& prev = next[static_cast<std::size_t>(k)];
                if (same_op(prev, g)) {
                    if (g.kind == GateKind::RZ || g.kind == GateKind::RY) {
                        prev.angle += g.angle;
                        if (std::abs(prev.angle) <= angle_eps)
                            next.erase(next.begin() + k);
                        absorbed = true;
                        changed = true;
                        break;
                    }
                    if (g.kind != GateKind::Reset) {  // self-inverse pair
                        next.erase(next.begin() + k);
                        absorbed = true;
                        changed = true;
                        break;
                    }
                }
                if (!commutes(prev, g)) break;
            }
            if (!absorbed) next.push_back(g);
        }
        gates = std::move(next);
    }
    out.gates = std::move(gates);
    return out;
}

}  // namespace latticeweak
