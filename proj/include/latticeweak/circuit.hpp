#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace latticeweak {

enum class GateKind { H, X, RY, RZ, CNOT, Reset };

struct Gate {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;        // CNOT target; -1 otherwise
    double angle = 0.0;  // RY/RZ only

    static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
    static Gate x(int q) { return {GateKind::X, q, -1, 0.0}; }
    static Gate ry(int q, double a) { return {GateKind::RY, q, -1, a}; }
    static Gate rz(int q, double a) { return {GateKind::RZ, q, -1, a}; }
    static Gate cnot(int c, int t) { return {GateKind::CNOT, c, t, 0.0}; }
    static Gate reset(int q) { return {GateKind::Reset, q, -1, 0.0}; }
};

const char* gate_name(GateKind k);

struct Circuit {
    int nqubits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int n) : nqubits(n) {}

    void add(const Gate& g);
    void append(const Circuit& other);  // same qubit count required
    int cnot_count() const;
    int count(GateKind k) const;
    int depth() const;

    // Line-based text IR: one `GATE q0 [q1] [angle]` per line, preceded by a
    // `qubits N` declaration.  `#` starts a comment.
    std::string to_text() const;
    static Circuit from_text(const std::string& text);
    static Circuit load(const std::string& path);
    void save(const std::string& path) const;
};

// Cancel adjacent self-inverse pairs (H, X, CNOT), merge/drop RZ and RY
// rotations, using local commutation rules; exact unitary preserved.
Circuit peephole_optimize(const Circuit& c, double angle_eps = 1e-15);

}  // namespace latticeweak
