#include <doctest.h>

#include <cmath>

#include "latticeweak/circuit.hpp"
#include "latticeweak/simulator.hpp"

using namespace latticeweak;

namespace {

Circuit sample_circuit() {
    Circuit c(3);
    c.add(Gate::h(0));
    c.add(Gate::ry(1, 0.3));
    c.add(Gate::cnot(0, 2));
    c.add(Gate::rz(2, -1.25));
    c.add(Gate::x(1));
    return c;
}

Eigen::VectorXcd run_on(const Circuit& c, int nq) {
    Statevector sv(nq);
    // Non-trivial input: rotate every qubit first.
    for (int q = 0; q < nq; ++q) sv.apply(Gate::ry(q, 0.4 + 0.3 * q));
    sv.apply(c);
    return sv.amplitudes();
}

}  // namespace

TEST_CASE("text IR round trip") {
    const Circuit c = sample_circuit();
    const Circuit d = Circuit::from_text(c.to_text());
    CHECK(d.nqubits == c.nqubits);
    REQUIRE(d.gates.size() == c.gates.size());
    CHECK((run_on(c, 3) - run_on(d, 3)).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("text IR parse errors") {
    CHECK_THROWS(Circuit::from_text("qubits 2\nBOGUS 0\n"));
    CHECK_THROWS(Circuit::from_text("CNOT 0 1\n"));            // missing header
    CHECK_THROWS(Circuit::from_text("qubits 2\nCNOT 0 5\n"));  // operand out of range
}

TEST_CASE("counts and depth metadata") {
    const Circuit c = sample_circuit();
    CHECK(c.cnot_count() == 1);
    CHECK(c.count(GateKind::H) == 1);
    CHECK(c.count(GateKind::RZ) == 1);
    CHECK(c.depth() >= 2);
}

TEST_CASE("peephole pass cancels pairs and preserves the unitary") {
    Circuit c(3);
    c.add(Gate::h(0));
    c.add(Gate::cnot(0, 1));
    c.add(Gate::rz(1, 0.5));   // commutes with CNOT target? no - blocks; keep
    c.add(Gate::cnot(0, 1));
    c.add(Gate::cnot(0, 1));   // adjacent self-inverse pair
    c.add(Gate::rz(2, 0.25));
    c.add(Gate::rz(2, -0.25));  // merges to zero and drops
    c.add(Gate::x(2));
    c.add(Gate::x(2));          // cancels
    const Circuit o = peephole_optimize(c);
    CHECK(o.gates.size() < c.gates.size());
    CHECK(o.count(GateKind::X) == 0);
    CHECK(o.cnot_count() == 1);
    CHECK((run_on(c, 3) - run_on(o, 3)).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("peephole cancels through commuting gates") {
    Circuit c(3);
    c.add(Gate::cnot(0, 1));
    c.add(Gate::rz(0, 0.7));   // acts on the control: commutes
    c.add(Gate::cnot(0, 1));   // should cancel with the first CNOT
    const Circuit o = peephole_optimize(c);
    CHECK(o.cnot_count() == 0);
    CHECK((run_on(c, 3) - run_on(o, 3)).norm() == doctest::Approx(0.0).epsilon(1e-12));
}
