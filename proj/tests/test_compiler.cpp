#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "latticeweak/compiler.hpp"
#include "latticeweak/evolution.hpp"
#include "latticeweak/simulator.hpp"

using namespace latticeweak;

namespace {

Eigen::MatrixXcd dense_gate(const Gate& g, int nq) {
    const Eigen::MatrixXcd I2 = Eigen::MatrixXcd::Identity(2, 2);
    auto kron_at = [&](const Eigen::MatrixXcd& m, int q) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
        for (int k = nq - 1; k >= 0; --k) {
            const Eigen::MatrixXcd& f = (k == q) ? m : I2;
            Eigen::MatrixXcd next(out.rows() * f.rows(), out.cols() * f.cols());
            for (int i = 0; i < out.rows(); ++i)
                for (int j = 0; j < out.cols(); ++j)
                    next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
            out = next;
        }
        return out;
    };
    switch (g.kind) {
        case GateKind::H: {
            Eigen::MatrixXcd h(2, 2);
            h << 1, 1, 1, -1;
            return kron_at(h / std::sqrt(2.0), g.q0);
        }
        case GateKind::CNOT: {
            const long dim = 1l << nq;
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
            for (long i = 0; i < dim; ++i) {
                long j = i;
                if (i & (1l << g.q0)) j ^= 1l << g.q1;
                m(j, i) = 1.0;
            }
            return m;
        }
        default: FAIL("unsupported dense gate"); return {};
    }
}

OperatorSum from_strings(const std::vector<std::pair<double, std::string>>& terms,
                         bool q0_leftmost) {
    const int nq = static_cast<int>(terms.front().second.size());
    OperatorSum op(nq);
    for (const auto& [c, s] : terms) {
        std::uint64_t x = 0, z = 0;
        for (int i = 0; i < nq; ++i) {
            const int q = q0_leftmost ? i : nq - 1 - i;
            const char ch = s[static_cast<std::size_t>(i)];
            if (ch == 'X' || ch == 'Y') x |= 1ull << q;
            if (ch == 'Z' || ch == 'Y') z |= 1ull << q;
        }
        op.add_symbol_term(c, x, z);
    }
    return op.normalized();
}

}  // namespace

TEST_CASE("symbolic Clifford conjugation matches dense") {
    const int nq = 3;
    OperatorSum op(nq);
    op.add_symbol_term({0.7, 0.0}, 0b011, 0b100);   // coeff * X0 X1 Z2
    op.add_symbol_term({-0.2, 0.0}, 0b101, 0b101);  // coeff * Y0 Y2
    op.add_symbol_term({0.4, 0.0}, 0b000, 0b011);   // coeff * Z0 Z1
    for (const Gate& g : {Gate::h(1), Gate::cnot(0, 2), Gate::cnot(2, 1), Gate::h(0)}) {
        const OperatorSum conj = conjugate_clifford(op, {g});
        const Eigen::MatrixXcd U = dense_gate(g, nq);
        const Eigen::MatrixXcd expect = U * op.dense_matrix() * U.adjoint();
        CHECK((conj.dense_matrix() - expect).norm() == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("chain basis diagonalizes every Trotter family with real coefficients") {
    const LatticeParams p = paper_l1_preset();
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    auto check_family = [](const OperatorSum& fam) {
        const std::vector<Gate> basis = diagonalizing_basis(fam);
        const OperatorSum d = conjugate_clifford(fam, basis);
        CHECK(d.is_diagonal());
        for (const auto& t : d.terms()) CHECK(std::abs(t.coeff.imag()) < 1e-12);
    };
    for (const auto& fam : beta_families(p, lay)) check_family(fam.op);
    for (const auto& fam : strong_families(p, lay))
        if (!fam.op.is_diagonal() && fam.label != "K") check_family(fam.op);
}

TEST_CASE("family exponential matches the dense matrix exponential") {
    // Toy hop: (XX + YY)/2 on two qubits with a spectator Z string.
    OperatorSum op(3);
    op.add_symbol_term(0.5, 0b101, 0b010);  // X0 Z1 X2 / 2
    op.add_symbol_term(0.5, 0b101, 0b111);  // Y0 Z1 Y2 / 2
    const double t = 0.7;
    const Circuit c = family_exponential(op, t, 3);

    const Eigen::MatrixXcd M = op.dense_matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    Eigen::VectorXcd v0(8);
    for (int i = 0; i < 8; ++i) v0(i) = std::complex<double>(std::sin(i + 1.0), std::cos(2.0 * i));
    v0.normalize();
    Eigen::VectorXcd phases(8);
    for (int i = 0; i < 8; ++i)
        phases(i) = std::exp(std::complex<double>(0.0, -es.eigenvalues()(i) * t));
    const Eigen::VectorXcd expect =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * v0;

    Statevector sv(3);
    sv.amplitudes() = v0;
    sv.apply(c);
    CHECK((sv.amplitudes() - expect).norm() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("GHZ circuits diagonalize the two eight-term XY families") {
    const auto [g, ghat] = ghz_circuits();
    {
        Statevector sv(4);
        sv.apply(g);
        // GHZ state: equal weight on |0000> and |1111>.
        CHECK(std::abs(sv.amplitudes()(0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(std::abs(sv.amplitudes()(15)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
    const OperatorSum sum1 = from_strings({{1, "XXXX"}, {1, "YYXX"}, {-1, "YXYX"},
                                           {1, "YXXY"}, {1, "XYYX"}, {-1, "XYXY"},
                                           {1, "XXYY"}, {1, "YYYY"}},
                                          false);
    const OperatorSum sum2 = from_strings({{1, "XXXX"}, {1, "YYXX"}, {1, "YXYX"},
                                           {-1, "YXXY"}, {-1, "XYYX"}, {1, "XYXY"},
                                           {1, "XXYY"}, {1, "YYYY"}},
                                          false);
    const OperatorSum diag1 = from_strings({{1, "IIIZ"}, {-1, "ZIIZ"}, {1, "ZZIZ"},
                                            {-1, "ZZZZ"}, {-1, "IZIZ"}, {1, "IZZZ"},
                                            {-1, "IIZZ"}, {1, "ZIZZ"}},
                                           false);
    const OperatorSum diag2 = from_strings({{1, "IIZI"}, {-1, "ZIZI"}, {-1, "ZZZZ"},
                                            {1, "ZZZI"}, {1, "IZZZ"}, {-1, "IZZI"},
                                            {-1, "IIZZ"}, {1, "ZIZZ"}},
                                           false);
    // Conjugation by the inverse circuit (reversed gate list): G^dag M G.
    auto rev = [](std::vector<Gate> gs) {
        std::reverse(gs.begin(), gs.end());
        return gs;
    };
    auto same = [](const OperatorSum& a, const OperatorSum& b) {
        const OperatorSum d = (a - b).normalized(1e-10);
        return d.empty();
    };
    CHECK(same(conjugate_clifford(sum1, rev(g.gates)), diag1));
    CHECK(same(conjugate_clifford(sum2, rev(ghat.gates)), diag2));
}

TEST_CASE("state preparation: 9 CNOTs, exact dressed state") {
    const LatticeParams p = paper_l1_preset();
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    const Circuit prep = state_prep_circuit(p);
    CHECK(prep.cnot_count() == 9);

    const OperatorSum H = build_full(p, lay);
    const SectorSpec sector = dynamical_sector(H, lay);
    FullOptions strong_only;
    LatticeParams p0 = p;
    p0.G = 0.0;
    const Eigen::VectorXcd dressed =
        dressed_delta_minus(build_full(p0, lay, strong_only), sector, lay);
    const Eigen::VectorXcd target = embed_full(sector, dressed);

    Statevector sv(16);
    sv.apply(prep);
    const double fidelity = std::abs(target.dot(sv.amplitudes()));
    CHECK(fidelity >= 1.0 - 1e-9);
}

TEST_CASE("preparation angles satisfy the dependency relations") {
    const AnsatzAngles a = state_prep_angles(paper_l1_preset());
    const AnsatzAngles d = derive_dependent_angles(a.theta, a.theta1, a.theta11);
    CHECK(a.theta0 == doctest::Approx(d.theta0).epsilon(1e-9));
    CHECK(a.theta01 == doctest::Approx(d.theta01).epsilon(1e-9));
    CHECK(a.theta00 == doctest::Approx(d.theta00).epsilon(1e-9));
    CHECK(a.theta == doctest::Approx(0.2256).epsilon(0.005));
}

TEST_CASE("compiled step CNOT counts (frozen)") {
    const LatticeParams p = paper_l1_preset();
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    CHECK(beta_step_circuit(p, lay, 0.5).cnot_count() == 50);
    CHECK(trotter_step_circuit(p, lay, 0.5, 1).cnot_count() == 50);
    // Strong step and two-step totals: minimal counts found under our pass
    // set; frozen here so regressions are visible.
    CHECK(strong_step_circuit(p, lay, 0.5).cnot_count() == 132);
    CHECK(trotter_step_circuit(p, lay, 1.0, 2).cnot_count() == 232);
}

TEST_CASE("compiled circuit matches operator-level Trotter evolution") {
    const LatticeParams p = paper_l1_preset();
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    const OperatorSum H = build_full(p, lay);
    const SectorSpec sector = dynamical_sector(H, lay);
    FullOptions strong_only;
    LatticeParams p0 = p;
    p0.G = 0.0;
    const Eigen::VectorXcd dressed =
        dressed_delta_minus(build_full(p0, lay, strong_only), sector, lay);

    const double t = 1.0;
    const int steps = 2;
    const TrotterEvolver te(p, lay, sector);
    const Eigen::VectorXcd ref_sector = te.evolve(dressed, t / steps, steps, true);
    Eigen::VectorXcd ref = embed_full(sector, ref_sector);
    ref.conservativeResize(1 << 17);
    ref.tail((1 << 17) - (1 << 16)).setZero();

    Statevector sv(17);
    sv.apply(state_prep_circuit(p, 17));
    sv.apply(trotter_step_circuit(p, lay, t, steps));
    CHECK(std::abs(ref.dot(sv.amplitudes())) >= 1.0 - 1e-9);
    // Ancilla disentangled and back in |0>.
    CHECK(sv.prob_bit(16, 1) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("t=0 Trotter circuit acts as the identity") {
    const LatticeParams p = paper_l1_preset();
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    Statevector a(17), b(17);
    a.apply(state_prep_circuit(p, 17));
    b.apply(state_prep_circuit(p, 17));
    b.apply(trotter_step_circuit(p, lay, 0.0, 1));
    CHECK((a.amplitudes() - b.amplitudes()).norm() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("gate count report is consistent with recounts") {
    const LatticeParams p = paper_l1_preset();
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    const GateCountReport r = gate_count_report(p, lay, 0.5, 1);
    REQUIRE(r.blocks.size() == 3);
    CHECK(r.blocks[0].name == "beta-step");
    CHECK(r.blocks[0].cnots == 50);
    CHECK(r.total_cnots == 50);
}
