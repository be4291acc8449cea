#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "latticeweak/hamiltonian.hpp"

using namespace latticeweak;

namespace {

const LatticeParams kPreset = paper_l1_preset();
const QubitLayout kLay(LayoutScheme::Interleaved, 1);

double coeff_of(const OperatorSum& op, std::uint64_t x, std::uint64_t z) {
    for (const auto& t : op.terms())
        if (t.x == x && t.z == z) return t.coeff.real();
    return 0.0;
}

double coeff_norm(const OperatorSum& op) {
    double s = 0.0;
    for (const auto& t : op.normalized().terms()) s += std::norm(t.coeff);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("every builder produces a Hermitian operator") {
    CHECK(build_h_quarks(kPreset, kLay).is_hermitian());
    CHECK(build_h_leptons(kPreset, kLay, LeptonBasis::Standard).is_hermitian());
    CHECK(build_h_leptons(kPreset, kLay, LeptonBasis::Tilde).is_hermitian());
    CHECK(build_h_glue(kPreset, kLay).is_hermitian());
    CHECK(build_h_beta(kPreset, kLay, BetaForm::Standard).is_hermitian());
    CHECK(build_h_beta(kPreset, kLay, BetaForm::Tilde).is_hermitian());
    CHECK(build_h_beta(kPreset, kLay, BetaForm::Valence).is_hermitian());
    CHECK(build_full(kPreset, kLay).is_hermitian());
}

TEST_CASE("quark Hamiltonian golden coefficients") {
    const OperatorSum hq = build_h_quarks(kPreset, kLay);
    // Masses: m/2 on each particle Z, -m/2 on each antiparticle Z.
    CHECK(coeff_of(hq, 0, 1ull << 0) == doctest::Approx(0.45));   // u, color r
    CHECK(coeff_of(hq, 0, 1ull << 3) == doctest::Approx(1.05));   // d, color r
    CHECK(coeff_of(hq, 0, 1ull << 6) == doctest::Approx(-0.45));  // ubar, color r
    CHECK(coeff_of(hq, 0, 0) == doctest::Approx(9.0));            // constant offset
    // Hop u(color r) <-> ubar(color r): -(XZ..ZX + YZ..ZY)/4.
    const std::uint64_t hop_x = (1ull << 0) | (1ull << 6);
    const std::uint64_t zstr = 0b0111110ull;
    CHECK(coeff_of(hq, hop_x, zstr & ~hop_x) == doctest::Approx(-0.25));
    CHECK(coeff_of(hq, hop_x, (zstr & ~hop_x) | hop_x) == doctest::Approx(-0.25));
}

TEST_CASE("tilde lepton Hamiltonian is the diagonal single-particle form") {
    const OperatorSum hl = build_h_leptons(kPreset, kLay, LeptonBasis::Tilde);
    CHECK(hl.is_diagonal());
    CHECK(coeff_of(hl, 0, 1ull << 12) == doctest::Approx(0.25));
    CHECK(coeff_of(hl, 0, 1ull << 13) == doctest::Approx(0.25));
    CHECK(coeff_of(hl, 0, 1ull << 14) == doctest::Approx(-0.25));
    CHECK(coeff_of(hl, 0, 1ull << 15) == doctest::Approx(-0.25));
    const TildeCoefficients tc = tilde_coefficients(0.0, 0.0);
    CHECK(tc.lambda_e == doctest::Approx(0.5));
    CHECK(tc.coeff_same == doctest::Approx(1.0));
    CHECK(tc.coeff_cross == doctest::Approx(1.0));
}

TEST_CASE("standard and tilde lepton Hamiltonians are isospectral") {
    // Both act on the 4 lepton qubits only; compare 16x16 spectra.
    auto lepton_matrix = [&](LeptonBasis b) {
        const OperatorSum hl = build_h_leptons(kPreset, kLay, b);
        OperatorSum shifted(4);
        for (const auto& t : hl.terms()) {
            CHECK((t.x >> 12 << 12) == t.x);  // support on qubits 12..15 or identity
            CHECK((t.z >> 12 << 12) == t.z);
            shifted.add_symbol_term(t.coeff, t.x >> 12, t.z >> 12);
        }
        return shifted.dense_matrix();
    };
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(lepton_matrix(LeptonBasis::Standard));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> et(lepton_matrix(LeptonBasis::Tilde));
    CHECK((es.eigenvalues() - et.eigenvalues()).cwiseAbs().maxCoeff() ==
          doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("valence beta operator structure") {
    const OperatorSum hb = build_h_beta(kPreset, kLay, BetaForm::Valence);
    CHECK(hb.size() == 24);  // 3 colors x 8 Pauli strings
    for (const auto& t : hb.terms())
        CHECK(std::abs(std::abs(t.coeff.real()) - kPreset.G * std::sqrt(2.0) / 16.0) < 1e-12);
    // G scales linearly.
    LatticeParams p2 = kPreset;
    p2.G = 1.0;
    const OperatorSum hb2 = build_h_beta(p2, kLay, BetaForm::Valence);
    CHECK(coeff_norm(hb2) == doctest::Approx(2.0 * coeff_norm(hb)));
}

TEST_CASE("full Hamiltonian conserves baryon and lepton number") {
    const OperatorSum H = build_full(kPreset, kLay);
    CHECK(commutator(H, op_baryon_number(kLay)).empty());
    CHECK(commutator(H, op_lepton_number(kLay)).empty());
    // Strong piece additionally conserves each flavor number.
    LatticeParams p0 = kPreset;
    p0.G = 0.0;
    const OperatorSum Hs = build_full(p0, kLay);
    CHECK(commutator(Hs, op_flavor_number(kLay, Species::u)).empty());
    CHECK(commutator(Hs, op_flavor_number(kLay, Species::d)).empty());
}

TEST_CASE("glue term count and coupling scaling") {
    const OperatorSum hg = build_h_glue(kPreset, kLay);
    CHECK(hg.size() == 40);
    LatticeParams p2 = kPreset;
    p2.g = 2.0 * kPreset.g;
    const OperatorSum hg2 = build_h_glue(p2, kLay);
    CHECK(coeff_norm(hg2) == doctest::Approx(4.0 * coeff_norm(hg)));
}

TEST_CASE("grouped layout coincides with interleaved at L=1") {
    const QubitLayout grouped(LayoutScheme::GroupedLeptons, 1);
    const OperatorSum a = build_full(kPreset, kLay).normalized();
    const OperatorSum b = build_full(kPreset, grouped).normalized();
    CHECK((a - b).normalized(1e-12).empty());
}

TEST_CASE("parameter JSON round trip rejects unknown keys") {
    const LatticeParams p = paper_l1_preset();
    const LatticeParams q = params_from_json(params_to_json(p));
    CHECK(q.m_u == doctest::Approx(p.m_u));
    CHECK(q.G == doctest::Approx(p.G));
    auto j = params_to_json(p);
    j["bogus"] = 1;
    CHECK_THROWS(params_from_json(j));
}
