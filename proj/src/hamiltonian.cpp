#include "latticeweak/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace latticeweak {

namespace {

// Kogut-Susskind mode ordering per flavor chain: even modes are particle
// sites, odd modes are antiparticle sites.
int quark_mode(const QubitLayout& lay, char flavor, int n, int color) {
    const int site = n / 2;
    Species sp;
    if (flavor == 'u') sp = (n % 2 == 0) ? Species::u : Species::ubar;
    else sp = (n % 2 == 0) ? Species::d : Species::dbar;
    return lay.index(site, sp, color);
}

int lepton_mode(const QubitLayout& lay, char flavor, int n) {
    const int site = n / 2;
    Species sp;
    if (flavor == 'e') sp = (n % 2 == 0) ? Species::e : Species::ebar;
    else sp = (n % 2 == 0) ? Species::nu : Species::nubar;
    return lay.index(site, sp);
}

// sigma^{+/-} on `q` with an explicit Z string on qubits [a, b) (used for the
// displayed short-string forms of the L=1 tilde operator).
OperatorSum sigma_with_string(int q, Ladder kind, int str_lo, int str_hi, int nq) {
    OperatorSum s = jw_ladder(q, kind, nq);
    std::uint64_t zmask = 0;
    for (int k = str_lo; k < str_hi; ++k) zmask |= 1ull << k;
    OperatorSum zs(nq);
    zs.add_symbol_term(1.0, 0, zmask);
    return multiply(s, zs);
}

}  // namespace

TildeCoefficients tilde_coefficients(double m_e, double m_nu) {
    TildeCoefficients t;
    t.lambda_e = 0.5 * std::sqrt(1.0 + 4.0 * m_e * m_e);
    t.lambda_nu = 0.5 * std::sqrt(1.0 + 4.0 * m_nu * m_nu);
    t.c_e = t.lambda_e - m_e;
    t.c_nu = m_nu + t.lambda_nu;
    const double den = std::sqrt((1.0 - 4.0 * m_e * t.c_e) * (1.0 + 4.0 * m_nu * t.c_nu));
    t.coeff_same = (t.c_e + t.c_nu) / den;
    t.coeff_cross = (1.0 + 4.0 * t.c_e * t.c_nu) / (2.0 * den);
    return t;
}

OperatorSum jw_annihilate(int mode_qubit, int nqubits) {
    OperatorSum s = jw_ladder(mode_qubit, Ladder::Lower, nqubits);
    std::uint64_t zmask = (mode_qubit == 0) ? 0 : ((1ull << mode_qubit) - 1);
    OperatorSum zs(nqubits);
    zs.add_symbol_term(1.0, 0, zmask);
    return multiply(zs, s);
}

OperatorSum jw_create(int mode_qubit, int nqubits) {
    OperatorSum s = jw_ladder(mode_qubit, Ladder::Raise, nqubits);
    std::uint64_t zmask = (mode_qubit == 0) ? 0 : ((1ull << mode_qubit) - 1);
    OperatorSum zs(nqubits);
    zs.add_symbol_term(1.0, 0, zmask);
    return multiply(zs, s);
}

OperatorSum jw_bilinear(int i, int j, int nqubits) {
    return multiply(jw_create(i, nqubits), jw_annihilate(j, nqubits));
}

OperatorSum build_h_quarks(const LatticeParams& p, const QubitLayout& layout) {
    p.validate();
    const int nq = layout.nqubits();
    OperatorSum H(nq);
    const std::pair<char, double> flavors[] = {{'u', p.m_u}, {'d', p.m_d}};
    for (const auto& [f, m] : flavors) {
        for (int c = 0; c < 3; ++c) {
            for (int n = 0; n < 2 * p.L - 1; ++n) {
                const int a = quark_mode(layout, f, n, c);
                const int b = quark_mode(layout, f, n + 1, c);
                H += 0.5 * (jw_bilinear(a, b, nq) + jw_bilinear(b, a, nq));
            }
            for (int n = 0; n < 2 * p.L; ++n) {
                const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
                const int j = quark_mode(layout, f, n, c);
                H += (m * sgn) * jw_bilinear(j, j, nq);
            }
            // "+2" constant: each (site, flavor, color) contributes +m.
            H += identity_op(nq, m * p.L);
        }
    }
    return H.normalized();
}

OperatorSum build_h_leptons(const LatticeParams& p, const QubitLayout& layout, LeptonBasis basis) {
    p.validate();
    const int nq = layout.nqubits();
    if (basis == LeptonBasis::Tilde) {
        if (p.L != 1)
            throw std::invalid_argument(
                "hamiltonians: tilde lepton basis is only supported at L=1 "
                "(nonlocal O(L^2) scaling otherwise)");
        const TildeCoefficients t = tilde_coefficients(p.m_e, p.m_nu);
        OperatorSum H(nq);
        H += pauli_z(layout.index(0, Species::nu), nq, 0.5 * t.lambda_nu);
        H += pauli_z(layout.index(0, Species::nubar), nq, -0.5 * t.lambda_nu);
        H += pauli_z(layout.index(0, Species::e), nq, 0.5 * t.lambda_e);
        H += pauli_z(layout.index(0, Species::ebar), nq, -0.5 * t.lambda_e);
        return H.normalized();
    }
    OperatorSum H(nq);
    const std::pair<char, double> flavors[] = {{'e', p.m_e}, {'n', p.m_nu}};
    for (const auto& [f, m] : flavors) {
        for (int n = 0; n < 2 * p.L - 1; ++n) {
            const int a = lepton_mode(layout, f, n);
            const int b = lepton_mode(layout, f, n + 1);
            H += 0.5 * (jw_bilinear(a, b, nq) + jw_bilinear(b, a, nq));
        }
        for (int n = 0; n < 2 * p.L; ++n) {
            const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
            const int j = lepton_mode(layout, f, n);
            H += (m * sgn) * jw_bilinear(j, j, nq);
        }
        H += identity_op(nq, m * p.L);
    }
    return H.normalized();
}

OperatorSum build_h_glue(const LatticeParams& p, const QubitLayout& layout) {
    p.validate();
    const int nq = layout.nqubits();
    if (p.g == 0.0) return OperatorSum(nq);

    // Q_n^(a) Q_m^(a) summed over the adjoint index, via the Fierz identity:
    //   Q_n . Q_m = 1/2 sum_{c,c'} b(n: c->c') b(m: c'->c) - 1/6 N_n N_m
    // with b the color bilinears of one flavor block at a half-site.
    auto QQ = [&](int n, char f, int m, char f2) {
        OperatorSum A(nq);
        for (int c = 0; c < 3; ++c)
            for (int c2 = 0; c2 < 3; ++c2)
                A += multiply(jw_bilinear(quark_mode(layout, f, n, c), quark_mode(layout, f, n, c2), nq),
                              jw_bilinear(quark_mode(layout, f2, m, c2), quark_mode(layout, f2, m, c), nq));
        A *= 0.5;
        OperatorSum Nn(nq), Nm(nq);
        for (int c = 0; c < 3; ++c) {
            Nn += jw_bilinear(quark_mode(layout, f, n, c), quark_mode(layout, f, n, c), nq);
            Nm += jw_bilinear(quark_mode(layout, f2, m, c), quark_mode(layout, f2, m, c), nq);
        }
        A -= (1.0 / 6.0) * multiply(Nn, Nm);
        return A.normalized();
    };

    OperatorSum H(nq);
    const double g2 = p.g * p.g;
    for (int n = 0; n <= 2 * p.L - 2; ++n) {
        const double w = 2 * p.L - 1 - n;
        OperatorSum blk = QQ(n, 'u', n, 'u') + QQ(n, 'd', n, 'd') + 2.0 * QQ(n, 'u', n, 'd');
        H += (0.5 * g2 * w) * blk;
    }
    for (int n = 0; n <= 2 * p.L - 3; ++n)
        for (int m = n + 1; m <= 2 * p.L - 2; ++m) {
            const double w = 2 * p.L - 1 - m;
            for (char f : {'u', 'd'})
                for (char f2 : {'u', 'd'}) H += (g2 * w) * QQ(n, f, m, f2);
        }
    return H.normalized();
}

OperatorSum build_h_beta(const LatticeParams& p, const QubitLayout& layout, BetaForm form) {
    p.validate();
    const int nq = layout.nqubits();
    if (p.G == 0.0) return OperatorSum(nq);
    const double c0 = p.G / std::sqrt(2.0);

    if (form == BetaForm::Standard || form == BetaForm::Grouped) {
        if (form == BetaForm::Grouped && layout.scheme() != LayoutScheme::GroupedLeptons)
            throw std::invalid_argument("hamiltonians: grouped beta form requires the grouped layout");
        OperatorSum H(nq);
        for (int l = 0; l < p.L; ++l) {
            for (int c = 0; c < 3; ++c) {
                OperatorSum qA = jw_bilinear(quark_mode(layout, 'u', 2 * l, c), quark_mode(layout, 'd', 2 * l, c), nq) +
                                 jw_bilinear(quark_mode(layout, 'u', 2 * l + 1, c), quark_mode(layout, 'd', 2 * l + 1, c), nq);
                OperatorSum qB = jw_bilinear(quark_mode(layout, 'u', 2 * l, c), quark_mode(layout, 'd', 2 * l + 1, c), nq) +
                                 jw_bilinear(quark_mode(layout, 'u', 2 * l + 1, c), quark_mode(layout, 'd', 2 * l, c), nq);
                OperatorSum lA = multiply(jw_create(lepton_mode(layout, 'e', 2 * l), nq),
                                          jw_annihilate(lepton_mode(layout, 'n', 2 * l + 1), nq)) -
                                 multiply(jw_create(lepton_mode(layout, 'e', 2 * l + 1), nq),
                                          jw_annihilate(lepton_mode(layout, 'n', 2 * l), nq));
                OperatorSum lB = multiply(jw_create(lepton_mode(layout, 'e', 2 * l), nq),
                                          jw_annihilate(lepton_mode(layout, 'n', 2 * l), nq)) -
                                 multiply(jw_create(lepton_mode(layout, 'e', 2 * l + 1), nq),
                                          jw_annihilate(lepton_mode(layout, 'n', 2 * l + 1), nq));
                H += c0 * (multiply(qA, lA) + multiply(qB, lB));
            }
        }
        return (H + H.dagger()).normalized();
    }

    if (p.L != 1) throw std::invalid_argument("hamiltonians: tilde/valence beta forms require L=1");

    // Lepton factor sigma^-_nubar sigma^+_e (creates the e nubar pair out of
    // the tilde vacuum); the two qubits are JW-adjacent so no string appears.
    OperatorSum lep = multiply(jw_ladder(layout.index(0, Species::nubar), Ladder::Lower, nq),
                               jw_ladder(layout.index(0, Species::e), Ladder::Raise, nq));

    OperatorSum Hq(nq);
    for (int c = 0; c < 3; ++c) {
        const int qu = layout.index(0, Species::u, c);
        const int qd = layout.index(0, Species::d, c);
        const int qub = layout.index(0, Species::ubar, c);
        const int qdb = layout.index(0, Species::dbar, c);
        // One quark bilinear a <- string -> b in a single direction.
        auto bil = [&](int a, Ladder ka, int b, Ladder kb) {
            return multiply(sigma_with_string(a, ka, b + 1, a, nq), jw_ladder(b, kb, nq));
        };
        // Both directions, as printed in the tilde operator.
        auto bil_both = [&](int a, int b) {
            return bil(a, Ladder::Lower, b, Ladder::Raise) + bil(a, Ladder::Raise, b, Ladder::Lower);
        };
        if (form == BetaForm::Valence) {
            Hq += bil(qd, Ladder::Lower, qu, Ladder::Raise);
            continue;
        }
        const TildeCoefficients t = tilde_coefficients(p.m_e, p.m_nu);
        Hq += t.coeff_same * (bil_both(qd, qu) + bil_both(qdb, qub));
        Hq -= t.coeff_cross * (bil_both(qdb, qu) + bil_both(qub, qd));
    }
    OperatorSum H = c0 * multiply(lep, Hq);
    return (H + H.dagger()).normalized();
}

OperatorSum build_h_majorana(const LatticeParams& p, const QubitLayout& layout) {
    p.validate();
    const int nq = layout.nqubits();
    if (p.m_M == 0.0) return OperatorSum(nq);
    OperatorSum H(nq);
    for (int l = 0; l < p.L; ++l) {
        const int a = layout.index(l, Species::nu);
        const int b = layout.index(l, Species::nubar);
        H += (0.5 * p.m_M) * multiply(jw_annihilate(a, nq), jw_annihilate(b, nq));
    }
    return (H + H.dagger()).normalized();
}

OperatorSum build_full(const LatticeParams& p, const QubitLayout& layout, const FullOptions& opt) {
    OperatorSum H = build_h_quarks(p, layout);
    H += build_h_leptons(p, layout, opt.lepton_basis);
    H += build_h_glue(p, layout);
    H += build_h_beta(p, layout, opt.beta_form);
    if (opt.include_majorana) H += build_h_majorana(p, layout);
    return H.normalized();
}

OperatorSum op_flavor_number(const QubitLayout& layout, Species flavor) {
    if (flavor != Species::u && flavor != Species::d)
        throw std::invalid_argument("hamiltonians: flavor number is defined for u or d");
    const int nq = layout.nqubits();
    const Species anti = (flavor == Species::u) ? Species::ubar : Species::dbar;
    OperatorSum N(nq);
    for (int l = 0; l < layout.L(); ++l)
        for (int c = 0; c < 3; ++c) {
            N += pauli_z(layout.index(l, flavor, c), nq, 0.5);
            N += pauli_z(layout.index(l, anti, c), nq, 0.5);
        }
    return N.normalized();
}

OperatorSum op_baryon_number(const QubitLayout& layout) {
    OperatorSum B = op_flavor_number(layout, Species::u) + op_flavor_number(layout, Species::d);
    B *= 1.0 / 3.0;
    return B.normalized();
}

OperatorSum op_lepton_number(const QubitLayout& layout) {
    const int nq = layout.nqubits();
    OperatorSum Lp(nq);
    for (int l = 0; l < layout.L(); ++l)
        for (Species sp : {Species::nu, Species::e, Species::nubar, Species::ebar})
            Lp += pauli_z(layout.index(l, sp), nq, 0.5);
    return Lp.normalized();
}

OperatorSum op_total_z(const QubitLayout& layout) {
    const int nq = layout.nqubits();
    OperatorSum S(nq);
    for (int q = 0; q < nq; ++q) S += pauli_z(q, nq, 1.0);
    return S.normalized();
}

OperatorSum op_mode_z(const QubitLayout& layout, int site, Species sp, int color) {
    return pauli_z(layout.index(site, sp, color), layout.nqubits(), 1.0);
}

}  // namespace latticeweak
