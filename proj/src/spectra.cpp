#include "latticeweak/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace latticeweak {

EigenSystem diagonalize(const OperatorSum& H, const SectorSpec& sector, int dense_cap) {
    const Eigen::MatrixXcd M = project_to_sector(H, sector, dense_cap);
    const double herm = (M - M.adjoint()).norm();
    if (herm > 1e-10 * std::max(1.0, M.norm()))
        throw std::runtime_error("spectra: projected matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectra: eigensolver failed");
    EigenSystem sys{es.eigenvalues(), es.eigenvectors()};
    const double scale = std::max(1.0, M.norm());
    for (long k = 0; k < sys.values.size(); ++k) {
        const double res = (M * sys.vectors.col(k) - sys.values[k] * sys.vectors.col(k)).norm();
        if (res > 1e-9 * scale)
            throw std::runtime_error("spectra: eigenpair residual check failed");
    }
    return sys;
}

double lowest_eigenvalue(const OperatorSum& H, const SectorSpec& sector, int max_iter, double tol) {
    const long d = static_cast<long>(sector.dim());
    if (d == 0) throw std::invalid_argument("spectra: empty sector");
    if (d == 1) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
        return apply_in_sector(H, sector, v)[0].real();
    }
    // Lanczos with full reorthogonalization against the stored basis.
    std::mt19937_64 gen(12345);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::VectorXcd v(d);
    for (long i = 0; i < d; ++i) v[i] = cplx(nd(gen), nd(gen));
    v.normalize();

    std::vector<Eigen::VectorXcd> basis;
    std::vector<double> alpha, beta;
    double prev = 0.0;
    for (int it = 0; it < max_iter && it < d; ++it) {
        basis.push_back(v);
        Eigen::VectorXcd w = apply_in_sector(H, sector, v);
        alpha.push_back(std::real(v.dot(w)));
        for (const auto& b : basis) w -= b.dot(w) * b;
        for (const auto& b : basis) w -= b.dot(w) * b;  // second pass for stability
        const double b = w.norm();

        const long m = static_cast<long>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (long k = 0; k < m; ++k) {
            T(k, k) = alpha[static_cast<std::size_t>(k)];
            if (k + 1 < m) T(k, k + 1) = T(k + 1, k) = beta[static_cast<std::size_t>(k)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        const double e0 = es.eigenvalues()[0];
        if (it > 2 && std::abs(e0 - prev) < tol) return e0;
        prev = e0;
        if (b < 1e-13) return e0;  // invariant subspace exhausted
        beta.push_back(b);
        v = w / b;
    }
    return prev;
}

namespace {

SectorSpec baryon_lepton_sector(const OperatorSum& H, const QubitLayout& lay, int n_u, int n_d,
                                int lepton_pairs) {
    // Lepton content in the diagonalized (tilde) single-particle basis:
    // pairs fill (e, nubar) first, then (nu, ebar).
    double z_nu = -1.0, z_e = -1.0, z_nubar = 1.0, z_ebar = 1.0;
    if (lepton_pairs >= 1) { z_e = 1.0; z_nubar = -1.0; }
    if (lepton_pairs >= 2) { z_nu = 1.0; z_ebar = -1.0; }
    std::vector<ChargeConstraint> cc;
    cc.push_back({"N_u", op_flavor_number(lay, Species::u), static_cast<double>(n_u)});
    cc.push_back({"N_d", op_flavor_number(lay, Species::d), static_cast<double>(n_d)});
    cc.push_back({"Z_nu", op_mode_z(lay, 0, Species::nu), z_nu});
    cc.push_back({"Z_e", op_mode_z(lay, 0, Species::e), z_e});
    cc.push_back({"Z_nubar", op_mode_z(lay, 0, Species::nubar), z_nubar});
    cc.push_back({"Z_ebar", op_mode_z(lay, 0, Species::ebar), z_ebar});
    return SectorSpec::build(H, std::move(cc));
}

}  // namespace

SpectrumTable spectrum_table(const LatticeParams& p) {
    if (p.L != 1)
        throw std::invalid_argument("spectrum_table: labeled baryon table is defined at L=1");
    LatticeParams p0 = p;
    p0.G = 0.0;  // baryon/lepton labels are exact only for the decoupled theory
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    FullOptions opt;
    opt.lepton_basis = LeptonBasis::Tilde;
    const OperatorSum H = build_full(p0, lay, opt);

    auto e0 = [&](int nu, int ndn, int pairs) {
        const SectorSpec s = baryon_lepton_sector(H, lay, nu, ndn, pairs);
        return diagonalize(H, s).values[0];
    };

    const double vac = e0(0, 0, 0);
    SpectrumTable table;
    struct Entry { const char* label; int nu, nd, pairs; };
    const Entry entries[] = {
        {"Delta++", 3, 0, 0},      {"Delta++ +2l", 3, 0, 1}, {"Delta+", 2, 1, 0},
        {"Delta++ +4l", 3, 0, 2},  {"Delta+ +2l", 2, 1, 1},  {"Delta0", 1, 2, 0},
        {"Delta+ +4l", 2, 1, 2},   {"Delta0 +2l", 1, 2, 1},  {"Delta-", 0, 3, 0},
    };
    for (const auto& en : entries)
        table.push_back({en.label, e0(en.nu, en.nd, en.pairs) - vac});
    std::sort(table.begin(), table.end(),
              [](const SpectrumRow& a, const SpectrumRow& b) { return a.gap < b.gap; });
    return table;
}

}  // namespace latticeweak
