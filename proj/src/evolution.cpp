#include "latticeweak/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace latticeweak {

std::uint64_t bare_delta_minus_index(const QubitLayout& layout) {
    std::uint64_t s = 0;
    for (int c = 0; c < 3; ++c) s |= 1ull << layout.index(0, Species::u, c);
    s |= 1ull << layout.index(0, Species::nu);
    s |= 1ull << layout.index(0, Species::e);
    return s;
}

SectorSpec dynamical_sector(const OperatorSum& H, const QubitLayout& layout) {
    OperatorSum Nq = op_flavor_number(layout, Species::u) + op_flavor_number(layout, Species::d);
    std::vector<ChargeConstraint> cc;
    cc.push_back({"N_u+N_d", Nq.normalized(), 3.0});
    cc.push_back({"L_lep", op_lepton_number(layout), 0.0});
    return SectorSpec::build(H, std::move(cc));
}

Eigen::VectorXcd dressed_delta_minus(const OperatorSum& H_strong, const SectorSpec& sector,
                                     const QubitLayout& layout) {
    const OperatorSum Nu = op_flavor_number(layout, Species::u);
    std::vector<long> sub;
    for (std::size_t i = 0; i < sector.dim(); ++i)
        if (std::abs(charge_value(Nu, sector.basis()[i])) < 1e-9) sub.push_back(static_cast<long>(i));
    if (sub.empty()) throw std::runtime_error("evolution: empty N_u=0 subsector");

    const Eigen::MatrixXcd M = project_to_sector(H_strong, sector, 1 << 14);
    Eigen::MatrixXcd Msub(sub.size(), sub.size());
    for (std::size_t a = 0; a < sub.size(); ++a)
        for (std::size_t b = 0; b < sub.size(); ++b) Msub(static_cast<long>(a), static_cast<long>(b)) = M(sub[a], sub[b]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Msub);
    if (es.info() != Eigen::Success) throw std::runtime_error("evolution: subsector eigensolver failed");

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<long>(sector.dim()));
    const Eigen::VectorXcd g = es.eigenvectors().col(0);
    for (std::size_t a = 0; a < sub.size(); ++a) v[sub[a]] = g[static_cast<long>(a)];
    // Fix the global phase so the bare-state amplitude is positive real.
    const long bare = sector.position(bare_delta_minus_index(layout));
    if (bare >= 0 && std::abs(v[bare]) > 1e-12) v *= std::abs(v[bare]) / v[bare];
    return v;
}

ExactEvolver::ExactEvolver(const OperatorSum& H, const SectorSpec& sector)
    : sys_(diagonalize(H, sector, 1 << 14)) {}

Eigen::VectorXcd ExactEvolver::state(const Eigen::VectorXcd& v0, double t) const {
    Eigen::VectorXcd c = sys_.vectors.adjoint() * v0;
    for (long k = 0; k < c.size(); ++k) c[k] *= std::exp(cplx(0.0, -sys_.values[k] * t));
    return sys_.vectors * c;
}

Eigen::VectorXcd evolve_krylov(const OperatorSum& H, const SectorSpec& sector,
                               const Eigen::VectorXcd& v0, double t, int krylov_dim,
                               double step_tol) {
    const double total = std::abs(t);
    if (total < 1e-15) return v0;
    const double sign = (t >= 0) ? 1.0 : -1.0;
    const int nsub = std::max(1, static_cast<int>(std::ceil(total / 0.2)));
    const double dt = total / nsub;

    Eigen::VectorXcd v = v0;
    for (int s = 0; s < nsub; ++s) {
        const double nrm0 = v.norm();
        if (nrm0 < 1e-300) return v;
        std::vector<Eigen::VectorXcd> basis;
        std::vector<double> alpha, beta;
        Eigen::VectorXcd q = v / nrm0;
        for (int j = 0; j < krylov_dim; ++j) {
            basis.push_back(q);
            Eigen::VectorXcd w = apply_in_sector(H, sector, q);
            alpha.push_back(std::real(q.dot(w)));
            for (const auto& b : basis) w -= b.dot(w) * b;
            for (const auto& b : basis) w -= b.dot(w) * b;
            const double bnorm = w.norm();
            if (bnorm < step_tol || j == krylov_dim - 1) break;
            beta.push_back(bnorm);
            q = w / bnorm;
        }
        const long m = static_cast<long>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (long k = 0; k < m; ++k) {
            T(k, k) = alpha[static_cast<std::size_t>(k)];
            if (k + 1 < m) T(k, k + 1) = T(k + 1, k) = beta[static_cast<std::size_t>(k)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(m);
        e1[0] = nrm0;
        Eigen::VectorXcd c = es.eigenvectors().transpose() * e1;
        for (long k = 0; k < m; ++k) c[k] *= std::exp(cplx(0.0, -sign * es.eigenvalues()[k] * dt));
        const Eigen::VectorXcd y = es.eigenvectors() * c;
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
        for (long k = 0; k < m; ++k) out += y[k] * basis[static_cast<std::size_t>(k)];
        v = out;
    }
    return v;
}

double decay_probability(const SectorSpec& sector, const Eigen::VectorXcd& v,
                         const QubitLayout& layout) {
    const int qe = layout.index(0, Species::e);
    double p = 0.0;
    for (std::size_t i = 0; i < sector.dim(); ++i)
        if (!((sector.basis()[i] >> qe) & 1ull)) p += std::norm(v[static_cast<long>(i)]);
    return p;
}

double linear_entropy(const SectorSpec& sector, const Eigen::VectorXcd& v,
                      const std::vector<int>& qubits) {
    if (qubits.size() > 12) throw std::invalid_argument("evolution: subsystem too large");
    const int ns = static_cast<int>(qubits.size());
    const long dim = 1l << ns;
    std::uint64_t mask = 0;
    for (int q : qubits) mask |= 1ull << q;
    auto sys_index = [&](std::uint64_t state) {
        long k = 0;
        for (int b = 0; b < ns; ++b)
            if ((state >> qubits[static_cast<std::size_t>(b)]) & 1ull) k |= 1l << b;
        return k;
    };
    std::unordered_map<std::uint64_t, std::vector<std::pair<long, cplx>>> groups;
    for (std::size_t i = 0; i < sector.dim(); ++i) {
        const std::uint64_t s = sector.basis()[i];
        groups[s & ~mask].push_back({sys_index(s), v[static_cast<long>(i)]});
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [env, members] : groups)
        for (const auto& [ka, aa] : members)
            for (const auto& [kb, ab] : members) rho(ka, kb) += aa * std::conj(ab);
    return 1.0 - rho.squaredNorm();  // Tr[rho^2] = ||rho||_F^2 for Hermitian rho
}

std::vector<int> valence_quark_qubits(const QubitLayout& layout) {
    std::vector<int> q;
    for (int c = 0; c < 3; ++c) q.push_back(layout.index(0, Species::u, c));
    for (int c = 0; c < 3; ++c) q.push_back(layout.index(0, Species::d, c));
    std::sort(q.begin(), q.end());
    return q;
}

DecayCurve exact_decay_curve(const LatticeParams& p, double t_max, double dt, bool with_entropy) {
    const QubitLayout lay(LayoutScheme::Interleaved, p.L);
    const OperatorSum H = build_full(p, lay);
    LatticeParams p0 = p;
    p0.G = 0.0;
    const OperatorSum Hs = build_full(p0, lay);
    const SectorSpec sector = dynamical_sector(H, lay);
    const Eigen::VectorXcd v0 = dressed_delta_minus(Hs, sector, lay);
    const ExactEvolver ev(H, sector);
    const std::vector<int> qq = valence_quark_qubits(lay);

    DecayCurve curve;
    const int n = static_cast<int>(std::llround(t_max / dt));
    for (int k = 0; k <= n; ++k) {
        const double t = k * dt;
        const Eigen::VectorXcd v = ev.state(v0, t);
        curve.times.push_back(t);
        curve.probability.push_back(decay_probability(sector, v, lay));
        if (with_entropy) curve.entropy.push_back(linear_entropy(sector, v, qq));
    }
    return curve;
}

// ---------------------------------------------------------------------------
// Trotter families.
// ---------------------------------------------------------------------------

namespace {

void split_diag(const OperatorSum& H, OperatorSum& diag, OperatorSum& offdiag) {
    for (const auto& t : H.terms()) {
        OperatorSum one(H.nqubits());
        one.add_symbol_term(t.coeff, t.x, t.z);
        if (t.x == 0) diag += one;
        else offdiag += one;
    }
}

// Group the off-diagonal terms of H by X-mask; each group is Hermitian.
std::map<std::uint64_t, OperatorSum> xmask_groups(const OperatorSum& H) {
    std::map<std::uint64_t, OperatorSum> groups;
    for (const auto& t : H.terms()) {
        if (t.x == 0) continue;
        auto it = groups.find(t.x);
        if (it == groups.end()) it = groups.emplace(t.x, OperatorSum(H.nqubits())).first;
        it->second.add_symbol_term(t.coeff, t.x, t.z);
    }
    for (auto& [x, op] : groups) {
        op = op.normalized();
        if (!op.is_hermitian(1e-12))
            throw std::runtime_error("evolution: X-mask family is not Hermitian");
    }
    return groups;
}

}  // namespace

std::vector<TrotterFamily> strong_families(const LatticeParams& p, const QubitLayout& layout,
                                           LeptonBasis lepton_basis) {
    const int nq = layout.nqubits();
    const OperatorSum Hq = build_h_quarks(p, layout);
    const OperatorSum Hl = build_h_leptons(p, layout, lepton_basis);
    const OperatorSum Hg = build_h_glue(p, layout);

    OperatorSum M(nq), K(nq);
    split_diag(Hq, M, K);
    split_diag(Hl, M, K);
    OperatorSum D(nq), Voff(nq);
    split_diag(Hg, D, Voff);

    std::vector<TrotterFamily> fam;
    fam.push_back({"M", M.normalized()});
    fam.push_back({"K", K.normalized()});
    fam.push_back({"D", D.normalized()});
    auto groups = xmask_groups(Voff);
    int idx = static_cast<int>(groups.size());
    for (auto it = groups.rbegin(); it != groups.rend(); ++it)
        fam.push_back({"V" + std::to_string(idx--), it->second});
    return fam;
}

std::vector<TrotterFamily> beta_families(const LatticeParams& p, const QubitLayout& layout,
                                         BetaForm form) {
    const OperatorSum Hb = build_h_beta(p, layout, form);
    std::vector<TrotterFamily> fam;
    static const char* color_names[] = {"beta_r", "beta_g", "beta_b"};
    auto groups = xmask_groups(Hb);
    int idx = 0;
    for (auto& [x, op] : groups) {
        const std::string label =
            (groups.size() == 3) ? color_names[idx] : ("beta_" + std::to_string(idx));
        fam.push_back({label, op});
        ++idx;
    }
    return fam;
}

TrotterEvolver::TrotterEvolver(const LatticeParams& p, const QubitLayout& layout,
                               const SectorSpec& sector, LeptonBasis lepton_basis,
                               BetaForm beta_form) {
    auto cache = [&](const std::vector<TrotterFamily>& fams, std::vector<CachedFamily>& out) {
        for (const auto& f : fams) {
            CachedFamily cf;
            cf.label = f.label;
            if (f.op.is_diagonal()) {
                const long d = static_cast<long>(sector.dim());
                cf.sys.values.resize(d);
                for (long i = 0; i < d; ++i)
                    cf.sys.values[i] =
                        f.op.diagonal_element(sector.basis()[static_cast<std::size_t>(i)]).real();
                // identity eigenvectors signalled by size 0
            } else {
                cf.sys = diagonalize(f.op, sector, 1 << 14);
            }
            out.push_back(std::move(cf));
        }
    };
    cache(strong_families(p, layout, lepton_basis), strong_);
    cache(beta_families(p, layout, beta_form), beta_);
}

Eigen::VectorXcd TrotterEvolver::apply_family(const CachedFamily& f, const Eigen::VectorXcd& v,
                                              double tau) const {
    if (f.sys.vectors.size() == 0) {  // diagonal family
        Eigen::VectorXcd out = v;
        for (long i = 0; i < out.size(); ++i) out[i] *= std::exp(cplx(0.0, -f.sys.values[i] * tau));
        return out;
    }
    Eigen::VectorXcd c = f.sys.vectors.adjoint() * v;
    for (long k = 0; k < c.size(); ++k) c[k] *= std::exp(cplx(0.0, -f.sys.values[k] * tau));
    return f.sys.vectors * c;
}

Eigen::VectorXcd TrotterEvolver::evolve(const Eigen::VectorXcd& v0, double tau, int steps,
                                        bool skip_first_strong) const {
    Eigen::VectorXcd v = v0;
    for (int s = 0; s < steps; ++s) {
        if (!(skip_first_strong && s == 0))
            for (const auto& f : strong_) v = apply_family(f, v, tau);
        for (const auto& f : beta_) v = apply_family(f, v, tau);
    }
    return v;
}

std::vector<double> trotter_decay_probabilities(const LatticeParams& p,
                                                const std::vector<double>& times, int steps,
                                                bool skip_first_strong) {
    const QubitLayout lay(LayoutScheme::Interleaved, p.L);
    const OperatorSum H = build_full(p, lay);
    LatticeParams p0 = p;
    p0.G = 0.0;
    const SectorSpec sector = dynamical_sector(H, lay);
    const Eigen::VectorXcd v0 = dressed_delta_minus(build_full(p0, lay), sector, lay);
    const TrotterEvolver ev(p, lay, sector);
    std::vector<double> out;
    for (double t : times) {
        const Eigen::VectorXcd v = ev.evolve(v0, t / steps, steps, skip_first_strong);
        out.push_back(decay_probability(sector, v, lay));
    }
    return out;
}

std::vector<double> two_factor_trotter_decay(const LatticeParams& p,
                                             const std::vector<double>& times, int steps) {
    if (steps < 1) throw std::invalid_argument("evolution: steps must be >= 1");
    const QubitLayout lay(LayoutScheme::Interleaved, p.L);
    const OperatorSum H = build_full(p, lay);
    LatticeParams p0 = p;
    p0.G = 0.0;
    const OperatorSum Hs = build_full(p0, lay);
    const OperatorSum Hb = (H - Hs).normalized();
    const SectorSpec sector = dynamical_sector(H, lay);
    const Eigen::VectorXcd v0 = dressed_delta_minus(Hs, sector, lay);
    const ExactEvolver evs(Hs, sector), evb(Hb, sector);
    std::vector<double> out;
    for (double t : times) {
        const double tau = t / steps;
        Eigen::VectorXcd v = v0;
        for (int s = 0; s < steps; ++s) v = evb.state(evs.state(v, tau), tau);
        out.push_back(decay_probability(sector, v, lay));
    }
    return out;
}

std::vector<double> dft_magnitudes(const std::vector<double>& samples) {
    const int n = static_cast<int>(samples.size());
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= std::max(1, n);
    std::vector<double> mags;
    for (int k = 0; k <= n / 2; ++k) {
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j)
            acc += (samples[static_cast<std::size_t>(j)] - mean) *
                   std::exp(cplx(0.0, -2.0 * M_PI * k * j / n));
        mags.push_back(std::abs(acc));
    }
    return mags;
}

std::pair<double, double> dominant_frequencies(const std::vector<double>& samples, double dt) {
    const auto mags = dft_magnitudes(samples);
    const int n = static_cast<int>(samples.size());
    // Local maxima of the magnitude spectrum, excluding DC.
    std::vector<std::pair<double, double>> peaks;  // (magnitude, refined freq)
    for (std::size_t k = 1; k + 1 < mags.size(); ++k) {
        if (mags[k] >= mags[k - 1] && mags[k] >= mags[k + 1]) {
            // Parabolic interpolation of the peak bin.
            const double a = mags[k - 1], b = mags[k], c = mags[k + 1];
            const double den = a - 2 * b + c;
            const double delta = (std::abs(den) > 1e-300) ? 0.5 * (a - c) / den : 0.0;
            const double freq = 2.0 * M_PI * (static_cast<double>(k) + delta) / (n * dt);
            peaks.push_back({b, freq});
        }
    }
    if (peaks.size() < 2) throw std::runtime_error("evolution: fewer than two spectral peaks");
    std::sort(peaks.begin(), peaks.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });
    const double f1 = peaks[0].second, f2 = peaks[1].second;
    return {std::min(f1, f2), std::max(f1, f2)};
}

}  // namespace latticeweak
