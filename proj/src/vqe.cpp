#include "latticeweak/vqe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace latticeweak {

namespace {

double asin_checked(double x, const char* what) {
    if (std::abs(x) > 1.0 + 1e-12)
        throw std::domain_error(std::string("vqe: angle relation out of domain in ") + what);
    return std::asin(std::clamp(x, -1.0, 1.0));
}

}  // namespace

AnsatzAngles derive_dependent_angles(double theta, double theta1, double theta11) {
    AnsatzAngles a;
    a.theta = theta;
    a.theta1 = theta1;
    a.theta11 = theta11;
    a.theta0 = -2.0 * asin_checked(std::tan(theta / 2) * std::cos(theta1 / 2), "theta0");
    a.theta01 = -2.0 * asin_checked(std::cos(theta11 / 2) * std::tan(theta1 / 2), "theta01");
    a.theta00 = -2.0 * asin_checked(std::tan(a.theta0 / 2) * std::cos(a.theta01 / 2), "theta00");
    return a;
}

int pattern_sign(int pattern) {
    int csum = 0, k = 0;
    for (int c = 0; c < 3; ++c)
        if (pattern & (1 << c)) {
            csum += c;
            ++k;
        }
    return ((csum + k * (k - 1) / 2) % 2 == 0) ? 1 : -1;
}

Eigen::MatrixXd delta_minus_block(const LatticeParams& p, const QubitLayout& layout) {
    LatticeParams p0 = p;
    p0.G = 0.0;
    const OperatorSum H = build_full(p0, layout);

    const std::uint64_t bare = ([&] {
        std::uint64_t s = 0;
        for (int c = 0; c < 3; ++c) s |= 1ull << layout.index(0, Species::u, c);
        s |= 1ull << layout.index(0, Species::nu);
        s |= 1ull << layout.index(0, Species::e);
        return s;
    })();
    std::array<std::uint64_t, 8> states{};
    for (int pat = 0; pat < 8; ++pat) {
        std::uint64_t s = bare;
        for (int c = 0; c < 3; ++c)
            if (pat & (1 << c))
                s ^= (1ull << layout.index(0, Species::u, c)) |
                     (1ull << layout.index(0, Species::ubar, c));
        states[static_cast<std::size_t>(pat)] = s;
    }
    auto position = [&](std::uint64_t s) {
        for (int i = 0; i < 8; ++i)
            if (states[static_cast<std::size_t>(i)] == s) return i;
        return -1;
    };

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(8, 8);
    double leak = 0.0;
    for (int col = 0; col < 8; ++col) {
        const std::uint64_t s = states[static_cast<std::size_t>(col)];
        std::map<std::uint64_t, cplx> leaked;  // out-of-block amplitudes may cancel
        for (const auto& t : H.terms()) {
            const int ny = std::popcount(t.x & t.z);
            cplx base = t.coeff;
            switch (ny % 4) {
                case 1: base *= cplx(0, 1); break;
                case 2: base *= -1.0; break;
                case 3: base *= cplx(0, -1); break;
                default: break;
            }
            if (std::popcount(t.z & s) & 1) base = -base;
            const int row = position(s ^ t.x);
            if (row < 0) leaked[s ^ t.x] += base;
            else M(row, col) += base;
        }
        for (const auto& [s2, amp] : leaked) leak += std::abs(amp);
    }
    if (leak > 1e-9) throw std::runtime_error("vqe: block is not closed under H");
    if (M.imag().cwiseAbs().maxCoeff() > 1e-12)
        throw std::runtime_error("vqe: block matrix is not real");
    return M.real();
}

Eigen::Vector4d exact_block_amplitudes(const LatticeParams& p) {
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    const Eigen::MatrixXd M = delta_minus_block(p, lay);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    Eigen::VectorXd v = es.eigenvectors().col(0);
    if (v[0] < 0) v = -v;
    Eigen::Vector4d a = Eigen::Vector4d::Zero();
    std::array<bool, 4> seen{};
    for (int pat = 0; pat < 8; ++pat) {
        const int k = std::popcount(static_cast<unsigned>(pat));
        const double val = v[pat] * pattern_sign(pat);
        if (!seen[static_cast<std::size_t>(k)]) {
            a[k] = val;
            seen[static_cast<std::size_t>(k)] = true;
        } else if (std::abs(val - a[k]) > 1e-9) {
            throw std::runtime_error("vqe: ground state breaks the pair-count symmetry");
        }
    }
    return a;
}

Eigen::VectorXd ansatz_amplitudes(const AnsatzAngles& a) {
    // Branch amplitudes of the multiplexed-RY preparation tree (rotations act
    // before the X flips): amplitude(bit 0) = sin(phi/2), amplitude(bit 1) =
    // cos(phi/2).  Qubit bit b_c = 0 means the color-c u/ubar pair is present.
    auto branch = [](double phi, int bit) {
        return bit == 0 ? std::sin(phi / 2) : std::cos(phi / 2);
    };
    Eigen::VectorXd psi(8);
    for (int pat = 0; pat < 8; ++pat) {
        const int b0 = (pat & 1) ? 0 : 1;  // pattern bit set = pair present = qubit |0>
        const int b1 = (pat & 2) ? 0 : 1;
        const int b2 = (pat & 4) ? 0 : 1;
        const double a2 = (b0 == 0) ? a.theta1 : a.theta0;
        double a3;
        if (b1 == 0) a3 = (b0 == 0) ? a.theta11 : a.theta01;
        else a3 = (b0 == 0) ? a.theta01 : a.theta00;
        psi[pat] = branch(a.theta, b0) * branch(a2, b1) * branch(a3, b2);
    }
    return psi;
}

namespace {

// Minimal Nelder-Mead for smooth low-dimensional objectives.
Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                            Eigen::VectorXd x0, double tol, int max_iter, int& iters) {
    const int n = static_cast<int>(x0.size());
    std::vector<Eigen::VectorXd> xs;
    std::vector<double> fs;
    xs.push_back(x0);
    fs.push_back(f(x0));
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd x = x0;
        x[i] += (x[i] != 0.0) ? 0.05 * x[i] : 0.025;
        xs.push_back(x);
        fs.push_back(f(x));
    }
    auto order = [&] {
        std::vector<int> idx(xs.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[static_cast<std::size_t>(a)] < fs[static_cast<std::size_t>(b)]; });
        std::vector<Eigen::VectorXd> xs2;
        std::vector<double> fs2;
        for (int i : idx) {
            xs2.push_back(xs[static_cast<std::size_t>(i)]);
            fs2.push_back(fs[static_cast<std::size_t>(i)]);
        }
        xs = xs2;
        fs = fs2;
    };
    for (iters = 0; iters < max_iter; ++iters) {
        order();
        if (std::abs(fs.back() - fs.front()) < tol) break;
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) centroid += xs[static_cast<std::size_t>(i)];
        centroid /= n;
        const Eigen::VectorXd xr = centroid + (centroid - xs.back());
        const double fr = f(xr);
        if (fr < fs.front()) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - xs.back());
            const double fe = f(xe);
            if (fe < fr) { xs.back() = xe; fs.back() = fe; }
            else { xs.back() = xr; fs.back() = fr; }
        } else if (fr < fs[static_cast<std::size_t>(n - 1)]) {
            xs.back() = xr;
            fs.back() = fr;
        } else {
            const Eigen::VectorXd xc = centroid + 0.5 * (xs.back() - centroid);
            const double fc = f(xc);
            if (fc < fs.back()) { xs.back() = xc; fs.back() = fc; }
            else {
                for (std::size_t i = 1; i < xs.size(); ++i) {
                    xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
                    fs[i] = f(xs[i]);
                }
            }
        }
    }
    order();
    return xs.front();
}

}  // namespace

VqeResult vqe_optimize(const LatticeParams& p, double tol, int max_iter) {
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    const Eigen::MatrixXd M = delta_minus_block(p, lay);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    const double e0 = es.eigenvalues()[0];
    Eigen::VectorXd g = es.eigenvectors().col(0);
    if (g[0] < 0) g = -g;

    auto energy = [&](const Eigen::VectorXd& x) {
        AnsatzAngles a;
        try {
            a = derive_dependent_angles(x[0], x[1], x[2]);
        } catch (const std::domain_error&) {
            return 1e6;
        }
        const Eigen::VectorXd psi = ansatz_amplitudes(a);
        return static_cast<double>(psi.dot(M * psi));
    };

    Eigen::VectorXd x0(3);
    x0 << 0.2, 0.3, 0.5;
    VqeResult r;
    const Eigen::VectorXd x = nelder_mead(energy, x0, tol, max_iter, r.iterations);
    r.angles = derive_dependent_angles(x[0], x[1], x[2]);
    const Eigen::VectorXd psi = ansatz_amplitudes(r.angles);
    r.energy = psi.dot(M * psi);
    r.infidelity = 1.0 - std::pow(psi.dot(g), 2);
    (void)e0;
    return r;
}

}  // namespace latticeweak
