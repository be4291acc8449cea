#include "latticeweak/decay_models.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "latticeweak/rng.hpp"

namespace latticeweak {

double phase_space_fprime(double y) {
    if (y < 0.0 || y > 1.0) throw std::invalid_argument("decay: y must lie in [0, 1]");
    if (y == 0.0) return 1.0;
    const double r = std::sqrt(1.0 - y * y);
    const double y2 = y * y, y4 = y2 * y2;
    return r * (1.0 - 4.5 * y2 - 4.0 * y4) - 7.5 * y4 * std::log(y / (r + 1.0));
}

double neutron_width(double G_F, double V_ud, double M_n, double M_p, double m_e, double g_V,
                     double g_A) {
    const double dM = M_n - M_p;
    if (dM <= m_e) throw std::invalid_argument("decay: channel kinematically closed");
    const double y = m_e / dM;
    const double pref = G_F * G_F * V_ud * V_ud * std::pow(dM, 5) /
                        (60.0 * std::pow(std::numbers::pi, 3));
    return pref * (g_V * g_V + 3.0 * g_A * g_A) * phase_space_fprime(y);
}

double delta_width_1p1(double G, double g_V, double Q) {
    if (Q <= 0.0) throw std::invalid_argument("decay: Q must be positive");
    return 3.0 * G * G * g_V * g_V * Q / (2.0 * std::numbers::pi);
}

double EnsembleConfig::coupling_half_width() const {
    if (w_f >= 0.0) return w_f;
    return 1.0 / (2.0 * std::sqrt(static_cast<double>(y_f)));
}

PersistenceCurve ensemble_persistence(const EnsembleConfig& cfg,
                                      const std::vector<double>& times) {
    if (cfg.n_initial < 1 || cfg.y_f < 1 || cfg.samples < 1)
        throw std::invalid_argument("decay: invalid ensemble configuration");
    if (cfg.initial_rank < 1 || cfg.initial_rank > cfg.n_initial)
        throw std::invalid_argument("decay: initial rank out of range");
    const int n = cfg.n_initial + cfg.y_f;
    const double w = cfg.coupling_half_width();

    PersistenceCurve curve;
    curve.times = times;
    curve.persistence.assign(times.size(), 0.0);

    Eigen::MatrixXd H(n, n);
    for (int s = 0; s < cfg.samples; ++s) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(s));
        std::vector<double> e_init(static_cast<std::size_t>(cfg.n_initial));
        for (double& e : e_init) e = rng.uniform(0.0, cfg.initial_max);
        std::vector<double> sorted = e_init;
        std::sort(sorted.begin(), sorted.end());
        const double e_start = sorted[static_cast<std::size_t>(cfg.initial_rank - 1)];
        const int start =
            static_cast<int>(std::find(e_init.begin(), e_init.end(), e_start) - e_init.begin());

        H.setZero();
        for (int i = 0; i < cfg.n_initial; ++i) H(i, i) = e_init[static_cast<std::size_t>(i)];
        for (int f = 0; f < cfg.y_f; ++f)
            H(cfg.n_initial + f, cfg.n_initial + f) = rng.uniform(0.0, cfg.final_max);
        for (int i = 0; i < cfg.n_initial; ++i)
            for (int f = 0; f < cfg.y_f; ++f) {
                const double v = rng.uniform(-w, w);
                H(i, cfg.n_initial + f) = v;
                H(cfg.n_initial + f, i) = v;
            }

        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        const Eigen::VectorXd c = es.eigenvectors().row(start);  // overlaps with |i>
        const Eigen::VectorXd& ev = es.eigenvalues();
        for (std::size_t k = 0; k < times.size(); ++k) {
            std::complex<double> amp = 0.0;
            for (int j = 0; j < n; ++j)
                amp += c[j] * c[j] * std::exp(std::complex<double>(0.0, -ev[j] * times[k]));
            curve.persistence[k] += std::norm(amp);
        }
    }
    for (double& p : curve.persistence) p /= cfg.samples;
    return curve;
}

double plateau_level(const PersistenceCurve& curve) {
    const std::size_t n = curve.persistence.size();
    if (n == 0) throw std::invalid_argument("decay: empty curve");
    const std::size_t from = n - std::max<std::size_t>(1, n / 4);
    double s = 0;
    for (std::size_t i = from; i < n; ++i) s += curve.persistence[i];
    return s / static_cast<double>(n - from);
}

ExponentialFit fit_exponential_window(const PersistenceCurve& curve) {
    const double plateau = plateau_level(curve);
    const double hi_cut = 0.95, lo_cut = 1.5 * plateau;
    std::vector<std::pair<double, double>> pts;  // (t, log P)
    bool started = false;
    ExponentialFit fit;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        const double p = curve.persistence[i];
        if (!started) {
            if (p < hi_cut) {
                started = true;
                fit.t_lo = curve.times[i];
            } else {
                continue;
            }
        }
        if (p <= lo_cut || p <= 0.0) break;
        pts.push_back({curve.times[i], std::log(p)});
        fit.t_hi = curve.times[i];
    }
    if (pts.size() < 3) throw std::runtime_error("decay: exponential-fit window too short");
    double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
    for (const auto& [t, y] : pts) {
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        syy += y * y;
    }
    const double nn = static_cast<double>(pts.size());
    const double slope = (nn * sty - st * sy) / (nn * stt - st * st);
    fit.rate = -slope;
    fit.log_amplitude = (sy - slope * st) / nn;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / nn;
    for (const auto& [t, y] : pts) {
        const double yhat = fit.log_amplitude + slope * t;
        ss_res += (y - yhat) * (y - yhat);
        ss_tot += (y - ybar) * (y - ybar);
    }
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

double early_time_exponent(const PersistenceCurve& curve, double floor_eps) {
    std::vector<std::pair<double, double>> pts;  // (log t, log (1-P))
    double t_first = 0;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        const double d = 1.0 - curve.persistence[i];
        if (curve.times[i] <= 0.0 || d <= floor_eps) continue;
        if (t_first == 0) t_first = curve.times[i];
        if (curve.times[i] > 10.0 * t_first) break;  // one decade of times
        pts.push_back({std::log(curve.times[i]), std::log(d)});
    }
    if (pts.size() < 3) throw std::runtime_error("decay: not enough early-time points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double nn = static_cast<double>(pts.size());
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

}  // namespace latticeweak
