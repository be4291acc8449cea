#pragma once

#include <cstdint>
#include <vector>

namespace latticeweak {

// Beta-decay phase-space factor
//   f'(y) = sqrt(1-y^2)(1 - 9y^2/2 - 4y^4) - (15/2) y^4 log[y/(sqrt(1-y^2)+1)]
// for y = m_e / (M_n - M_p) in [0, 1]; f'(0)=1, f'(1)=0, monotone decreasing.
double phase_space_fprime(double y);

// Free-neutron width:
//   Gamma_n = G_F^2 |V_ud|^2 (M_n - M_p)^5 / (60 pi^3) (g_V^2 + 3 g_A^2) f'(y).
double neutron_width(double G_F, double V_ud, double M_n, double M_p, double m_e, double g_V,
                     double g_A);

// Leading-order 1+1D delta width with massless leptons:
//   Gamma_Delta = 3 G^2 g_V^2 Q / (2 pi).
double delta_width_1p1(double G, double g_V, double Q);

// Random-matrix ensemble of a single initial strong eigenstate weakly coupled
// to a dense band of final states.
struct EnsembleConfig {
    int n_initial = 10;            // uniform energies in [0, initial_max]
    double initial_max = 1.1;
    int initial_rank = 5;          // the 5th-lowest initial energy is the start state
    int y_f = 100;                 // number of final states
    double final_max = 2.03;       // uniform final energies in [0, final_max]
    double w_f = -1.0;             // coupling half-width; < 0 means 1/(2 sqrt(y_f))
    int samples = 2000;
    std::uint64_t seed = 1;

    double coupling_half_width() const;
};

struct PersistenceCurve {
    std::vector<double> times;
    std::vector<double> persistence;  // ensemble average of |<i|e^{-iHt}|i>|^2
};

PersistenceCurve ensemble_persistence(const EnsembleConfig& cfg, const std::vector<double>& times);

// Plateau estimate: mean of the last quarter of the curve.
double plateau_level(const PersistenceCurve& curve);

struct ExponentialFit {
    double rate = 0.0;       // Gamma in P ~ A exp(-Gamma t)
    double log_amplitude = 0.0;
    double r2 = 0.0;         // coefficient of determination in log space
    double t_lo = 0.0, t_hi = 0.0;  // fit window actually used
};

// Least-squares fit of log P over the window from the first time P < 0.95
// until P reaches 1.5x the plateau level.
ExponentialFit fit_exponential_window(const PersistenceCurve& curve);

// Log-log slope of 1 - P(t) over the earliest decade of times with
// 1 - P > floor_eps; ~2 for quadratic short-time behavior.
double early_time_exponent(const PersistenceCurve& curve, double floor_eps = 1e-8);

}  // namespace latticeweak
