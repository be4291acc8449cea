#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace latticeweak {

// All physical couplings, dimensionless in lattice units (a = 1).
struct LatticeParams {
    int L = 1;          // spatial sites
    double m_u = 0.9;   // up-quark mass
    double m_d = 2.1;   // down-quark mass
    double m_e = 0.0;   // electron mass
    double m_nu = 0.0;  // neutrino (Dirac) mass
    double g = 2.0;     // strong coupling
    double G = 0.5;     // weak four-Fermi coupling
    double m_M = 0.0;   // Majorana neutrino mass

    void validate() const {
        if (L < 1) throw std::invalid_argument("params: L must be >= 1");
    }
};

// The benchmark parameter set used throughout: m_u=0.9, m_d=2.1,
// m_e=m_nu=0, g=2, G=0.5 at L=1.
LatticeParams paper_l1_preset();

// JSON (de)serialization; parsing rejects unknown keys.
nlohmann::json params_to_json(const LatticeParams& p);
LatticeParams params_from_json(const nlohmann::json& j);
LatticeParams params_from_preset_or_file(const std::string& name_or_path);

}  // namespace latticeweak
