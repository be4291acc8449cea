#pragma once

#include <cstdint>

#include <nlohmann/json_fwd.hpp>

namespace latticeweak {

// Closed-form per-Trotter-step gate resources as functions of the lattice
// extent L (one full step of the combined strong + beta-decay evolution).
struct ResourceEstimate {
    long long L = 0;
    long long beta_rz = 0;    // 192 L
    long long beta_h = 0;     // 48 L
    long long beta_cnot = 0;  // 436 L
    long long rz = 0;         // 264 L^2 - 54 L + 77
    long long hadamard = 0;   // 48 L^2 + 20 L + 2
    long long cnot = 0;       // 368 L^2 + 120 L + 74
    long long multi_qubit_terms = 0;  // 96 L^2 - 68 L + 22

    nlohmann::json to_json() const;
};

ResourceEstimate resource_estimate(long long L);

}  // namespace latticeweak
