#include "latticeweak/resources.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace latticeweak {

ResourceEstimate resource_estimate(long long L) {
    if (L < 1) throw std::invalid_argument("resources: L must be >= 1");
    ResourceEstimate r;
    r.L = L;
    r.beta_rz = 192 * L;
    r.beta_h = 48 * L;
    r.beta_cnot = 436 * L;
    r.rz = 264 * L * L - 54 * L + 77;
    r.hadamard = 48 * L * L + 20 * L + 2;
    r.cnot = 368 * L * L + 120 * L + 74;
    r.multi_qubit_terms = 96 * L * L - 68 * L + 22;
    return r;
}

nlohmann::json ResourceEstimate::to_json() const {
    return {{"L", L},
            {"beta", {{"rz", beta_rz}, {"hadamard", beta_h}, {"cnot", beta_cnot}}},
            {"total", {{"rz", rz}, {"hadamard", hadamard}, {"cnot", cnot}}},
            {"multi_qubit_terms", multi_qubit_terms}};
}

}  // namespace latticeweak
