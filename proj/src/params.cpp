#include "latticeweak/params.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace latticeweak {

LatticeParams paper_l1_preset() { return LatticeParams{}; }

nlohmann::json params_to_json(const LatticeParams& p) {
    return nlohmann::json{{"L", p.L},     {"m_u", p.m_u},   {"m_d", p.m_d}, {"m_e", p.m_e},
                          {"m_nu", p.m_nu}, {"g", p.g},     {"G", p.G},     {"m_M", p.m_M}};
}

LatticeParams params_from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {"L", "m_u", "m_d", "m_e", "m_nu", "g", "G", "m_M"};
    if (!j.is_object()) throw std::invalid_argument("params: JSON root must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument("params: unknown key '" + it.key() + "'");
    LatticeParams p;
    if (j.contains("L")) p.L = j.at("L").get<int>();
    if (j.contains("m_u")) p.m_u = j.at("m_u").get<double>();
    if (j.contains("m_d")) p.m_d = j.at("m_d").get<double>();
    if (j.contains("m_e")) p.m_e = j.at("m_e").get<double>();
    if (j.contains("m_nu")) p.m_nu = j.at("m_nu").get<double>();
    if (j.contains("g")) p.g = j.at("g").get<double>();
    if (j.contains("G")) p.G = j.at("G").get<double>();
    if (j.contains("m_M")) p.m_M = j.at("m_M").get<double>();
    p.validate();
    return p;
}

LatticeParams params_from_preset_or_file(const std::string& name_or_path) {
    if (name_or_path.empty() || name_or_path == "paper-l1") return paper_l1_preset();
    std::ifstream in(name_or_path);
    if (!in) throw std::invalid_argument("params: cannot open '" + name_or_path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("params: malformed JSON in '" + name_or_path + "': " + e.what());
    }
    return params_from_json(j);
}

}  // namespace latticeweak
