#include "latticeweak/io_util.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latticeweak {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash(const std::string& config_text) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << fnv1a(config_text);
    return os.str();
}

void CsvArtifact::add_row(const std::vector<double>& values, int precision) {
    std::vector<std::string> row;
    for (double v : values) {
        std::ostringstream os;
        os.precision(precision);
        os << v;
        row.push_back(os.str());
    }
    rows.push_back(std::move(row));
}

std::string CsvArtifact::to_string() const {
    std::ostringstream os;
    for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

void CsvArtifact::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("io: cannot write '" + path + "'");
    out << to_string();
}

CsvArtifact make_artifact(const std::string& config_text, long long seed) {
    CsvArtifact a;
    a.add_meta("version", kVersion);
    a.add_meta("config", config_hash(config_text));
    if (seed >= 0) a.add_meta("seed", std::to_string(seed));
    return a;
}

int thread_cap() {
    const char* env = std::getenv("LATTICEWEAK_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

}  // namespace latticeweak
