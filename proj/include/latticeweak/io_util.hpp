#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace latticeweak {

inline constexpr const char* kVersion = "0.1.0";

// FNV-1a hash of a string, rendered as 16 hex digits; used to stamp the
// configuration into artifact headers.
std::uint64_t fnv1a(const std::string& s);
std::string config_hash(const std::string& config_text);

// Self-describing CSV artifact: `# key: value` header lines (version,
// config hash, seed, free-form metadata) followed by a column header and rows.
struct CsvArtifact {
    std::vector<std::pair<std::string, std::string>> meta;  // written as comments
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_meta(const std::string& key, const std::string& value) { meta.push_back({key, value}); }
    void add_row(const std::vector<double>& values, int precision = 12);
    std::string to_string() const;
    void save(const std::string& path) const;
};

// Standard header stamp: version + config hash (+ seed if >= 0).
CsvArtifact make_artifact(const std::string& config_text, long long seed = -1);

// Parallelism cap from LATTICEWEAK_THREADS (defaults to 1 in this build).
int thread_cap();

}  // namespace latticeweak
