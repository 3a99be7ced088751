#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace twcut {

// Flat declarative config: named sections ("[name]" lines) holding ordered
// "key = value" entries; '#' comments; values with multiple whitespace-
// separated fields act as lists.  Sections may repeat.
struct ConfigSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;

    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback = "") const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    std::vector<std::string> get_list(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<long> get_longs(const std::string& key) const;
};

struct RunConfig {
    std::vector<ConfigSection> sections;

    std::vector<const ConfigSection*> find_all(const std::string& name) const;
    const ConfigSection* find(const std::string& name) const;

    bool operator==(const RunConfig& other) const;
};

RunConfig parse_config(const std::string& text);
std::string emit_config(const RunConfig& cfg);
RunConfig read_config_file(const std::string& path);

}  // namespace twcut
