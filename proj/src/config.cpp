#include "twcut/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twcut {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

bool ConfigSection::has(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return true;
    return false;
}

std::string ConfigSection::get(const std::string& key, const std::string& fallback) const {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    return fallback;
}

double ConfigSection::get_double(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return std::stod(get(key));
}

long ConfigSection::get_long(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    return std::stol(get(key));
}

std::vector<std::string> ConfigSection::get_list(const std::string& key) const {
    std::vector<std::string> out;
    std::istringstream is(get(key));
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

std::vector<double> ConfigSection::get_doubles(const std::string& key) const {
    std::vector<double> out;
    for (const auto& s : get_list(key)) out.push_back(std::stod(s));
    return out;
}

std::vector<long> ConfigSection::get_longs(const std::string& key) const {
    std::vector<long> out;
    for (const auto& s : get_list(key)) out.push_back(std::stol(s));
    return out;
}

std::vector<const ConfigSection*> RunConfig::find_all(const std::string& name) const {
    std::vector<const ConfigSection*> out;
    for (const auto& s : sections)
        if (s.name == name) out.push_back(&s);
    return out;
}

const ConfigSection* RunConfig::find(const std::string& name) const {
    for (const auto& s : sections)
        if (s.name == name) return &s;
    return nullptr;
}

bool RunConfig::operator==(const RunConfig& other) const {
    if (sections.size() != other.sections.size()) return false;
    for (std::size_t i = 0; i < sections.size(); ++i) {
        if (sections[i].name != other.sections[i].name) return false;
        if (sections[i].entries != other.sections[i].entries) return false;
    }
    return true;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": unterminated section header");
            cfg.sections.push_back({trim(line.substr(1, line.size() - 2)), {}});
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value");
        if (cfg.sections.empty())
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": entry outside any section");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(line_no) + ": empty key");
        cfg.sections.back().entries.emplace_back(key, value);
    }
    return cfg;
}

std::string emit_config(const RunConfig& cfg) {
    std::ostringstream os;
    for (const auto& s : cfg.sections) {
        os << "[" << s.name << "]\n";
        for (const auto& [k, v] : s.entries) os << k << " = " << v << "\n";
    }
    return os.str();
}

RunConfig read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

}  // namespace twcut
