#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "setderiv/shapes.hpp"

namespace setderiv {

/// Plain-text section/key-value config:
///   # comment
///   [section]            or  [section:name]
///   key = value          (values: numbers, "2^-k" powers, word lists)
/// Later duplicate keys override earlier ones inside a section.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;
    std::string get_str(const std::string& section, const std::string& key,
                        std::optional<std::string> fallback = std::nullopt) const;
    double get_real(const std::string& section, const std::string& key,
                    std::optional<double> fallback = std::nullopt) const;
    long get_int(const std::string& section, const std::string& key,
                 std::optional<long> fallback = std::nullopt) const;
    std::vector<double> get_reals(const std::string& section, const std::string& key) const;
    Vec2 get_vec2(const std::string& section, const std::string& key,
                  std::optional<Vec2> fallback = std::nullopt) const;
    std::vector<std::string> get_words(const std::string& section, const std::string& key) const;
    std::vector<std::string> section_names() const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Accepts "0.125", "1e-3", and "2^-12" style powers.
double parse_real(const std::string& text);

/// Assemble a shape from a config section (kind, parameters, CSG references
/// to other [shape:NAME] sections).
ShapePtr shape_from_config(const Config& cfg, const std::string& section);

struct ExperimentConfig {
    std::string name;
    std::string out_dir = "out";
    bool strict = false;
    long seed = 0;
    long threads = 0;
    double h = 0;       // 0 = experiment default
    double margin = 0;  // 0 = experiment default
    std::vector<double> epsilons;  // empty = experiment default
    double T = 0;
    double c = 0;
    Config raw;
};

ExperimentConfig experiment_config_from(const Config& cfg);

}  // namespace setderiv
