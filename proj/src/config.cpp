#include "setderiv/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "setderiv/errors.hpp"
#include "setderiv/grid.hpp"

namespace setderiv {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

double parse_real(const std::string& text) {
    std::string t = trim(text);
    size_t caret = t.find('^');
    if (caret != std::string::npos) {
        try {
            double base = std::stod(t.substr(0, caret));
            double expo = std::stod(t.substr(caret + 1));
            return std::pow(base, expo);
        } catch (const std::exception&) {
            fail(ErrorCode::ConfigParse, "bad power literal: " + t);
        }
    }
    try {
        size_t used = 0;
        double v = std::stod(t, &used);
        if (used != t.size()) fail(ErrorCode::ConfigParse, "trailing junk in number: " + t);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorCode::ConfigParse, "not a number: " + t);
    }
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(ErrorCode::ConfigParse, "unterminated section at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections_[section];
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::ConfigParse, "expected key = value at line " + std::to_string(lineno));
        if (section.empty())
            fail(ErrorCode::ConfigParse, "key outside any section at line " + std::to_string(lineno));
        cfg.sections_[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorCode::ConfigParse, "cannot open config: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_string(ss.str());
}

bool Config::has_section(const std::string& s) const { return sections_.count(s) > 0; }

bool Config::has(const std::string& s, const std::string& k) const {
    auto it = sections_.find(s);
    return it != sections_.end() && it->second.count(k) > 0;
}

std::string Config::get_str(const std::string& s, const std::string& k,
                            std::optional<std::string> fallback) const {
    auto it = sections_.find(s);
    if (it != sections_.end()) {
        auto kt = it->second.find(k);
        if (kt != it->second.end()) return kt->second;
    }
    if (fallback) return *fallback;
    fail(ErrorCode::ConfigParse, "missing key [" + s + "] " + k);
}

double Config::get_real(const std::string& s, const std::string& k,
                        std::optional<double> fallback) const {
    if (!has(s, k)) {
        if (fallback) return *fallback;
        fail(ErrorCode::ConfigParse, "missing key [" + s + "] " + k);
    }
    return parse_real(get_str(s, k));
}

long Config::get_int(const std::string& s, const std::string& k,
                     std::optional<long> fallback) const {
    if (!has(s, k)) {
        if (fallback) return *fallback;
        fail(ErrorCode::ConfigParse, "missing key [" + s + "] " + k);
    }
    return (long)std::llround(parse_real(get_str(s, k)));
}

std::vector<std::string> Config::get_words(const std::string& s, const std::string& k) const {
    std::istringstream in(get_str(s, k));
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

std::vector<double> Config::get_reals(const std::string& s, const std::string& k) const {
    std::vector<double> out;
    for (const auto& w : get_words(s, k)) out.push_back(parse_real(w));
    return out;
}

Vec2 Config::get_vec2(const std::string& s, const std::string& k,
                      std::optional<Vec2> fallback) const {
    if (!has(s, k)) {
        if (fallback) return *fallback;
        fail(ErrorCode::ConfigParse, "missing key [" + s + "] " + k);
    }
    auto v = get_reals(s, k);
    if (v.size() != 2) fail(ErrorCode::ConfigParse, "expected two numbers for [" + s + "] " + k);
    return {v[0], v[1]};
}

std::vector<std::string> Config::section_names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : sections_) out.push_back(name);
    return out;
}

ShapePtr shape_from_config(const Config& cfg, const std::string& section) {
    if (!cfg.has_section(section)) fail(ErrorCode::ConfigParse, "no section [" + section + "]");
    std::string kind = cfg.get_str(section, "kind");
    auto sub = [&](const std::string& name) { return shape_from_config(cfg, "shape:" + name); };

    if (kind == "disk")
        return make_disk(cfg.get_vec2(section, "center", Vec2{0, 0}),
                         cfg.get_real(section, "radius"));
    if (kind == "rect")
        return make_rect(cfg.get_vec2(section, "min"), cfg.get_vec2(section, "max"));
    if (kind == "polygon") {
        auto v = cfg.get_reals(section, "points");
        if (v.size() < 6 || v.size() % 2)
            fail(ErrorCode::ConfigParse, "polygon points must be >= 3 coordinate pairs");
        std::vector<Vec2> pts;
        for (size_t i = 0; i + 1 < v.size(); i += 2) pts.push_back({v[i], v[i + 1]});
        return make_polygon(std::move(pts));
    }
    if (kind == "segment")
        return make_segment(cfg.get_vec2(section, "a"), cfg.get_vec2(section, "b"));
    if (kind == "union" || kind == "difference") {
        auto names = cfg.get_words(section, "of");
        if (kind == "difference") {
            if (names.size() != 2)
                fail(ErrorCode::ConfigParse, "difference takes exactly two shapes");
            return make_difference(sub(names[0]), sub(names[1]));
        }
        std::vector<ShapePtr> parts;
        for (const auto& n : names) parts.push_back(sub(n));
        return make_union(std::move(parts));
    }
    if (kind == "boundary_of") return make_boundary_of(sub(cfg.get_str(section, "of")));
    if (kind == "translate")
        return make_translate(sub(cfg.get_str(section, "of")), cfg.get_vec2(section, "offset"));
    if (kind == "comb") {
        // Handled by the comb experiment; exposed here as the plain union for
        // standalone rasterization.
        fail(ErrorCode::ConfigParse, "comb shapes are built through the comb experiments");
    }
    if (kind == "bitmap") {
        GridSet gs = load_sdgs(cfg.get_str(section, "file"));
        return std::make_shared<BitmapShape>(gs.bbox, gs.h, gs.nx, gs.ny, gs.occ);
    }
    fail(ErrorCode::ConfigParse, "unknown shape kind: " + kind);
}

ExperimentConfig experiment_config_from(const Config& cfg) {
    ExperimentConfig ec;
    ec.raw = cfg;
    ec.name = cfg.get_str("experiment", "name");
    ec.out_dir = cfg.get_str("experiment", "out", std::string("out"));
    ec.seed = cfg.get_int("experiment", "seed", 0L);
    ec.threads = cfg.get_int("experiment", "threads", 0L);
    ec.strict = cfg.get_int("experiment", "strict", 0L) != 0;
    ec.h = cfg.get_real("grid", "h", 0.0);
    ec.margin = cfg.get_real("grid", "margin", 0.0);
    ec.T = cfg.get_real("test", "T", 0.0);
    ec.c = cfg.get_real("test", "c", 0.0);
    if (cfg.has_section("epsilon")) {
        std::string kind = cfg.get_str("epsilon", "kind", std::string("dyadic"));
        if (kind == "dyadic") {
            double start = cfg.get_real("epsilon", "start");
            long count = cfg.get_int("epsilon", "count");
            double e = start;
            for (long i = 0; i < count; ++i, e /= 2) ec.epsilons.push_back(e);
        } else if (kind == "list") {
            ec.epsilons = cfg.get_reals("epsilon", "values");
        } else {
            fail(ErrorCode::ConfigParse, "unknown epsilon schedule kind: " + kind);
        }
        for (size_t i = 0; i + 1 < ec.epsilons.size(); ++i)
            if (!(ec.epsilons[i] > ec.epsilons[i + 1]))
                fail(ErrorCode::ConfigParse, "epsilon schedule must be strictly decreasing");
    }
    return ec;
}

}  // namespace setderiv
