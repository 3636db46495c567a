#include "frontspeed/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace frontspeed {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& where, int line) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') {
        std::ostringstream os;
        os << where << " (line " << line << "): '" << v << "' is not a number";
        throw ConfigError(os.str(), line);
    }
    return x;
}

}  // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str(), path);
}

Config Config::from_string(const std::string& text, const std::string& name) {
    Config cfg;
    cfg.name_ = name;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                std::ostringstream os;
                os << name << " (line " << lineno << "): unterminated section header '" << line
                   << "'";
                throw ConfigError(os.str(), lineno);
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                std::ostringstream os;
                os << name << " (line " << lineno << "): empty section name";
                throw ConfigError(os.str(), lineno);
            }
            cfg.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << name << " (line " << lineno << "): expected 'key = value', got '" << line << "'";
            throw ConfigError(os.str(), lineno);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            std::ostringstream os;
            os << name << " (line " << lineno << "): empty key";
            throw ConfigError(os.str(), lineno);
        }
        if (section.empty()) {
            std::ostringstream os;
            os << name << " (line " << lineno << "): key '" << key << "' outside any [section]";
            throw ConfigError(os.str(), lineno);
        }
        auto& entry = cfg.sections_[section][key];
        entry.value = value;
        entry.line = lineno;
    }
    return cfg;
}

bool Config::has_section(const std::string& sec) const { return sections_.count(sec) > 0; }

bool Config::has(const std::string& sec, const std::string& key) const {
    return find(sec, key) != nullptr;
}

const Config::Entry* Config::find(const std::string& sec, const std::string& key) const {
    const auto s = sections_.find(sec);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

const Config::Entry& Config::require(const std::string& sec, const std::string& key) {
    const Entry* e = find(sec, key);
    if (!e) throw ConfigError(name_ + ": missing required key [" + sec + "] " + key);
    e->used = true;
    return *e;
}

std::string Config::get_string(const std::string& sec, const std::string& key) {
    return require(sec, key).value;
}

std::string Config::get_string(const std::string& sec, const std::string& key,
                               const std::string& fallback) {
    const Entry* e = find(sec, key);
    if (!e) return fallback;
    e->used = true;
    return e->value;
}

double Config::get_double(const std::string& sec, const std::string& key) {
    const Entry& e = require(sec, key);
    return parse_double(e.value, name_ + ": [" + sec + "] " + key, e.line);
}

double Config::get_double(const std::string& sec, const std::string& key, double fallback) {
    const Entry* e = find(sec, key);
    if (!e) return fallback;
    e->used = true;
    return parse_double(e->value, name_ + ": [" + sec + "] " + key, e->line);
}

int Config::get_int(const std::string& sec, const std::string& key, int fallback) {
    const Entry* e = find(sec, key);
    if (!e) return fallback;
    e->used = true;
    const double x = parse_double(e->value, name_ + ": [" + sec + "] " + key, e->line);
    const int i = static_cast<int>(x);
    if (x != i) {
        std::ostringstream os;
        os << name_ << ": [" << sec << "] " << key << " (line " << e->line
           << "): expected an integer, got '" << e->value << "'";
        throw ConfigError(os.str(), e->line);
    }
    return i;
}

bool Config::get_bool(const std::string& sec, const std::string& key, bool fallback) {
    const Entry* e = find(sec, key);
    if (!e) return fallback;
    e->used = true;
    std::string v = e->value;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    std::ostringstream os;
    os << name_ << ": [" << sec << "] " << key << " (line " << e->line
       << "): expected a boolean, got '" << e->value << "'";
    throw ConfigError(os.str(), e->line);
}

std::vector<double> Config::get_list(const std::string& sec, const std::string& key) {
    const Entry& e = require(sec, key);
    std::vector<double> out;
    std::string item;
    std::istringstream is(e.value);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double(item, name_ + ": [" + sec + "] " + key, e.line));
    }
    if (out.empty())
        throw ConfigError(name_ + ": [" + sec + "] " + key + ": empty list", e.line);
    return out;
}

std::vector<std::string> Config::unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [sec, keys] : sections_)
        for (const auto& [key, e] : keys)
            if (!e.used) {
                std::ostringstream os;
                os << sec << "." << key << " (line " << e.line << ")";
                out.push_back(os.str());
            }
    return out;
}

FieldSpec field_from_config(Config& cfg) {
    const std::string kind = cfg.get_string("field", "kind", "zero");
    if (kind == "zero") return FieldSpec::zero();
    if (kind == "shear")
        return FieldSpec::shear(cfg.get_double("field", "amplitude"),
                                cfg.get_int("field", "m2", 1),
                                cfg.get_double("field", "eps_t", 0.0),
                                cfg.get_int("field", "m_t", 1));
    if (kind == "cellular")
        return FieldSpec::cellular(cfg.get_double("field", "amplitude"),
                                   cfg.get_int("field", "m1", 1), cfg.get_int("field", "m2", 1),
                                   cfg.get_double("field", "eps_t", 0.0),
                                   cfg.get_int("field", "m_t", 1));
    if (kind == "tabulated") return load_field_csv(cfg.get_string("field", "csv"));
    throw ConfigError(cfg.name() + ": [field] kind '" + kind +
                      "' is not one of zero|shear|cellular|tabulated");
}

namespace {

ReactionSpec base_reaction_from(Config& cfg, const std::string& prefix) {
    const std::string kind = cfg.get_string("reaction", prefix + "kind", "kpp_quadratic");
    if (kind == "kpp_quadratic")
        return ReactionSpec::kpp_quadratic(cfg.get_double("reaction", prefix + "rate", 1.0));
    if (kind == "degenerate")
        return ReactionSpec::degenerate(cfg.get_int("reaction", prefix + "m", 2));
    if (kind == "arrhenius")
        return ReactionSpec::arrhenius(cfg.get_double("reaction", prefix + "activation", 1.0));
    throw ConfigError(cfg.name() + ": [reaction] " + prefix + "kind '" + kind +
                      "' is not one of kpp_quadratic|degenerate|arrhenius");
}

}  // namespace

ReactionSpec reaction_from_config(Config& cfg) {
    const std::string kind = cfg.get_string("reaction", "kind", "kpp_quadratic");
    if (kind == "ignition_cutoff")
        return ignition_cutoff(base_reaction_from(cfg, "base_"),
                               cfg.get_double("reaction", "theta"));
    if (kind == "kpp_quadratic")
        return ReactionSpec::kpp_quadratic(cfg.get_double("reaction", "rate", 1.0));
    if (kind == "degenerate") return ReactionSpec::degenerate(cfg.get_int("reaction", "m", 2));
    if (kind == "arrhenius")
        return ReactionSpec::arrhenius(cfg.get_double("reaction", "activation", 1.0));
    throw ConfigError(cfg.name() + ": [reaction] kind '" + kind +
                      "' is not one of kpp_quadratic|degenerate|arrhenius|ignition_cutoff");
}

Eigen::Vector2d direction_from_config(Config& cfg) {
    return {cfg.get_double("direction", "k1", 1.0), cfg.get_double("direction", "k2", 0.0)};
}

CellGrid cell_grid_from_config(Config& cfg) {
    CellGrid g;
    g.dim = cfg.get_int("cell_grid", "dim", 2);
    g.nx = cfg.get_int("cell_grid", "nx", 64);
    g.nt = cfg.get_int("cell_grid", "nt", 512);
    g.validate();
    return g;
}

ChannelGrid channel_from_config(Config& cfg) {
    ChannelGrid g;
    g.length = cfg.get_double("channel", "length", 80.0);
    g.points_per_unit = cfg.get_int("channel", "points_per_unit", 16);
    g.dim = cfg.get_int("channel", "dim", 2);
    g.dt = cfg.get_double("channel", "dt", 0.0);
    g.validate();
    return g;
}

}  // namespace frontspeed
