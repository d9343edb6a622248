#include "ntdlab/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ntdlab/fitting.hpp"

namespace ntdlab {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

double to_double(const std::string& key, const std::string& raw) {
    try {
        size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "' is not a number: " + raw);
    }
}

}  // namespace

std::string KeyValueConfig::get_string(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ValidationError("missing required config key: " + key);
    return unquote(it->second);
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double KeyValueConfig::get_double(const std::string& key) const {
    return to_double(key, get_string(key));
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long KeyValueConfig::get_int(const std::string& key) const {
    const double v = get_double(key);
    const long r = static_cast<long>(v);
    if (static_cast<double>(r) != v)
        throw ValidationError("config key '" + key + "' must be an integer");
    return r;
}

long KeyValueConfig::get_int(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::vector<double> KeyValueConfig::get_array(const std::string& key) const {
    const std::string raw = get_string(key);
    if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']')
        throw ValidationError("config key '" + key + "' must be an array [..]");
    std::vector<double> out;
    std::istringstream ss(raw.substr(1, raw.size() - 2));
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const std::string t = trim(cell);
        if (!t.empty()) out.push_back(to_double(key, t));
    }
    return out;
}

KeyValueConfig parse_config_text(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments outside of quotes
        bool quoted = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line = line.substr(0, i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ValidationError("config line " + std::to_string(lineno) + ": empty key or value");
        cfg.set(key, val);
    }
    return cfg;
}

KeyValueConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

Eigen::VectorXd parse_grid_spec(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ValidationError("grid spec must be lo:hi:N(log|lin): " + spec);
    const double lo = to_double("grid lo", trim(spec.substr(0, c1)));
    const double hi = to_double("grid hi", trim(spec.substr(c1 + 1, c2 - c1 - 1)));
    std::string tail = trim(spec.substr(c2 + 1));
    std::string kind = "lin";
    if (tail.size() >= 3) {
        const std::string suffix = tail.substr(tail.size() - 3);
        if (suffix == "log" || suffix == "lin") {
            kind = suffix;
            tail = tail.substr(0, tail.size() - 3);
        }
    }
    const double nd = to_double("grid N", trim(tail));
    const int n = static_cast<int>(nd);
    if (n < 2 || static_cast<double>(n) != nd)
        throw ValidationError("grid spec needs an integer point count >= 2: " + spec);
    return kind == "log" ? log_grid(lo, hi, n) : lin_grid(lo, hi, n);
}

}  // namespace ntdlab
