#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "ntdlab/errors.hpp"

namespace ntdlab {

/// Minimal TOML-style key/value store: `key = value` lines, `[a, b, c]`
/// arrays, `#` comments, optional quotes around strings.
class KeyValueConfig {
public:
    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    void set(const std::string& key, const std::string& raw) { entries_[key] = raw; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;
    std::vector<double> get_array(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

KeyValueConfig parse_config_file(const std::string& path);
KeyValueConfig parse_config_text(const std::string& text);

/// Grid spec `lo:hi:N(log|lin)`, e.g. "10:1000:24log".
Eigen::VectorXd parse_grid_spec(const std::string& spec);

}  // namespace ntdlab
