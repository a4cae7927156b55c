#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace fpt {

/// Flat key=value configuration file ('#' starts a comment, blank lines
/// ignored). Recognized keys: mu, tau, sigma, c, y0, S, dt, n_paths, t_max,
/// seed, estimator, bandwidth.
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace fpt
