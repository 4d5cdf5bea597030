#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace compnoma {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double squared_distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

// Invalid scenario parameters. `key()` names the offending setting when known.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what, std::string key = {})
        : std::runtime_error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// A realization that cannot be simulated (e.g. no base stations).
class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Collects non-fatal warnings (clamps, degenerate groups) raised while
// building and evaluating realizations. Each Monte Carlo worker owns one.
class RunLog {
public:
    void warn(std::string message) { warnings_.push_back(std::move(message)); }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    bool empty() const noexcept { return warnings_.empty(); }
    void merge(const RunLog& other) {
        warnings_.insert(warnings_.end(), other.warnings_.begin(), other.warnings_.end());
    }

private:
    std::vector<std::string> warnings_;
};

}  // namespace compnoma
