#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtvlab {

// Malformed index text. `position` is the byte offset of the offending token.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t position)
        : std::runtime_error(msg), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Caller violated a precondition (bad argument combination, divergent index, ...).
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested tolerance not reached within the term/level budget. Carries the
// best value and estimate obtained so far so callers can still report them.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& msg, double best_value,
                      double best_estimate, long long terms_used)
        : std::runtime_error(msg),
          best_value_(best_value),
          best_estimate_(best_estimate),
          terms_used_(terms_used) {}
    double best_value() const noexcept { return best_value_; }
    double best_estimate() const noexcept { return best_estimate_; }
    long long terms_used() const noexcept { return terms_used_; }

private:
    double best_value_;
    double best_estimate_;
    long long terms_used_;
};

}  // namespace mtvlab
