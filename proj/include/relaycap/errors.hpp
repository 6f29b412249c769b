#ifndef RELAYCAP_ERRORS_HPP
#define RELAYCAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relaycap {

// Thrown when a config or an operation argument violates a documented
// precondition (negative powers, mismatched relay counts, out-of-range
// correlations, infeasible AF gains). Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what)
        : std::invalid_argument(what) {}
};

// Thrown on unreadable input or unwritable output. Maps to CLI exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace relaycap

#endif
