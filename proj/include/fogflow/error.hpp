#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fogflow {

// Malformed input document (XML, CSV, config text).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string const & message, std::size_t line = 0)
        : std::runtime_error(line == 0 ? message : message + " (line " + std::to_string(line) + ")"),
          line_(line) {}

    // 0 when the location is unknown
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Well-formed input that violates a model invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

    explicit ValidationError(std::string const & violation)
        : ValidationError(std::vector<std::string>{violation}) {}

    std::vector<std::string> const & violations() const noexcept { return violations_; }

private:
    static std::string join(std::vector<std::string> const & items) {
        std::string out;
        for (auto const & item : items) {
            if (!out.empty()) {
                out += "; ";
            }
            out += item;
        }
        return out;
    }

    std::vector<std::string> violations_;
};

// Optimizer or experiment parameters out of range.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Internal consistency check failed. Always a bug.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace fogflow
