#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace citeflow {

// Input that could not be parsed: bad header, malformed record, unreadable
// file. Carries a 1-based line number when the failure points at a record.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

// Well-formed input that violates a semantic requirement: unknown entity,
// empty corpus, unrealizable generator request, degenerate statistics input.
class SemanticError : public std::runtime_error {
public:
    explicit SemanticError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace citeflow
