#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dualrw/term.hpp"

namespace dualrw {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Parenthesized prefix syntax. `;` starts a comment running to end of line.
Term parse_term(std::string_view src);
Type parse_type(std::string_view src);

std::string print(const Term& t);

// Breaks lines so that no node wider than `width` stays on one line.
std::string print_pretty(const Term& t, std::size_t width = 80);

/// Round-trippable text of a real literal, always with a '.', exponent, or inf/nan.
std::string format_real(double x);

} // namespace dualrw
