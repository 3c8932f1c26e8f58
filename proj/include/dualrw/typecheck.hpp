#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualrw/term.hpp"

namespace dualrw {

/// Path of child indices from the root to a subterm.
using Locator = std::vector<std::size_t>;

class TypeError : public std::runtime_error {
public:
    enum class Kind { Mismatch, IllFormedIndex, Arity };

    TypeError(Kind kind, Locator where, const std::string& what, std::optional<Type> expected = {},
              std::optional<Type> actual = {});

    Kind kind() const { return kind_; }
    const Locator& locator() const { return where_; }
    const std::optional<Type>& expected() const { return expected_; }
    const std::optional<Type>& actual() const { return actual_; }

private:
    Kind kind_;
    Locator where_;
    std::optional<Type> expected_;
    std::optional<Type> actual_;
};

std::string to_string(TypeError::Kind kind);

/// Type of `t`, or throws TypeError for the leftmost-innermost violation.
Type typecheck(const Term& t);

/// Same as typecheck but returns nullopt instead of throwing.
std::optional<Type> type_of(const Term& t);

/// Subterm addressed by `where`; throws std::out_of_range for a bad path.
const Term& subterm_at(const Term& root, std::span<const std::size_t> where);

std::string locator_string(const Locator& where);

} // namespace dualrw
