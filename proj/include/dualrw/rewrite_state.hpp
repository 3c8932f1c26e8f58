#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "dualrw/term.hpp"

namespace dualrw {

/// Fresh-name counter threaded through rewriting. Names are "x" followed by
/// the decimal counter value.
struct RewriteState {
    std::uint64_t counter = 0;

    std::string next_name() { return "x" + std::to_string(counter++); }

    friend bool operator==(const RewriteState&, const RewriteState&) = default;
};

std::pair<std::string, RewriteState> fresh_name(RewriteState state);

/// Advance the counter past every "x<k>" name occurring in `t`, so later
/// fresh names cannot collide with names already present.
RewriteState reserve_names(const Term& t, RewriteState state);

struct Rewritten {
    Term term;
    RewriteState state;

    friend bool operator==(const Rewritten&, const Rewritten&) = default;
};

/// Empty on strategy failure.
using RewriteOutcome = std::optional<Rewritten>;

} // namespace dualrw
