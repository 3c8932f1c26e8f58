#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "dualrw/term.hpp"

namespace dualrw {

struct EmitOptions {
    std::string entry = "main";
    /// Futhark scalar type for `real`. Only 64-bit is supported.
    std::string real_type = "f64";
    /// Sizes emitted as named top-level constants, e.g. {4096, "n"}.
    std::map<std::uint64_t, std::string> size_names;
};

/// Futhark source with one entry point. Leading lambdas of `t` become the
/// entry point's parameters. Throws std::invalid_argument on ill-typed
/// input or bad options.
std::string emit_futhark(const Term& t, const EmitOptions& opts = {});

} // namespace dualrw
