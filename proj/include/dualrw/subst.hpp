#pragma once

#include "dualrw/rewrite_state.hpp"
#include "dualrw/term.hpp"

namespace dualrw {

/// Rename every bound variable in `t` to a counter-generated name. Free
/// variables are untouched; the result is alpha-equivalent to `t`.
Rewritten fresh_term(const Term& t, RewriteState state);

/// Capture-avoiding substitution of `replacement` for free `x` in `body`.
/// Every inserted copy of the replacement is freshened, and binders in
/// `body` that would capture a free variable of the replacement are renamed.
Rewritten subst(const Var& x, const Term& replacement, const Term& body, RewriteState state);

} // namespace dualrw
