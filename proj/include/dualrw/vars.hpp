#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "dualrw/term.hpp"

namespace dualrw {

/// Multiset of free variable occurrences.
using VarCounts = std::map<Var, std::size_t>;

VarCounts free_vars(const Term& t);

/// Free occurrences of `v` in `t`.
std::size_t count_free(const Term& t, const Var& v);

bool occurs_free(const Term& t, const Var& v);

/// Replace free occurrences of `var old ty` with `var fresh ty`. Stops at
/// binders that rebind (old, ty).
Term replace_var(const std::string& old_name, const std::string& new_name, const Type& ty, const Term& t);

/// A name not bound or free anywhere in `t`, derived from `base`.
std::string unused_name(const std::string& base, std::initializer_list<const Term*> terms);

} // namespace dualrw
