#pragma once

#include "dualrw/term.hpp"

namespace dualrw {

/// Replaces every `real` with `(pair real real)`; other constructors are kept.
Type dual_type(const Type& t);

/// Forward-mode dual-numbers transformation. For well-typed `t`,
/// typecheck(dual_term(t)) == dual_type(typecheck(t)).
///
/// Arithmetic is expanded in place. Operands that are not variables or
/// literals are let-bound first so that each is evaluated once.
Term dual_term(const Term& t);

/// `build n (lam k. (v[k], 0))` for `v : array n a`.
Term add_zeroes(const Term& v);

/// `build n (lam k. (v1[k], v2[k]))` for two arrays of size n.
Term zip(const Term& v1, const Term& v2);

/// `build n (lam j. if i = j then 1 else 0)` for `i : fin n`.
Term one_hot(std::uint64_t n, const Term& i);

/// Directional derivative of `loss : array a real -> array b real -> array n real -> real`
/// at parameters `p` in direction `pbar`.
Term loss_diff(const Term& loss, const Term& x, const Term& y, const Term& p, const Term& pbar);

/// `lam x. lam y. lam p. build n (lam i. loss_diff loss x y p (one_hot n i))`
Term loss_grad(const Term& loss);

} // namespace dualrw
