#pragma once

#include <string>
#include <vector>

#include "dualrw/strategy.hpp"

namespace dualrw::rules {

// Root-only rewrites. Each returns an empty outcome when its left-hand side
// does not match.

/// geti (build e1) e2  =>  e1 e2
RewriteOutcome get_build(const Term& t, RewriteState st);

/// let x = e0 in e1  =>  e1[x := e0]
RewriteOutcome let_subst(const Term& t, RewriteState st);

/// let_subst guarded by: x occurs free in e1 at most `threshold` times.
RewriteOutcome let_subst_n(const Term& t, RewriteState st, std::size_t threshold);

/// let_subst when e0 is a variable or a literal.
RewriteOutcome let_trivial(const Term& t, RewriteState st);

/// let y = (a, b) in e  =>  let y1 = a in let y2 = b in e[fst y := y1, snd y := y2]
/// when y occurs in e only under fst/snd.
RewriteOutcome let_pair(const Term& t, RewriteState st);

/// Renames every bound variable; always succeeds.
RewriteOutcome fresh_term(const Term& t, RewriteState st);

/// (lam x. b) a  =>  let x = a in b
RewriteOutcome beta(const Term& t, RewriteState st);

RewriteOutcome fst_pair(const Term& t, RewriteState st);
RewriteOutcome snd_pair(const Term& t, RewriteState st);

RewriteOutcome add_zero_l(const Term& t, RewriteState st);
RewriteOutcome add_zero_r(const Term& t, RewriteState st);
RewriteOutcome mul_zero_l(const Term& t, RewriteState st);
RewriteOutcome mul_zero_r(const Term& t, RewriteState st);
RewriteOutcome mul_one_l(const Term& t, RewriteState st);
RewriteOutcome mul_one_r(const Term& t, RewriteState st);

/// if k then a else b, for a literal k.
RewriteOutcome if_const(const Term& t, RewriteState st);

/// eq t t => 1 for syntactically equal t; eq m k on literals folds.
RewriteOutcome eq_refl(const Term& t, RewriteState st);

/// ifold n (lam acc j. acc + (if fin2int i = fin2int j then e else 0)) 0  =>  e[j := i]
/// with acc free in neither i nor e, and j not free in i.
RewriteOutcome fold_onehot(const Term& t, RewriteState st);

/// fst/snd of an ifold whose step builds a pair and whose projected
/// component depends on the accumulator only through the same projection:
/// snd (ifold n (lam acc j. (e1, e2)) (z1, z2))  =>  ifold n (lam s j. e2[snd acc := s]) z2
RewriteOutcome fst_ifold(const Term& t, RewriteState st);
RewriteOutcome snd_ifold(const Term& t, RewriteState st);

/// Registry holding every rule above under its surface name, plus the
/// combined add-zero / mul-zero / mul-one rules.
const RuleRegistry& default_registry();

/// Rule names tried, in order, by the default pipeline.
const std::vector<std::string>& default_pipeline_rules();

/// normalize(r1 <+ r2 <+ ...) over default_pipeline_rules().
Strategy default_pipeline();

} // namespace dualrw::rules
