#include "dualrw/rules.hpp"

#include <optional>

#include "dualrw/subst.hpp"
#include "dualrw/typecheck.hpp"
#include "dualrw/vars.hpp"

namespace dualrw::rules {

namespace {

bool is_real_literal(const Term& t, double v) { return t.is(Op::ConstReal) && t.real_value() == v; }

bool is_var(const Term& t, const Var& v) { return t.is(Op::Var) && t.name() == v.name && t.var_type() == v.type; }

RewriteOutcome substitute_let(const Term& t, RewriteState st) {
    return subst(t.binder(), t.child(0), t.child(1), st);
}

// Replace `fst (var v)` by `var on_fst` and `snd (var v)` by `var on_snd`,
// not descending under binders of v. A null target leaves that projection
// alone. Returns nullopt if v still occurs free afterwards.
std::optional<Term> replace_projections(const Term& t, const Var& v, const Var* on_fst, const Var* on_snd) {
    struct Walker {
        const Var& v;
        const Var* on_fst;
        const Var* on_snd;
        bool stray = false;

        Term go(const Term& t) {
            if (t.is(Op::Fst) && on_fst && is_var(t.child(0), v)) return Term::var(*on_fst);
            if (t.is(Op::Snd) && on_snd && is_var(t.child(0), v)) return Term::var(*on_snd);
            switch (t.op()) {
            case Op::Var:
                if (is_var(t, v)) stray = true;
                return t;
            case Op::Lam:
                if (t.binder() == v) return t;
                return t.with_child(0, go(t.child(0)));
            case Op::Let: {
                Term bound = go(t.child(0));
                if (t.binder() == v) return t.with_child(0, std::move(bound));
                return t.with_children({std::move(bound), go(t.child(1))});
            }
            default: {
                if (t.arity() == 0) return t;
                std::vector<Term> kids;
                kids.reserve(t.arity());
                for (const Term& k : t.children()) kids.push_back(go(k));
                return t.with_children(std::move(kids));
            }
            }
        }
    } w{v, on_fst, on_snd};
    Term out = w.go(t);
    if (w.stray) return std::nullopt;
    return out;
}

// Matches `fin2int i == fin2int (var j)` in either orientation; returns i.
std::optional<Term> onehot_index(const Term& cond, const Var& j) {
    if (!cond.is(Op::EqInt)) return std::nullopt;
    const Term& a = cond.child(0);
    const Term& b = cond.child(1);
    if (!a.is(Op::FinToInt) || !b.is(Op::FinToInt)) return std::nullopt;
    if (is_var(b.child(0), j) && !occurs_free(a.child(0), j)) return a.child(0);
    if (is_var(a.child(0), j) && !occurs_free(b.child(0), j)) return b.child(0);
    return std::nullopt;
}

RewriteOutcome ifold_projection(const Term& t, RewriteState st, Op proj) {
    if (!t.is(proj) || !t.child(0).is(Op::IFold)) return std::nullopt;
    const Term& fold = t.child(0);
    const Term& step = fold.child(0);
    const Term& init = fold.child(1);
    if (!step.is(Op::Lam) || !step.child(0).is(Op::Lam) || !init.is(Op::MkPair)) return std::nullopt;
    const Term& inner = step.child(0);
    const Term& body = inner.child(0);
    if (!body.is(Op::MkPair) || !step.var_type().is(Type::Kind::Pair)) return std::nullopt;
    const Var acc = step.binder();
    const Var j = inner.binder();
    if (j == acc) return std::nullopt;
    const std::size_t side = proj == Op::Fst ? 0 : 1;
    const Type& comp_type = side == 0 ? acc.type.left() : acc.type.right();

    st = reserve_names(t, st);
    Var s{st.next_name(), comp_type};
    auto component = side == 0 ? replace_projections(body.child(0), acc, &s, nullptr)
                               : replace_projections(body.child(1), acc, nullptr, &s);
    if (!component) return std::nullopt;
    Term new_step = Term::lam(s.name, s.type, Term::lam(j.name, j.type, std::move(*component)));
    return Rewritten{Term::ifold(fold.size(), std::move(new_step), init.child(side)), st};
}

} // namespace

RewriteOutcome get_build(const Term& t, RewriteState st) {
    if (!t.is(Op::Geti) || !t.child(0).is(Op::Build) || t.child(0).size() != t.size()) return std::nullopt;
    return Rewritten{Term::app(t.child(0).child(0), t.child(1)), st};
}

RewriteOutcome let_subst(const Term& t, RewriteState st) {
    if (!t.is(Op::Let)) return std::nullopt;
    return substitute_let(t, st);
}

RewriteOutcome let_subst_n(const Term& t, RewriteState st, std::size_t threshold) {
    if (!t.is(Op::Let) || count_free(t.child(1), t.binder()) > threshold) return std::nullopt;
    return substitute_let(t, st);
}

RewriteOutcome let_trivial(const Term& t, RewriteState st) {
    if (!t.is(Op::Let)) return std::nullopt;
    switch (t.child(0).op()) {
    case Op::Var:
    case Op::ConstReal:
    case Op::ConstInt:
    case Op::ConstFin: return substitute_let(t, st);
    default: return std::nullopt;
    }
}

RewriteOutcome let_pair(const Term& t, RewriteState st) {
    if (!t.is(Op::Let) || !t.child(0).is(Op::MkPair) || !t.var_type().is(Type::Kind::Pair)) return std::nullopt;
    const Var y = t.binder();
    st = reserve_names(t, st);
    Var first{st.next_name(), y.type.left()};
    Var second{st.next_name(), y.type.right()};
    auto body = replace_projections(t.child(1), y, &first, &second);
    if (!body) return std::nullopt;
    const Term& pair = t.child(0);
    Term inner = Term::let(second.name, second.type, pair.child(1), std::move(*body));
    return Rewritten{Term::let(first.name, first.type, pair.child(0), std::move(inner)), st};
}

RewriteOutcome fresh_term(const Term& t, RewriteState st) { return dualrw::fresh_term(t, st); }

RewriteOutcome beta(const Term& t, RewriteState st) {
    if (!t.is(Op::App) || !t.child(0).is(Op::Lam)) return std::nullopt;
    const Term& fn = t.child(0);
    return Rewritten{Term::let(fn.name(), fn.var_type(), t.child(1), fn.child(0)), st};
}

RewriteOutcome fst_pair(const Term& t, RewriteState st) {
    if (!t.is(Op::Fst) || !t.child(0).is(Op::MkPair)) return std::nullopt;
    return Rewritten{t.child(0).child(0), st};
}

RewriteOutcome snd_pair(const Term& t, RewriteState st) {
    if (!t.is(Op::Snd) || !t.child(0).is(Op::MkPair)) return std::nullopt;
    return Rewritten{t.child(0).child(1), st};
}

RewriteOutcome add_zero_l(const Term& t, RewriteState st) {
    if (!t.is(Op::Add) || !is_real_literal(t.child(0), 0.0)) return std::nullopt;
    return Rewritten{t.child(1), st};
}

RewriteOutcome add_zero_r(const Term& t, RewriteState st) {
    if (!t.is(Op::Add) || !is_real_literal(t.child(1), 0.0)) return std::nullopt;
    return Rewritten{t.child(0), st};
}

// The annihilator rules assume the dropped operand is finite.
RewriteOutcome mul_zero_l(const Term& t, RewriteState st) {
    if (!t.is(Op::Mul) || !is_real_literal(t.child(0), 0.0)) return std::nullopt;
    return Rewritten{Term::const_real(0.0), st};
}

RewriteOutcome mul_zero_r(const Term& t, RewriteState st) {
    if (!t.is(Op::Mul) || !is_real_literal(t.child(1), 0.0)) return std::nullopt;
    return Rewritten{Term::const_real(0.0), st};
}

RewriteOutcome mul_one_l(const Term& t, RewriteState st) {
    if (!t.is(Op::Mul) || !is_real_literal(t.child(0), 1.0)) return std::nullopt;
    return Rewritten{t.child(1), st};
}

RewriteOutcome mul_one_r(const Term& t, RewriteState st) {
    if (!t.is(Op::Mul) || !is_real_literal(t.child(1), 1.0)) return std::nullopt;
    return Rewritten{t.child(0), st};
}

RewriteOutcome if_const(const Term& t, RewriteState st) {
    if (!t.is(Op::If) || !t.child(0).is(Op::ConstInt)) return std::nullopt;
    return Rewritten{t.child(0).int_value() != 0 ? t.child(1) : t.child(2), st};
}

RewriteOutcome eq_refl(const Term& t, RewriteState st) {
    if (!t.is(Op::EqInt)) return std::nullopt;
    const Term& a = t.child(0);
    const Term& b = t.child(1);
    if (a.is(Op::ConstInt) && b.is(Op::ConstInt))
        return Rewritten{Term::const_int(a.int_value() == b.int_value() ? 1 : 0), st};
    if (a == b) return Rewritten{Term::const_int(1), st};
    return std::nullopt;
}

RewriteOutcome fold_onehot(const Term& t, RewriteState st) {
    if (!t.is(Op::IFold) || !is_real_literal(t.child(1), 0.0)) return std::nullopt;
    const Term& step = t.child(0);
    if (!step.is(Op::Lam) || step.var_type() != Type::real() || !step.child(0).is(Op::Lam)) return std::nullopt;
    const Term& inner = step.child(0);
    const Var acc = step.binder();
    const Var j = inner.binder();
    if (j.type != Type::fin(t.size())) return std::nullopt;
    const Term& body = inner.child(0);
    if (!body.is(Op::Add)) return std::nullopt;

    const Term* guarded = nullptr;
    if (is_var(body.child(0), acc)) guarded = &body.child(1);
    else if (is_var(body.child(1), acc)) guarded = &body.child(0);
    if (!guarded || !guarded->is(Op::If) || !is_real_literal(guarded->child(2), 0.0)) return std::nullopt;

    auto index = onehot_index(guarded->child(0), j);
    if (!index) return std::nullopt;
    const Term& e = guarded->child(1);
    if (occurs_free(*index, acc) || occurs_free(e, acc)) return std::nullopt;
    if (type_of(*index) != j.type) return std::nullopt;
    return subst(j, *index, e, st);
}

RewriteOutcome fst_ifold(const Term& t, RewriteState st) { return ifold_projection(t, st, Op::Fst); }

RewriteOutcome snd_ifold(const Term& t, RewriteState st) { return ifold_projection(t, st, Op::Snd); }

const RuleRegistry& default_registry() {
    static const RuleRegistry registry = [] {
        RuleRegistry r;
        r.add("get-build", get_build);
        r.add("let-subst", let_subst);
        r.add("let-subst-1", [](const Term& t, RewriteState st) { return let_subst_n(t, st, 1); });
        r.add("let-trivial", let_trivial);
        r.add("let-pair", let_pair);
        r.add("fresh-term", fresh_term);
        r.add("beta", beta);
        r.add("fst-pair", fst_pair);
        r.add("snd-pair", snd_pair);
        r.add("add-zero-l", add_zero_l);
        r.add("add-zero-r", add_zero_r);
        r.add("mul-zero-l", mul_zero_l);
        r.add("mul-zero-r", mul_zero_r);
        r.add("mul-one-l", mul_one_l);
        r.add("mul-one-r", mul_one_r);
        r.add("add-zero", [](const Term& t, RewriteState st) {
            if (auto r = add_zero_l(t, st)) return r;
            return add_zero_r(t, st);
        });
        r.add("mul-zero", [](const Term& t, RewriteState st) {
            if (auto r = mul_zero_l(t, st)) return r;
            return mul_zero_r(t, st);
        });
        r.add("mul-one", [](const Term& t, RewriteState st) {
            if (auto r = mul_one_l(t, st)) return r;
            return mul_one_r(t, st);
        });
        r.add("if-const", if_const);
        r.add("eq-refl", eq_refl);
        r.add("fold-onehot", fold_onehot);
        r.add("fst-ifold", fst_ifold);
        r.add("snd-ifold", snd_ifold);
        return r;
    }();
    return registry;
}

const std::vector<std::string>& default_pipeline_rules() {
    static const std::vector<std::string> names = {
        "get-build", "beta",      "let-subst-1", "let-trivial", "let-pair", "fst-pair", "snd-pair",   "fst-ifold",
        "snd-ifold", "eq-refl",   "if-const",    "add-zero",    "mul-zero", "mul-one",  "fold-onehot",
    };
    return names;
}

Strategy default_pipeline() {
    const auto& names = default_pipeline_rules();
    Strategy body = Strategy::rule(names.back());
    for (auto it = names.rbegin() + 1; it != names.rend(); ++it) body = Strategy::lchoice(Strategy::rule(*it), body);
    return Strategy::normalize(body);
}

} // namespace dualrw::rules
