#include "dualrw/subst.hpp"

#include <charconv>
#include <optional>

#include "dualrw/vars.hpp"

namespace dualrw {

std::pair<std::string, RewriteState> fresh_name(RewriteState state) {
    std::string name = state.next_name();
    return {std::move(name), state};
}

namespace {

void scan_reserved(const Term& t, std::uint64_t& next) {
    if (t.is(Op::Var) || is_binder(t.op())) {
        const std::string& n = t.name();
        if (n.size() > 1 && n[0] == 'x') {
            std::uint64_t k = 0;
            auto [end, ec] = std::from_chars(n.data() + 1, n.data() + n.size(), k);
            if (ec == std::errc{} && end == n.data() + n.size() && k + 1 > next) next = k + 1;
        }
    }
    for (const Term& c : t.children()) scan_reserved(c, next);
}

Term freshen(const Term& t, RewriteState& st) {
    switch (t.op()) {
    case Op::Var: return t;
    case Op::Lam: {
        Term body = freshen(t.child(0), st);
        std::string x = st.next_name();
        return Term::lam(x, t.var_type(), replace_var(t.name(), x, t.var_type(), body));
    }
    case Op::Let: {
        Term bound = freshen(t.child(0), st);
        Term body = freshen(t.child(1), st);
        std::string x = st.next_name();
        return Term::let(x, t.var_type(), std::move(bound), replace_var(t.name(), x, t.var_type(), body));
    }
    default: {
        if (t.arity() == 0) return t;
        std::vector<Term> kids;
        kids.reserve(t.arity());
        for (const Term& k : t.children()) kids.push_back(freshen(k, st));
        return t.with_children(std::move(kids));
    }
    }
}

class Substituter {
public:
    Substituter(const Var& x, const Term& r, RewriteState& st) : x_(x), r_(r), r_free_(free_vars(r)), st_(st) {}

    Term go(const Term& t) {
        if (!occurs_free(t, x_)) return t;
        switch (t.op()) {
        case Op::Var: return freshen(r_, st_);
        case Op::Lam:
        case Op::Let: {
            const bool is_let = t.is(Op::Let);
            std::optional<Term> bound;
            if (is_let) bound = go(t.child(0));
            Term body = t.child(is_let ? 1 : 0);
            if (t.binder() == x_) return t.with_child(0, *bound);
            std::string name = t.name();
            if (r_free_.contains(t.binder()) && occurs_free(body, x_)) {
                name = st_.next_name();
                body = replace_var(t.name(), name, t.var_type(), body);
            }
            body = go(body);
            if (is_let) return Term::let(std::move(name), t.var_type(), std::move(*bound), std::move(body));
            return Term::lam(std::move(name), t.var_type(), std::move(body));
        }
        default: {
            std::vector<Term> kids;
            kids.reserve(t.arity());
            for (const Term& k : t.children()) kids.push_back(go(k));
            return t.with_children(std::move(kids));
        }
        }
    }

private:
    const Var& x_;
    const Term& r_;
    VarCounts r_free_;
    RewriteState& st_;
};

} // namespace

RewriteState reserve_names(const Term& t, RewriteState state) {
    scan_reserved(t, state.counter);
    return state;
}

Rewritten fresh_term(const Term& t, RewriteState state) {
    state = reserve_names(t, state);
    Term out = freshen(t, state);
    return {std::move(out), state};
}

Rewritten subst(const Var& x, const Term& replacement, const Term& body, RewriteState state) {
    state = reserve_names(replacement, reserve_names(body, state));
    Substituter s(x, replacement, state);
    Term out = s.go(body);
    return {std::move(out), state};
}

} // namespace dualrw
