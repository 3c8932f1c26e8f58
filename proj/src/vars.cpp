#include "dualrw/vars.hpp"

#include <set>

namespace dualrw {

namespace {

void collect(const Term& t, VarCounts& out, std::vector<Var>& bound) {
    switch (t.op()) {
    case Op::Var: {
        Var v = t.binder();
        for (const Var& b : bound)
            if (b == v) return;
        ++out[v];
        return;
    }
    case Op::Lam:
        bound.push_back(t.binder());
        collect(t.child(0), out, bound);
        bound.pop_back();
        return;
    case Op::Let:
        collect(t.child(0), out, bound);
        bound.push_back(t.binder());
        collect(t.child(1), out, bound);
        bound.pop_back();
        return;
    default:
        for (const Term& k : t.children()) collect(k, out, bound);
    }
}

bool rebinds(const Term& t, const std::string& name, const Type& ty) {
    return t.name() == name && t.var_type() == ty;
}

void all_names(const Term& t, std::set<std::string>& out) {
    if (t.is(Op::Var) || is_binder(t.op())) out.insert(t.name());
    for (const Term& k : t.children()) all_names(k, out);
}

} // namespace

VarCounts free_vars(const Term& t) {
    VarCounts out;
    std::vector<Var> bound;
    collect(t, out, bound);
    return out;
}

std::size_t count_free(const Term& t, const Var& v) {
    switch (t.op()) {
    case Op::Var: return rebinds(t, v.name, v.type) ? 1 : 0;
    case Op::Lam: return rebinds(t, v.name, v.type) ? 0 : count_free(t.child(0), v);
    case Op::Let:
        return count_free(t.child(0), v) + (rebinds(t, v.name, v.type) ? 0 : count_free(t.child(1), v));
    default: {
        std::size_t n = 0;
        for (const Term& k : t.children()) n += count_free(k, v);
        return n;
    }
    }
}

bool occurs_free(const Term& t, const Var& v) {
    switch (t.op()) {
    case Op::Var: return rebinds(t, v.name, v.type);
    case Op::Lam: return !rebinds(t, v.name, v.type) && occurs_free(t.child(0), v);
    case Op::Let: return occurs_free(t.child(0), v) || (!rebinds(t, v.name, v.type) && occurs_free(t.child(1), v));
    default:
        for (const Term& k : t.children())
            if (occurs_free(k, v)) return true;
        return false;
    }
}

Term replace_var(const std::string& old_name, const std::string& new_name, const Type& ty, const Term& t) {
    switch (t.op()) {
    case Op::Var: return rebinds(t, old_name, ty) ? Term::var(new_name, ty) : t;
    case Op::Lam:
        if (rebinds(t, old_name, ty)) return t;
        return t.with_child(0, replace_var(old_name, new_name, ty, t.child(0)));
    case Op::Let: {
        Term bound = replace_var(old_name, new_name, ty, t.child(0));
        if (rebinds(t, old_name, ty)) return t.with_child(0, std::move(bound));
        return t.with_children({std::move(bound), replace_var(old_name, new_name, ty, t.child(1))});
    }
    default: {
        if (t.arity() == 0) return t;
        std::vector<Term> kids;
        kids.reserve(t.arity());
        for (const Term& k : t.children()) kids.push_back(replace_var(old_name, new_name, ty, k));
        return t.with_children(std::move(kids));
    }
    }
}

std::string unused_name(const std::string& base, std::initializer_list<const Term*> terms) {
    std::set<std::string> taken;
    for (const Term* t : terms) all_names(*t, taken);
    if (!taken.contains(base)) return base;
    for (std::size_t i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!taken.contains(candidate)) return candidate;
    }
}

} // namespace dualrw
