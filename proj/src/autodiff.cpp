#include "dualrw/autodiff.hpp"

#include <stdexcept>
#include <vector>

#include "dualrw/typecheck.hpp"
#include "dualrw/vars.hpp"

namespace dualrw {

Type dual_type(const Type& t) {
    switch (t.kind()) {
    case Type::Kind::Real: return Type::pair(Type::real(), Type::real());
    case Type::Kind::Int:
    case Type::Kind::Fin: return t;
    case Type::Kind::Array: return Type::array(t.size(), dual_type(t.elem()));
    case Type::Kind::Pair: return Type::pair(dual_type(t.left()), dual_type(t.right()));
    case Type::Kind::Arrow: return Type::arrow(dual_type(t.dom()), dual_type(t.cod()));
    }
    throw std::logic_error("dual_type: unknown kind");
}

namespace {

const Type& dual_real() {
    static const Type t = Type::pair(Type::real(), Type::real());
    return t;
}

bool trivial(const Term& t) {
    switch (t.op()) {
    case Op::Var:
    case Op::ConstReal:
    case Op::ConstInt:
    case Op::ConstFin: return true;
    case Op::MkPair: return trivial(t.child(0)) && trivial(t.child(1));
    default: return false;
    }
}

Term dual_arith(Op op, const Term& a, const Term& b) {
    // Let-bind non-trivial operands; `b` sits inside the scope of `a`'s binder.
    std::vector<std::pair<std::string, Term>> lets;
    Term ra = a, rb = b;
    if (!trivial(a)) {
        std::string n = unused_name("_da", {&a, &b});
        lets.emplace_back(n, a);
        ra = Term::var(n, dual_real());
    }
    if (!trivial(b)) {
        std::string n = unused_name("_db", {&a, &b});
        lets.emplace_back(n, b);
        rb = Term::var(n, dual_real());
    }
    Term a1 = Term::fst(ra), a2 = Term::snd(ra), b1 = Term::fst(rb), b2 = Term::snd(rb);
    Term body = [&] {
        switch (op) {
        case Op::Add: return Term::mkpair(Term::add(a1, b1), Term::add(a2, b2));
        case Op::Sub: return Term::mkpair(Term::sub(a1, b1), Term::sub(a2, b2));
        case Op::Mul: return Term::mkpair(Term::mul(a1, b1), Term::add(Term::mul(a1, b2), Term::mul(a2, b1)));
        case Op::Div:
            return Term::mkpair(Term::div(a1, b1),
                                Term::div(Term::sub(Term::mul(a2, b1), Term::mul(a1, b2)), Term::mul(b1, b1)));
        default: throw std::logic_error("dual_arith: not arithmetic");
        }
    }();
    for (auto it = lets.rbegin(); it != lets.rend(); ++it) body = Term::let(it->first, dual_real(), it->second, body);
    return body;
}

} // namespace

Term dual_term(const Term& t) {
    switch (t.op()) {
    case Op::Var: return Term::var(t.name(), dual_type(t.var_type()));
    case Op::Lam: return Term::lam(t.name(), dual_type(t.var_type()), dual_term(t.child(0)));
    case Op::Let: return Term::let(t.name(), dual_type(t.var_type()), dual_term(t.child(0)), dual_term(t.child(1)));
    case Op::ConstReal: return Term::mkpair(t, Term::const_real(0.0));
    case Op::ConstInt:
    case Op::ConstFin: return t;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: return dual_arith(t.op(), dual_term(t.child(0)), dual_term(t.child(1)));
    case Op::Lt: return Term::lt(Term::fst(dual_term(t.child(0))), Term::fst(dual_term(t.child(1))));
    case Op::IntToReal: return Term::mkpair(Term::int_to_real(dual_term(t.child(0))), Term::const_real(0.0));
    default: {
        std::vector<Term> kids;
        kids.reserve(t.arity());
        for (const Term& k : t.children()) kids.push_back(dual_term(k));
        return t.with_children(std::move(kids));
    }
    }
}

namespace {

std::uint64_t array_size(const Term& v, const char* who) {
    Type ty = typecheck(v);
    if (!ty.is(Type::Kind::Array)) throw std::invalid_argument(std::string(who) + ": argument is not an array");
    return ty.size();
}

} // namespace

namespace {

// Array operands that are not variables are let-bound so the per-element
// body reads a value instead of recomputing the array.
Term bind_array(const Term& v, const std::string& name, std::vector<std::pair<std::string, Term>>& lets) {
    if (v.is(Op::Var)) return v;
    lets.emplace_back(name, v);
    return Term::var(name, *type_of(v));
}

Term wrap_lets(Term body, const std::vector<std::pair<std::string, Term>>& lets) {
    for (auto it = lets.rbegin(); it != lets.rend(); ++it)
        body = Term::let(it->first, *type_of(it->second), it->second, std::move(body));
    return body;
}

} // namespace

Term add_zeroes(const Term& v) {
    std::uint64_t n = array_size(v, "add_zeroes");
    std::vector<std::pair<std::string, Term>> lets;
    Term rv = bind_array(v, unused_name("_azv", {&v}), lets);
    std::string k = unused_name("_azk", {&v});
    Term idx = Term::var(k, Type::fin(n));
    Term body = Term::build(n, Term::lam(k, Type::fin(n), Term::mkpair(Term::geti(n, rv, idx), Term::const_real(0.0))));
    return wrap_lets(std::move(body), lets);
}

Term zip(const Term& v1, const Term& v2) {
    std::uint64_t n = array_size(v1, "zip");
    if (array_size(v2, "zip") != n) throw std::invalid_argument("zip: arrays differ in size");
    std::vector<std::pair<std::string, Term>> lets;
    Term r1 = bind_array(v1, unused_name("_zv", {&v1, &v2}), lets);
    Term r2 = bind_array(v2, unused_name("_zw", {&v1, &v2}), lets);
    std::string k = unused_name("_zk", {&v1, &v2});
    Term idx = Term::var(k, Type::fin(n));
    Term body = Term::build(n, Term::lam(k, Type::fin(n), Term::mkpair(Term::geti(n, r1, idx), Term::geti(n, r2, idx))));
    return wrap_lets(std::move(body), lets);
}

Term one_hot(std::uint64_t n, const Term& i) {
    std::string j = unused_name("_ohj", {&i});
    Term cond = Term::eq_int(Term::fin_to_int(i), Term::fin_to_int(Term::var(j, Type::fin(n))));
    return Term::build(n, Term::lam(j, Type::fin(n), Term::ifte(cond, Term::const_real(1.0), Term::const_real(0.0))));
}

Term loss_diff(const Term& loss, const Term& x, const Term& y, const Term& p, const Term& pbar) {
    Term applied = Term::app(Term::app(Term::app(dual_term(loss), add_zeroes(x)), add_zeroes(y)), zip(p, pbar));
    return Term::snd(applied);
}

namespace {

bool real_array(const Type& t) { return t.is(Type::Kind::Array) && t.elem() == Type::real(); }

} // namespace

Term loss_grad(const Term& loss) {
    Type ty = typecheck(loss);
    bool ok = ty.is(Type::Kind::Arrow) && real_array(ty.dom()) && ty.cod().is(Type::Kind::Arrow) &&
              real_array(ty.cod().dom()) && ty.cod().cod().is(Type::Kind::Arrow) &&
              real_array(ty.cod().cod().dom()) && ty.cod().cod().cod() == Type::real();
    if (!ok)
        throw std::invalid_argument("loss must have type array a real -> array b real -> array n real -> real, got " +
                                    ty.str());
    const Type& xt = ty.dom();
    const Type& yt = ty.cod().dom();
    const Type& pt = ty.cod().cod().dom();
    std::uint64_t n = pt.size();

    std::string xn = unused_name("x", {&loss});
    std::string yn = unused_name("y", {&loss});
    std::string pn = unused_name("p", {&loss});
    std::string in = unused_name("i", {&loss});
    Term x = Term::var(xn, xt), y = Term::var(yn, yt), p = Term::var(pn, pt);
    Term entry = loss_diff(loss, x, y, p, one_hot(n, Term::var(in, Type::fin(n))));
    Term body = Term::build(n, Term::lam(in, Type::fin(n), entry));
    return Term::lam(xn, xt, Term::lam(yn, yt, Term::lam(pn, pt, body)));
}

} // namespace dualrw
