#include "dualrw/term.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace dualrw {

std::string_view op_keyword(Op op) {
    switch (op) {
    case Op::Var: return "var";
    case Op::App: return "app";
    case Op::Lam: return "lam";
    case Op::Let: return "let";
    case Op::If: return "if";
    case Op::IFold: return "ifold";
    case Op::ConstReal: return "const";
    case Op::ConstInt: return "int";
    case Op::ConstFin: return "fin";
    case Op::MkPair: return "pair";
    case Op::Fst: return "fst";
    case Op::Snd: return "snd";
    case Op::Build: return "build";
    case Op::Geti: return "geti";
    case Op::Add: return "add";
    case Op::Mul: return "mul";
    case Op::Sub: return "sub";
    case Op::Div: return "div";
    case Op::Lt: return "lt";
    case Op::EqInt: return "eq";
    case Op::FinToInt: return "fin2int";
    case Op::IntToReal: return "int2real";
    }
    return "?";
}

bool is_binder(Op op) { return op == Op::Lam || op == Op::Let; }

bool is_real_binary(Op op) { return op == Op::Add || op == Op::Mul || op == Op::Sub || op == Op::Div; }

Term Term::make(Node n) { return Term(std::make_shared<const Node>(std::move(n))); }

Term Term::var(std::string name, Type ty) {
    return make({.op = Op::Var, .name = std::move(name), .type = std::move(ty)});
}

Term Term::app(Term fn, Term arg) { return make({.op = Op::App, .kids = {std::move(fn), std::move(arg)}}); }

Term Term::lam(std::string name, Type ty, Term body) {
    return make({.op = Op::Lam, .name = std::move(name), .type = std::move(ty), .kids = {std::move(body)}});
}

Term Term::let(std::string name, Type ty, Term bound, Term body) {
    return make({.op = Op::Let,
                 .name = std::move(name),
                 .type = std::move(ty),
                 .kids = {std::move(bound), std::move(body)}});
}

Term Term::ifte(Term cond, Term then_b, Term else_b) {
    return make({.op = Op::If, .kids = {std::move(cond), std::move(then_b), std::move(else_b)}});
}

Term Term::ifold(std::uint64_t n, Term step, Term init) {
    return make({.op = Op::IFold, .size = n, .kids = {std::move(step), std::move(init)}});
}

Term Term::const_real(double value) { return make({.op = Op::ConstReal, .real = value}); }

Term Term::const_int(std::int64_t value) { return make({.op = Op::ConstInt, .integer = value}); }

Term Term::const_fin(std::uint64_t i, std::uint64_t n) {
    if (i >= n)
        throw std::invalid_argument("fin literal " + std::to_string(i) + " out of bound " + std::to_string(n));
    return make({.op = Op::ConstFin, .integer = static_cast<std::int64_t>(i), .size = n});
}

Term Term::mkpair(Term a, Term b) { return make({.op = Op::MkPair, .kids = {std::move(a), std::move(b)}}); }
Term Term::fst(Term p) { return make({.op = Op::Fst, .kids = {std::move(p)}}); }
Term Term::snd(Term p) { return make({.op = Op::Snd, .kids = {std::move(p)}}); }

Term Term::build(std::uint64_t n, Term gen) { return make({.op = Op::Build, .size = n, .kids = {std::move(gen)}}); }

Term Term::geti(std::uint64_t n, Term arr, Term idx) {
    return make({.op = Op::Geti, .size = n, .kids = {std::move(arr), std::move(idx)}});
}

Term Term::add(Term a, Term b) { return make({.op = Op::Add, .kids = {std::move(a), std::move(b)}}); }
Term Term::mul(Term a, Term b) { return make({.op = Op::Mul, .kids = {std::move(a), std::move(b)}}); }
Term Term::sub(Term a, Term b) { return make({.op = Op::Sub, .kids = {std::move(a), std::move(b)}}); }
Term Term::div(Term a, Term b) { return make({.op = Op::Div, .kids = {std::move(a), std::move(b)}}); }
Term Term::lt(Term a, Term b) { return make({.op = Op::Lt, .kids = {std::move(a), std::move(b)}}); }
Term Term::eq_int(Term a, Term b) { return make({.op = Op::EqInt, .kids = {std::move(a), std::move(b)}}); }
Term Term::fin_to_int(Term i) { return make({.op = Op::FinToInt, .kids = {std::move(i)}}); }
Term Term::int_to_real(Term i) { return make({.op = Op::IntToReal, .kids = {std::move(i)}}); }

Term Term::with_children(std::vector<Term> kids) const {
    if (kids.size() != node_->kids.size()) throw std::logic_error("with_children: arity mismatch");
    Node n = *node_;
    n.kids = std::move(kids);
    return make(std::move(n));
}

Term Term::with_child(std::size_t i, Term kid) const {
    std::vector<Term> kids = node_->kids;
    kids.at(i) = std::move(kid);
    return with_children(std::move(kids));
}

std::size_t Term::node_count() const {
    std::size_t total = 1;
    for (const Term& k : children()) total += k.node_count();
    return total;
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.op != y.op || x.integer != y.integer || x.size != y.size || x.name != y.name) return false;
    if (std::bit_cast<std::uint64_t>(x.real) != std::bit_cast<std::uint64_t>(y.real)) return false;
    if ((x.op == Op::Var || is_binder(x.op)) && x.type != y.type) return false;
    if (x.kids.size() != y.kids.size()) return false;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
        if (!(x.kids[i] == y.kids[i])) return false;
    return true;
}

} // namespace dualrw
