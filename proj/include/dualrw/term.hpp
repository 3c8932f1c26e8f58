#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dualrw/type.hpp"

namespace dualrw {

/// Term constructors. Child order follows the enumerator comments and is
/// the order used by traversals, printing and error locators.
enum class Op : std::uint8_t {
    Var,       // -
    App,       // fn, arg
    Lam,       // body
    Let,       // bound, body
    If,        // cond, then, else
    IFold,     // step, init
    ConstReal, // -
    ConstInt,  // -
    ConstFin,  // -
    MkPair,    // left, right
    Fst,       // pair
    Snd,       // pair
    Build,     // generator
    Geti,      // array, index
    Add,       // lhs, rhs
    Mul,
    Sub,
    Div,
    Lt,
    EqInt,
    FinToInt,  // operand
    IntToReal, // operand
};

std::string_view op_keyword(Op op);

/// A variable is identified by its name together with its type.
struct Var {
    std::string name;
    Type type;

    friend bool operator==(const Var&, const Var&) = default;
    friend std::strong_ordering operator<=>(const Var& a, const Var& b) {
        if (auto c = a.name <=> b.name; c != 0) return c;
        return a.type <=> b.type;
    }
};

/// Immutable term tree with shared subterms.
class Term {
public:
    static Term var(std::string name, Type ty);
    static Term var(const Var& v) { return var(v.name, v.type); }
    static Term app(Term fn, Term arg);
    static Term lam(std::string name, Type ty, Term body);
    static Term let(std::string name, Type ty, Term bound, Term body);
    static Term ifte(Term cond, Term then_b, Term else_b);
    static Term ifold(std::uint64_t n, Term step, Term init);
    static Term const_real(double value);
    static Term const_int(std::int64_t value);
    /// Throws std::invalid_argument unless i < n.
    static Term const_fin(std::uint64_t i, std::uint64_t n);
    static Term mkpair(Term a, Term b);
    static Term fst(Term p);
    static Term snd(Term p);
    static Term build(std::uint64_t n, Term gen);
    static Term geti(std::uint64_t n, Term arr, Term idx);
    static Term add(Term a, Term b);
    static Term mul(Term a, Term b);
    static Term sub(Term a, Term b);
    static Term div(Term a, Term b);
    static Term lt(Term a, Term b);
    static Term eq_int(Term a, Term b);
    static Term fin_to_int(Term i);
    static Term int_to_real(Term i);

    Op op() const { return node_->op; }
    bool is(Op o) const { return node_->op == o; }

    // Var/Lam/Let only.
    const std::string& name() const { return node_->name; }
    const Type& var_type() const { return node_->type; }
    Var binder() const { return {node_->name, node_->type}; }

    double real_value() const { return node_->real; }
    std::int64_t int_value() const { return node_->integer; }
    std::uint64_t fin_value() const { return static_cast<std::uint64_t>(node_->integer); }
    // IFold/Build/Geti size, ConstFin bound.
    std::uint64_t size() const { return node_->size; }

    std::span<const Term> children() const { return node_->kids; }
    const Term& child(std::size_t i) const { return node_->kids[i]; }
    std::size_t arity() const { return node_->kids.size(); }

    /// Same constructor and scalar fields, new children.
    Term with_children(std::vector<Term> kids) const;
    Term with_child(std::size_t i, Term kid) const;

    bool same_node(const Term& other) const { return node_ == other.node_; }

    /// Number of nodes in the tree.
    std::size_t node_count() const;

    /// Canonical single-line surface syntax.
    std::string str() const;

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node {
        Op op = Op::Var;
        std::string name{};
        Type type{};
        double real = 0.0;
        std::int64_t integer = 0;
        std::uint64_t size = 0;
        std::vector<Term> kids{};
    };

    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Term make(Node n);

    std::shared_ptr<const Node> node_;
};

bool is_binder(Op op);
bool is_real_binary(Op op);

} // namespace dualrw
