#include "dualrw/typecheck.hpp"

#include <sstream>

namespace dualrw {

TypeError::TypeError(Kind kind, Locator where, const std::string& what, std::optional<Type> expected,
                     std::optional<Type> actual)
    : std::runtime_error(what), kind_(kind), where_(std::move(where)), expected_(std::move(expected)),
      actual_(std::move(actual)) {}

std::string to_string(TypeError::Kind kind) {
    switch (kind) {
    case TypeError::Kind::Mismatch: return "mismatch";
    case TypeError::Kind::IllFormedIndex: return "ill-formed index";
    case TypeError::Kind::Arity: return "arity";
    }
    return "?";
}

std::string locator_string(const Locator& where) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < where.size(); ++i) out << (i ? "," : "") << where[i];
    out << "]";
    return out.str();
}

const Term& subterm_at(const Term& root, std::span<const std::size_t> where) {
    const Term* cur = &root;
    for (std::size_t i : where) {
        if (i >= cur->arity()) throw std::out_of_range("locator leaves the term");
        cur = &cur->child(i);
    }
    return *cur;
}

namespace {

class Checker {
public:
    Type check(const Term& t) {
        switch (t.op()) {
        case Op::Var:
            require_well_formed(t.var_type());
            return t.var_type();
        case Op::App: {
            Type f = descend(t, 0);
            Type a = descend(t, 1);
            if (!f.is(Type::Kind::Arrow))
                throw TypeError(TypeError::Kind::Arity, path_, "application of a non-function of type " + f.str(),
                                std::nullopt, f);
            expect(1, f.dom(), a);
            return f.cod();
        }
        case Op::Lam: {
            require_well_formed(t.var_type());
            Type body = descend(t, 0);
            return Type::arrow(t.var_type(), body);
        }
        case Op::Let: {
            require_well_formed(t.var_type());
            Type bound = descend(t, 0);
            Type body = descend(t, 1);
            expect(0, t.var_type(), bound);
            return body;
        }
        case Op::If: {
            Type c = descend(t, 0);
            Type a = descend(t, 1);
            Type b = descend(t, 2);
            expect(0, Type::integer(), c);
            expect(2, a, b);
            return a;
        }
        case Op::IFold: {
            require_size(t.size());
            Type step = descend(t, 0);
            Type init = descend(t, 1);
            // A well-formed step fixes the accumulator type; otherwise the step is blamed.
            if (step.is(Type::Kind::Arrow) && step.cod().is(Type::Kind::Arrow) &&
                step.cod().dom() == Type::fin(t.size()) && step.cod().cod() == step.dom()) {
                expect(1, step.dom(), init);
                return init;
            }
            expect(0, Type::arrow(init, Type::arrow(Type::fin(t.size()), init)), step);
            return init;
        }
        case Op::ConstReal: return Type::real();
        case Op::ConstInt: return Type::integer();
        case Op::ConstFin:
            require_size(t.size());
            if (t.fin_value() >= t.size())
                throw TypeError(TypeError::Kind::IllFormedIndex, path_, "fin literal out of bound");
            return Type::fin(t.size());
        case Op::MkPair: {
            Type a = descend(t, 0);
            Type b = descend(t, 1);
            return Type::pair(a, b);
        }
        case Op::Fst:
        case Op::Snd: {
            Type p = descend(t, 0);
            if (!p.is(Type::Kind::Pair))
                throw at_child(0, TypeError(TypeError::Kind::Mismatch, {}, "projection of non-pair type " + p.str(),
                                            std::nullopt, p));
            return t.is(Op::Fst) ? p.left() : p.right();
        }
        case Op::Build: {
            require_size(t.size());
            Type g = descend(t, 0);
            if (!g.is(Type::Kind::Arrow) || g.dom() != Type::fin(t.size()))
                throw at_child(0, TypeError(TypeError::Kind::Mismatch, {},
                                            "build generator must take " + Type::fin(t.size()).str(),
                                            std::nullopt, g));
            return Type::array(t.size(), g.cod());
        }
        case Op::Geti: {
            require_size(t.size());
            Type arr = descend(t, 0);
            Type idx = descend(t, 1);
            if (!arr.is(Type::Kind::Array) || arr.size() != t.size())
                throw at_child(0, TypeError(TypeError::Kind::Mismatch, {},
                                            "geti " + std::to_string(t.size()) + " expects an array of that size",
                                            std::nullopt, arr));
            expect(1, Type::fin(t.size()), idx);
            return arr.elem();
        }
        case Op::Add:
        case Op::Mul:
        case Op::Sub:
        case Op::Div:
        case Op::Lt: {
            Type a = descend(t, 0);
            Type b = descend(t, 1);
            expect(0, Type::real(), a);
            expect(1, Type::real(), b);
            return t.is(Op::Lt) ? Type::integer() : Type::real();
        }
        case Op::EqInt: {
            Type a = descend(t, 0);
            Type b = descend(t, 1);
            expect(0, Type::integer(), a);
            expect(1, Type::integer(), b);
            return Type::integer();
        }
        case Op::FinToInt: {
            Type i = descend(t, 0);
            if (!i.is(Type::Kind::Fin))
                throw at_child(0, TypeError(TypeError::Kind::Mismatch, {}, "fin2int of non-index type " + i.str(),
                                            std::nullopt, i));
            return Type::integer();
        }
        case Op::IntToReal: {
            Type i = descend(t, 0);
            expect(0, Type::integer(), i);
            return Type::real();
        }
        }
        throw std::logic_error("typecheck: unknown constructor");
    }

private:
    Type descend(const Term& t, std::size_t i) {
        path_.push_back(i);
        Type result = check(t.child(i));
        path_.pop_back();
        return result;
    }

    TypeError at_child(std::size_t i, const TypeError& e) {
        Locator where = path_;
        where.push_back(i);
        return TypeError(e.kind(), std::move(where), e.what(), e.expected(), e.actual());
    }

    void expect(std::size_t child, const Type& expected, const Type& actual) {
        if (expected == actual) return;
        throw at_child(child, TypeError(TypeError::Kind::Mismatch, {},
                                        "expected " + expected.str() + " but found " + actual.str(), expected,
                                        actual));
    }

    void require_size(std::uint64_t n) {
        if (n == 0) throw TypeError(TypeError::Kind::IllFormedIndex, path_, "size must be at least 1");
    }

    void require_well_formed(const Type& ty) {
        if (!ty.well_formed())
            throw TypeError(TypeError::Kind::IllFormedIndex, path_, "ill-formed type " + ty.str(), std::nullopt, ty);
    }

    Locator path_;
};

} // namespace

Type typecheck(const Term& t) { return Checker{}.check(t); }

std::optional<Type> type_of(const Term& t) {
    try {
        return typecheck(t);
    } catch (const TypeError&) {
        return std::nullopt;
    }
}

} // namespace dualrw
