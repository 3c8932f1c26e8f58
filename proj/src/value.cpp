#include "dualrw/value.hpp"

#include <cmath>
#include <sstream>

#include "dualrw/eval.hpp"
#include "dualrw/syntax.hpp"

namespace dualrw {

namespace {

[[noreturn]] void wrong_kind(const char* wanted) { throw EvalError(std::string("value is not ") + wanted); }

} // namespace

double Value::as_real() const {
    if (auto p = std::get_if<double>(&repr_)) return *p;
    wrong_kind("a real");
}

std::int64_t Value::as_int() const {
    if (auto p = std::get_if<std::int64_t>(&repr_)) return *p;
    wrong_kind("an int");
}

std::uint64_t Value::fin_index() const {
    if (auto p = std::get_if<FinRepr>(&repr_)) return p->index;
    wrong_kind("an index");
}

std::uint64_t Value::fin_bound() const {
    if (auto p = std::get_if<FinRepr>(&repr_)) return p->bound;
    wrong_kind("an index");
}

std::span<const Value> Value::elements() const {
    if (auto p = std::get_if<std::shared_ptr<const std::vector<Value>>>(&repr_)) return **p;
    wrong_kind("an array");
}

const Value& Value::first() const {
    if (auto p = std::get_if<std::shared_ptr<const std::pair<Value, Value>>>(&repr_)) return (*p)->first;
    wrong_kind("a pair");
}

const Value& Value::second() const {
    if (auto p = std::get_if<std::shared_ptr<const std::pair<Value, Value>>>(&repr_)) return (*p)->second;
    wrong_kind("a pair");
}

const Closure& Value::as_closure() const {
    if (auto p = std::get_if<std::shared_ptr<const Closure>>(&repr_)) return **p;
    wrong_kind("a function");
}

bool Value::matches(const Type& ty) const {
    switch (ty.kind()) {
    case Type::Kind::Real: return kind() == Kind::Real;
    case Type::Kind::Int: return kind() == Kind::Int;
    case Type::Kind::Fin: return kind() == Kind::Fin && fin_bound() == ty.size() && fin_index() < ty.size();
    case Type::Kind::Array: {
        if (kind() != Kind::Array || elements().size() != ty.size()) return false;
        for (const Value& v : elements())
            if (!v.matches(ty.elem())) return false;
        return true;
    }
    case Type::Kind::Pair: return kind() == Kind::Pair && first().matches(ty.left()) && second().matches(ty.right());
    case Type::Kind::Arrow: return kind() == Kind::Closure;
    }
    return false;
}

std::string Value::str() const {
    switch (kind()) {
    case Kind::Real: return format_real(as_real());
    case Kind::Int: return std::to_string(as_int());
    case Kind::Fin: return std::to_string(fin_index());
    case Kind::Array: {
        std::string out = "[";
        bool firstel = true;
        for (const Value& v : elements()) {
            if (!firstel) out += ", ";
            firstel = false;
            out += v.str();
        }
        return out + "]";
    }
    case Kind::Pair: return "(" + first().str() + ", " + second().str() + ")";
    case Kind::Closure: return "<closure>";
    }
    return "?";
}

bool values_close(const Value& a, const Value& b, double rel_tol) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Value::Kind::Real: {
        double x = a.as_real(), y = b.as_real();
        if (x == y) return true;
        if (std::isnan(x) || std::isnan(y)) return std::isnan(x) && std::isnan(y);
        double scale = std::max(std::abs(x), std::abs(y));
        return std::abs(x - y) <= rel_tol * std::max(scale, 1e-300);
    }
    case Value::Kind::Int: return a.as_int() == b.as_int();
    case Value::Kind::Fin: return a.fin_index() == b.fin_index() && a.fin_bound() == b.fin_bound();
    case Value::Kind::Array: {
        auto xs = a.elements(), ys = b.elements();
        if (xs.size() != ys.size()) return false;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (!values_close(xs[i], ys[i], rel_tol)) return false;
        return true;
    }
    case Value::Kind::Pair:
        return values_close(a.first(), b.first(), rel_tol) && values_close(a.second(), b.second(), rel_tol);
    case Value::Kind::Closure: return false;
    }
    return false;
}

} // namespace dualrw
