#include "dualrw/type.hpp"

#include <string>

namespace dualrw {

Type Type::real() { return {}; }

Type Type::integer() { return Type(Kind::Int, 0, nullptr); }

Type Type::fin(std::uint64_t n) { return Type(Kind::Fin, n, nullptr); }

Type Type::array(std::uint64_t n, Type elem) {
    return Type(Kind::Array, n, std::make_shared<const Children>(Children{std::move(elem), Type{}}));
}

Type Type::pair(Type left, Type right) {
    return Type(Kind::Pair, 0, std::make_shared<const Children>(Children{std::move(left), std::move(right)}));
}

Type Type::arrow(Type dom, Type cod) {
    return Type(Kind::Arrow, 0, std::make_shared<const Children>(Children{std::move(dom), std::move(cod)}));
}

bool Type::well_formed() const {
    switch (kind_) {
    case Kind::Real:
    case Kind::Int: return true;
    case Kind::Fin: return size_ >= 1;
    case Kind::Array: return size_ >= 1 && elem().well_formed();
    case Kind::Pair:
    case Kind::Arrow: return kids_->first.well_formed() && kids_->second.well_formed();
    }
    return false;
}

std::string Type::str() const {
    switch (kind_) {
    case Kind::Real: return "real";
    case Kind::Int: return "int";
    case Kind::Fin: return "(fin " + std::to_string(size_) + ")";
    case Kind::Array: return "(array " + std::to_string(size_) + " " + elem().str() + ")";
    case Kind::Pair: return "(pair " + left().str() + " " + right().str() + ")";
    case Kind::Arrow: return "(-> " + dom().str() + " " + cod().str() + ")";
    }
    return "?";
}

bool operator==(const Type& a, const Type& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Type& a, const Type& b) {
    if (a.kids_ == b.kids_ && a.kind_ == b.kind_ && a.size_ == b.size_) return std::strong_ordering::equal;
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    switch (a.kind_) {
    case Type::Kind::Real:
    case Type::Kind::Int:
    case Type::Kind::Fin: return std::strong_ordering::equal;
    case Type::Kind::Array: return a.elem() <=> b.elem();
    case Type::Kind::Pair:
    case Type::Kind::Arrow:
        if (auto c = a.kids_->first <=> b.kids_->first; c != 0) return c;
        return a.kids_->second <=> b.kids_->second;
    }
    return std::strong_ordering::equal;
}

} // namespace dualrw
