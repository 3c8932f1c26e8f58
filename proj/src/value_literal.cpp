#include <cctype>
#include <charconv>

#include "dualrw/syntax.hpp"
#include "dualrw/value.hpp"

namespace dualrw {

namespace {

class LiteralParser {
public:
    explicit LiteralParser(std::string_view src) : src_(src) {}

    Value value(const Type& ty) {
        skip();
        switch (ty.kind()) {
        case Type::Kind::Real: return Value::real(number<double>("real"));
        case Type::Kind::Int: return Value::integer(number<std::int64_t>("integer"));
        case Type::Kind::Fin: {
            std::size_t at = pos_;
            auto i = number<std::uint64_t>("index");
            if (i >= ty.size()) fail(at, "index " + std::to_string(i) + " out of bound " + std::to_string(ty.size()));
            return Value::fin(i, ty.size());
        }
        case Type::Kind::Array: {
            std::size_t at = pos_;
            expect('[');
            std::vector<Value> elems;
            skip();
            if (!peek(']')) {
                elems.push_back(value(ty.elem()));
                while (accept(',')) elems.push_back(value(ty.elem()));
            }
            expect(']');
            if (elems.size() != ty.size())
                fail(at, "expected " + std::to_string(ty.size()) + " elements, found " + std::to_string(elems.size()));
            return Value::array(std::move(elems));
        }
        case Type::Kind::Pair: {
            expect('(');
            Value a = value(ty.left());
            expect(',');
            Value b = value(ty.right());
            expect(')');
            return Value::pair(std::move(a), std::move(b));
        }
        case Type::Kind::Arrow: fail(pos_, "function values have no literal syntax");
        }
        fail(pos_, "unknown type");
    }

    void finish() {
        skip();
        if (pos_ != src_.size()) fail(pos_, "trailing input");
    }

private:
    template <class T>
    T number(const char* what) {
        skip();
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.' ||
                                      src_[pos_] == '-' || src_[pos_] == '+'))
            ++pos_;
        std::string_view tok = src_.substr(start, pos_ - start);
        T v{};
        auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || end != tok.data() + tok.size())
            fail(start, std::string("expected ") + what + " literal");
        return v;
    }

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(pos_, std::string("expected '") + c + "'");
    }

    [[noreturn]] void fail(std::size_t at, const std::string& what) const { throw ParseError(1, at + 1, what); }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace

Value parse_value(std::string_view text, const Type& ty) {
    LiteralParser p(text);
    Value v = p.value(ty);
    p.finish();
    return v;
}

} // namespace dualrw
