#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dualrw/type.hpp"

namespace dualrw {

struct Closure; // defined by the evaluator

class Value {
public:
    enum class Kind : std::uint8_t { Real, Int, Fin, Array, Pair, Closure };

    Value() = default;
    static Value real(double x) { return Value(Repr{x}); }
    static Value integer(std::int64_t k) { return Value(Repr{k}); }
    static Value fin(std::uint64_t i, std::uint64_t n) { return Value(Repr{FinRepr{i, n}}); }
    static Value array(std::vector<Value> elems) {
        return Value(Repr{std::make_shared<const std::vector<Value>>(std::move(elems))});
    }
    static Value pair(Value a, Value b) {
        return Value(Repr{std::make_shared<const std::pair<Value, Value>>(std::move(a), std::move(b))});
    }
    static Value closure(std::shared_ptr<const Closure> c) { return Value(Repr{std::move(c)}); }

    Kind kind() const { return static_cast<Kind>(repr_.index()); }

    // Accessors throw EvalError on a kind mismatch.
    double as_real() const;
    std::int64_t as_int() const;
    std::uint64_t fin_index() const;
    std::uint64_t fin_bound() const;
    std::span<const Value> elements() const;
    const Value& first() const;
    const Value& second() const;
    const Closure& as_closure() const;

    /// True if the value's shape matches `ty` (sizes, fin bounds, nesting).
    bool matches(const Type& ty) const;

    std::string str() const;

private:
    struct FinRepr {
        std::uint64_t index;
        std::uint64_t bound;
    };
    using Repr = std::variant<double, std::int64_t, FinRepr, std::shared_ptr<const std::vector<Value>>,
                              std::shared_ptr<const std::pair<Value, Value>>, std::shared_ptr<const Closure>>;

    explicit Value(Repr r) : repr_(std::move(r)) {}

    Repr repr_{0.0};
};

/// Exact for int/fin, relative tolerance for reals (absolute near zero).
/// Closures never compare equal.
bool values_close(const Value& a, const Value& b, double rel_tol);

} // namespace dualrw

namespace dualrw {

/// Parses a value literal against its expected type: numbers for scalars,
/// `[a, b, ...]` for arrays, `(a, b)` for pairs. Throws ParseError.
Value parse_value(std::string_view text, const Type& ty);

} // namespace dualrw
