#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>

namespace dualrw {

/// Object-language types: real, int, bounded indices, sized arrays, pairs
/// and functions. Immutable; copies share structure.
class Type {
public:
    enum class Kind : std::uint8_t { Real, Int, Fin, Array, Pair, Arrow };

    // `real`
    Type() = default;

    static Type real();
    static Type integer();
    static Type fin(std::uint64_t n);
    static Type array(std::uint64_t n, Type elem);
    static Type pair(Type left, Type right);
    static Type arrow(Type dom, Type cod);

    Kind kind() const { return kind_; }
    bool is(Kind k) const { return kind_ == k; }

    // Size of fin/array.
    std::uint64_t size() const { return size_; }

    // array: elem() ; pair: left()/right() ; arrow: dom()/cod()
    const Type& elem() const;
    const Type& left() const;
    const Type& right() const;
    const Type& dom() const;
    const Type& cod() const;

    // False if any fin/array size below is zero.
    bool well_formed() const;

    /// Surface syntax, e.g. `(array 3 (pair real real))`.
    std::string str() const;

    friend bool operator==(const Type& a, const Type& b);
    friend std::strong_ordering operator<=>(const Type& a, const Type& b);

private:
    struct Children;
    Type(Kind k, std::uint64_t n, std::shared_ptr<const Children> kids)
        : kind_(k), size_(n), kids_(std::move(kids)) {}

    Kind kind_ = Kind::Real;
    std::uint64_t size_ = 0;
    std::shared_ptr<const Children> kids_;
};

struct Type::Children {
    Type first;
    Type second;
};

inline const Type& Type::elem() const { return kids_->first; }
inline const Type& Type::left() const { return kids_->first; }
inline const Type& Type::right() const { return kids_->second; }
inline const Type& Type::dom() const { return kids_->first; }
inline const Type& Type::cod() const { return kids_->second; }

} // namespace dualrw
