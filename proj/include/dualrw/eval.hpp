#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include "dualrw/term.hpp"
#include "dualrw/value.hpp"

namespace dualrw {

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Primitive operations executed during one evaluation.
struct OpCounter {
    std::uint64_t real_arith = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t array_reads = 0;
    std::uint64_t array_alloc_elems = 0;
    std::uint64_t loop_iterations = 0;

    std::uint64_t total() const {
        return real_arith + comparisons + array_reads + array_alloc_elems + loop_iterations;
    }

    OpCounter& operator+=(const OpCounter& o);
    friend bool operator==(const OpCounter&, const OpCounter&) = default;

    std::string summary() const;
};

using Env = std::map<Var, Value>;

struct EvalResult {
    Value value;
    OpCounter ops;
};

/// Call-by-value evaluation. `env` must bind every free variable of `t`.
/// Throws EvalError on division by zero or an unbound variable.
EvalResult eval(const Term& t, const Env& env = {});

/// eval with an empty environment; rejects terms with free variables.
EvalResult eval_closed(const Term& t);

/// Apply a closure value to arguments in order, accumulating into `ops`.
Value apply(const Value& fn, std::span<const Value> args, OpCounter& ops);

} // namespace dualrw
