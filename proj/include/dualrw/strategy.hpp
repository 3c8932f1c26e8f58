#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dualrw/rewrite_state.hpp"
#include "dualrw/term.hpp"

namespace dualrw {

/// Engine errors (unknown rule, exhausted fuel, broken typing). Distinct
/// from strategy failure, which is an empty RewriteOutcome.
class StrategyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A root-only rewrite: succeeds with a new term and counter, or fails.
using Rule = std::function<RewriteOutcome(const Term&, RewriteState)>;

class RuleRegistry {
public:
    /// Throws std::invalid_argument if `name` is taken.
    void add(std::string name, Rule rule);
    const Rule* find(std::string_view name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, Rule, std::less<>> rules_;
};

class Strategy {
public:
    enum class Kind : std::uint8_t { Rule, Id, Fail, Seq, LChoice, Repeat, One, TopDown, Normalize };

    static Strategy rule(std::string name);
    static Strategy id();
    static Strategy fail();
    static Strategy seq(Strategy first, Strategy second);
    static Strategy lchoice(Strategy first, Strategy second);
    static Strategy repeat(Strategy s);
    static Strategy one(Strategy s);
    static Strategy top_down(Strategy s);
    static Strategy normalize(Strategy s);

    Kind kind() const { return node_->kind; }
    const std::string& rule_name() const { return node_->name; }
    const Strategy& operand() const { return node_->kids.at(0); }
    const Strategy& second() const { return node_->kids.at(1); }

    /// Surface syntax accepted by parse_strategy.
    std::string str() const;

    friend bool operator==(const Strategy& a, const Strategy& b);

private:
    struct Node {
        Kind kind;
        std::string name;
        std::vector<Strategy> kids;
    };
    explicit Strategy(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Grammar: id | fail | <rule> | (s) | s ; s | s <+ s | repeat(s) | one(s)
/// | topDown(s) | normalize(s). `;` binds tighter than `<+`; both are
/// right-associative. Throws ParseError.
Strategy parse_strategy(std::string_view src);

struct EngineOptions {
    /// Cap on successful iterations across all repeat/normalize loops.
    std::uint64_t fuel = 100000;
#ifdef NDEBUG
    bool check_types = false;
#else
    bool check_types = true;
#endif
    /// When set, receives the name of every rule that fires, in order.
    std::vector<std::string>* log = nullptr;
};

RewriteOutcome apply_strategy(const Strategy& s, const Term& t, RewriteState state, const RuleRegistry& rules,
                              const EngineOptions& opts = {});

/// Applies `s` from counter 0 and drops the final counter.
std::optional<Term> run(const Strategy& s, const Term& t, const RuleRegistry& rules, const EngineOptions& opts = {});

} // namespace dualrw
