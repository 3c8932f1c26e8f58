#include "dualrw/strategy.hpp"

#include <cctype>

#include "dualrw/syntax.hpp"
#include "dualrw/typecheck.hpp"

namespace dualrw {

void RuleRegistry::add(std::string name, Rule rule) {
    if (rules_.contains(name)) throw std::invalid_argument("duplicate rule name " + name);
    rules_.emplace(std::move(name), std::move(rule));
}

const Rule* RuleRegistry::find(std::string_view name) const {
    auto it = rules_.find(name);
    return it == rules_.end() ? nullptr : &it->second;
}

std::vector<std::string> RuleRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : rules_) out.push_back(name);
    return out;
}

Strategy Strategy::rule(std::string name) {
    return Strategy(std::make_shared<const Node>(Node{Kind::Rule, std::move(name), {}}));
}
Strategy Strategy::id() { return Strategy(std::make_shared<const Node>(Node{Kind::Id, {}, {}})); }
Strategy Strategy::fail() { return Strategy(std::make_shared<const Node>(Node{Kind::Fail, {}, {}})); }
Strategy Strategy::seq(Strategy a, Strategy b) {
    return Strategy(std::make_shared<const Node>(Node{Kind::Seq, {}, {std::move(a), std::move(b)}}));
}
Strategy Strategy::lchoice(Strategy a, Strategy b) {
    return Strategy(std::make_shared<const Node>(Node{Kind::LChoice, {}, {std::move(a), std::move(b)}}));
}
Strategy Strategy::repeat(Strategy s) {
    return Strategy(std::make_shared<const Node>(Node{Kind::Repeat, {}, {std::move(s)}}));
}
Strategy Strategy::one(Strategy s) { return Strategy(std::make_shared<const Node>(Node{Kind::One, {}, {std::move(s)}})); }
Strategy Strategy::top_down(Strategy s) {
    return Strategy(std::make_shared<const Node>(Node{Kind::TopDown, {}, {std::move(s)}}));
}
Strategy Strategy::normalize(Strategy s) {
    return Strategy(std::make_shared<const Node>(Node{Kind::Normalize, {}, {std::move(s)}}));
}

bool operator==(const Strategy& a, const Strategy& b) {
    if (a.node_ == b.node_) return true;
    return a.node_->kind == b.node_->kind && a.node_->name == b.node_->name && a.node_->kids == b.node_->kids;
}

namespace {

// Context levels: 0 inside a choice, 1 inside a sequence, 2 for an atom.
std::string show(const Strategy& s, int level) {
    auto wrap = [](bool paren, std::string body) { return paren ? "(" + body + ")" : body; };
    switch (s.kind()) {
    case Strategy::Kind::Rule: return s.rule_name();
    case Strategy::Kind::Id: return "id";
    case Strategy::Kind::Fail: return "fail";
    case Strategy::Kind::Seq: return wrap(level > 1, show(s.operand(), 2) + " ; " + show(s.second(), 1));
    case Strategy::Kind::LChoice: return wrap(level > 0, show(s.operand(), 1) + " <+ " + show(s.second(), 0));
    case Strategy::Kind::Repeat: return "repeat(" + show(s.operand(), 0) + ")";
    case Strategy::Kind::One: return "one(" + show(s.operand(), 0) + ")";
    case Strategy::Kind::TopDown: return "topDown(" + show(s.operand(), 0) + ")";
    case Strategy::Kind::Normalize: return "normalize(" + show(s.operand(), 0) + ")";
    }
    return "?";
}

} // namespace

std::string Strategy::str() const { return show(*this, 0); }

namespace {

class StrategyParser {
public:
    explicit StrategyParser(std::string_view src) : src_(src) {}

    Strategy parse() {
        Strategy s = choice();
        skip_space();
        if (pos_ < src_.size()) error("unexpected '" + std::string(1, src_[pos_]) + "'");
        return s;
    }

private:
    Strategy choice() {
        Strategy left = sequence();
        if (accept("<+")) return Strategy::lchoice(std::move(left), choice());
        return left;
    }

    Strategy sequence() {
        Strategy left = atom();
        if (accept(";")) return Strategy::seq(std::move(left), sequence());
        return left;
    }

    Strategy atom() {
        if (accept("(")) {
            Strategy inner = choice();
            expect(")");
            return inner;
        }
        std::string word = name();
        if (word == "id") return Strategy::id();
        if (word == "fail") return Strategy::fail();
        using Make = Strategy (*)(Strategy);
        Make make = nullptr;
        if (word == "repeat") make = &Strategy::repeat;
        if (word == "one") make = &Strategy::one;
        if (word == "topDown") make = &Strategy::top_down;
        if (word == "normalize") make = &Strategy::normalize;
        if (make) {
            expect("(");
            Strategy inner = choice();
            expect(")");
            return make(std::move(inner));
        }
        return Strategy::rule(std::move(word));
    }

    std::string name() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '-' || src_[pos_] == '_'))
            ++pos_;
        if (start == pos_) {
            if (pos_ >= src_.size()) error("unexpected end of strategy");
            error("expected a strategy, found '" + std::string(1, src_[pos_]) + "'");
        }
        return std::string(src_.substr(start, pos_ - start));
    }

    bool accept(std::string_view tok) {
        skip_space();
        if (src_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok) {
        if (!accept(tok)) {
            if (pos_ >= src_.size()) error("expected '" + std::string(tok) + "' before end of strategy");
            error("expected '" + std::string(tok) + "'");
        }
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    [[noreturn]] void error(const std::string& what) const { throw ParseError(1, pos_ + 1, what); }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Engine {
public:
    Engine(const RuleRegistry& rules, const EngineOptions& opts) : rules_(rules), opts_(opts), fuel_(opts.fuel) {}

    RewriteOutcome apply(const Strategy& s, const Term& t, RewriteState st) {
        switch (s.kind()) {
        case Strategy::Kind::Id: return Rewritten{t, st};
        case Strategy::Kind::Fail: return std::nullopt;
        case Strategy::Kind::Rule: return apply_rule(s.rule_name(), t, st);
        case Strategy::Kind::Seq: {
            auto first = apply(s.operand(), t, st);
            if (!first) return std::nullopt;
            return apply(s.second(), first->term, first->state);
        }
        case Strategy::Kind::LChoice: {
            if (auto first = apply(s.operand(), t, st)) return first;
            return apply(s.second(), t, st);
        }
        case Strategy::Kind::Repeat: return repeat(s.operand(), t, st);
        case Strategy::Kind::One: return one(s.operand(), t, st);
        case Strategy::Kind::TopDown: return top_down(s.operand(), t, st);
        case Strategy::Kind::Normalize: return normalize(s.operand(), t, st);
        }
        throw StrategyError("unknown strategy constructor");
    }

private:
    RewriteOutcome apply_rule(const std::string& name, const Term& t, RewriteState st) {
        const Rule* rule = rules_.find(name);
        if (!rule) throw StrategyError("unknown rule '" + name + "'");
        RewriteOutcome out = (*rule)(t, st);
        if (!out) return out;
        if (opts_.check_types) {
            auto before = type_of(t);
            auto after = type_of(out->term);
            if (before != after)
                throw StrategyError("rule '" + name + "' changed the type of " + t.str() + " to " +
                                    (after ? after->str() : "<ill-typed>"));
        }
        if (opts_.log) opts_.log->push_back(name);
        return out;
    }

    void burn() {
        if (fuel_ == 0) throw StrategyError("fuel exhausted after " + std::to_string(opts_.fuel) + " iterations");
        --fuel_;
    }

    // repeat(s) = (s ; repeat(s)) <+ id, unrolled.
    RewriteOutcome repeat(const Strategy& s, const Term& t, RewriteState st) {
        Rewritten cur{t, st};
        while (auto next = apply(s, cur.term, cur.state)) {
            burn();
            cur = std::move(*next);
        }
        return cur;
    }

    RewriteOutcome one(const Strategy& s, const Term& t, RewriteState st) {
        for (std::size_t i = 0; i < t.arity(); ++i) {
            if (auto r = apply(s, t.child(i), st)) return Rewritten{t.with_child(i, std::move(r->term)), r->state};
        }
        return std::nullopt;
    }

    // topDown(s) = s <+ one(topDown(s))
    RewriteOutcome top_down(const Strategy& s, const Term& t, RewriteState st) {
        if (auto r = apply(s, t, st)) return r;
        for (std::size_t i = 0; i < t.arity(); ++i) {
            if (auto r = top_down(s, t.child(i), st))
                return Rewritten{t.with_child(i, std::move(r->term)), r->state};
        }
        return std::nullopt;
    }

    // normalize(s) = repeat(topDown(s))
    RewriteOutcome normalize(const Strategy& s, const Term& t, RewriteState st) {
        Rewritten cur{t, st};
        while (auto next = top_down(s, cur.term, cur.state)) {
            burn();
            cur = std::move(*next);
        }
        return cur;
    }

    const RuleRegistry& rules_;
    const EngineOptions& opts_;
    std::uint64_t fuel_;
};

} // namespace

Strategy parse_strategy(std::string_view src) { return StrategyParser(src).parse(); }

RewriteOutcome apply_strategy(const Strategy& s, const Term& t, RewriteState state, const RuleRegistry& rules,
                              const EngineOptions& opts) {
    return Engine(rules, opts).apply(s, t, state);
}

std::optional<Term> run(const Strategy& s, const Term& t, const RuleRegistry& rules, const EngineOptions& opts) {
    auto out = apply_strategy(s, t, RewriteState{}, rules, opts);
    if (!out) return std::nullopt;
    return std::move(out->term);
}

} // namespace dualrw
