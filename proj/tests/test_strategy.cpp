#include <doctest.h>

#include "dualrw/rules.hpp"
#include "dualrw/strategy.hpp"
#include "dualrw/syntax.hpp"
#include "support/properties.hpp"

using namespace dualrw;
using namespace dualrw::testing;

namespace {

Term P(const char* s) { return parse_term(s); }

const RuleRegistry& R() { return rules::default_registry(); }

const Term kSample = P("(add (geti 3 (build 3 (lam i (fin 3) (const 1))) (fin 1 3)) (const 2))");

} // namespace

TEST_CASE("fresh names") {
    auto [a, s1] = fresh_name(RewriteState{0});
    CHECK(a == "x0");
    CHECK(s1.counter == 1);
    auto [b, s8] = fresh_name(RewriteState{7});
    CHECK(b == "x7");
    CHECK(s8.counter == 8);
    auto [c, s2] = fresh_name(s1);
    CHECK(c != a);
}

TEST_CASE("basic combinators") {
    RewriteState st{4};
    CHECK(apply_strategy(Strategy::id(), kSample, st, R()) == Rewritten{kSample, st});
    CHECK_FALSE(apply_strategy(Strategy::fail(), kSample, st, R()));
    CHECK(apply_strategy(Strategy::lchoice(Strategy::fail(), Strategy::id()), kSample, st, R()) ==
          Rewritten{kSample, st});
    CHECK(apply_strategy(Strategy::repeat(Strategy::fail()), kSample, st, R()) == Rewritten{kSample, st});
    CHECK_FALSE(apply_strategy(Strategy::seq(Strategy::id(), Strategy::fail()), kSample, st, R()));
    CHECK_FALSE(apply_strategy(Strategy::seq(Strategy::fail(), Strategy::id()), kSample, st, R()));
}

TEST_CASE("rules apply at the root only") {
    CHECK_FALSE(apply_strategy(Strategy::rule("get-build"), kSample, {}, R()));
}

TEST_CASE("one rewrites the leftmost child where the strategy succeeds") {
    auto out = apply_strategy(Strategy::one(Strategy::rule("get-build")), kSample, {}, R());
    REQUIRE(out);
    CHECK(out->term == P("(add (app (lam i (fin 3) (const 1)) (fin 1 3)) (const 2))"));

    // The left child wins when both could be rewritten.
    Term both = P("(add (fst (pair (const 1) (const 2))) (fst (pair (const 3) (const 4))))");
    auto left = apply_strategy(Strategy::one(Strategy::rule("fst-pair")), both, {}, R());
    REQUIRE(left);
    CHECK(left->term == P("(add (const 1) (fst (pair (const 3) (const 4))))"));

    CHECK_FALSE(apply_strategy(Strategy::one(Strategy::id()), P("(const 1)"), {}, R()));
}

TEST_CASE("lchoice discards the counter of a failed branch") {
    // fresh-term consumes names, then fail throws the work away.
    Term t = P("(lam y real (var y real))");
    Strategy s = Strategy::lchoice(Strategy::seq(Strategy::rule("fresh-term"), Strategy::fail()), Strategy::id());
    auto out = apply_strategy(s, t, RewriteState{3}, R());
    REQUIRE(out);
    CHECK(out->state.counter == 3);
    CHECK(out->term == t);
}

TEST_CASE("topDown tries the root first") {
    Term t = P("(fst (pair (fst (pair (const 1) (const 2))) (const 3)))");
    auto out = apply_strategy(Strategy::top_down(Strategy::rule("fst-pair")), t, {}, R());
    REQUIRE(out);
    CHECK(out->term == P("(fst (pair (const 1) (const 2)))"));
}

TEST_CASE("normalize runs to a fixed point") {
    Term t = P("(fst (pair (fst (pair (const 1) (const 2))) (const 3)))");
    CHECK(run(Strategy::normalize(Strategy::rule("fst-pair")), t, R()) == P("(const 1)"));
    Term done = P("(add (const 1) (const 2))");
    CHECK(run(Strategy::normalize(Strategy::rule("get-build")), done, R()) == done);
    CHECK(run(Strategy::id(), done, R()) == done);
    CHECK_FALSE(run(Strategy::fail(), done, R()));
}

TEST_CASE("engine errors are not failures") {
    CHECK_THROWS_AS(apply_strategy(Strategy::rule("no-such-rule"), kSample, {}, R()), StrategyError);
    // lchoice must not swallow engine errors.
    CHECK_THROWS_AS(apply_strategy(Strategy::lchoice(Strategy::rule("no-such-rule"), Strategy::id()), kSample, {}, R()),
                    StrategyError);
    EngineOptions small;
    small.fuel = 50;
    CHECK_THROWS_AS(apply_strategy(Strategy::repeat(Strategy::id()), kSample, {}, R(), small), StrategyError);
    CHECK_THROWS_AS(apply_strategy(Strategy::normalize(Strategy::rule("fresh-term")), kSample, {}, R(), small),
                    StrategyError);
}

TEST_CASE("type checking of rule results") {
    RuleRegistry bad;
    bad.add("break", [](const Term&, RewriteState st) { return RewriteOutcome{Rewritten{Term::const_int(1), st}}; });
    EngineOptions on;
    on.check_types = true;
    CHECK_THROWS_AS(apply_strategy(Strategy::rule("break"), P("(const 1)"), {}, bad, on), StrategyError);
    CHECK_THROWS_AS(bad.add("break", nullptr), std::invalid_argument);
}

TEST_CASE("rewrite log") {
    std::vector<std::string> log;
    EngineOptions opts;
    opts.log = &log;
    run(Strategy::normalize(Strategy::lchoice(Strategy::rule("get-build"), Strategy::rule("beta"))), kSample, R(), opts);
    CHECK(log == std::vector<std::string>{"get-build", "beta"});
}

TEST_CASE("strategy syntax") {
    CHECK(parse_strategy("normalize(get-build <+ beta)") ==
          Strategy::normalize(Strategy::lchoice(Strategy::rule("get-build"), Strategy::rule("beta"))));
    CHECK(parse_strategy("fail <+ id") == Strategy::lchoice(Strategy::fail(), Strategy::id()));
    CHECK(parse_strategy("a ; b <+ c ; d") ==
          Strategy::lchoice(Strategy::seq(Strategy::rule("a"), Strategy::rule("b")),
                            Strategy::seq(Strategy::rule("c"), Strategy::rule("d"))));
    CHECK(parse_strategy("a <+ b <+ c") ==
          Strategy::lchoice(Strategy::rule("a"), Strategy::lchoice(Strategy::rule("b"), Strategy::rule("c"))));
    CHECK(parse_strategy("a ; b ; c") ==
          Strategy::seq(Strategy::rule("a"), Strategy::seq(Strategy::rule("b"), Strategy::rule("c"))));
    CHECK(parse_strategy("(a <+ b) ; c") ==
          Strategy::seq(Strategy::lchoice(Strategy::rule("a"), Strategy::rule("b")), Strategy::rule("c")));
    CHECK(parse_strategy("topDown(one(repeat(let-subst-1)))") ==
          Strategy::top_down(Strategy::one(Strategy::repeat(Strategy::rule("let-subst-1")))));
    CHECK_THROWS_AS(parse_strategy("repeat("), ParseError);
    CHECK_THROWS_AS(parse_strategy("a <+"), ParseError);
    CHECK_THROWS_AS(parse_strategy(""), ParseError);
    CHECK_THROWS_AS(parse_strategy("a b"), ParseError);
}

TEST_CASE("strategy syntax round trips") {
    TermGen g(41);
    for (int k = 0; k < 200; ++k) {
        Strategy s = random_strategy(g, 3);
        CHECK(parse_strategy(s.str()) == s);
    }
}

TEST_CASE("strategy laws") {
    LawReport r = check_strategy_laws(300, 42);
    CHECK(r.pairs == 300);
    CHECK(r.successes > 50);
    CHECK(r.one_successes > 20);
    for (const auto& f : r.failures) FAIL_CHECK(f);
}
