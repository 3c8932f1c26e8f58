#include <doctest.h>

#include "dualrw/autodiff.hpp"
#include "dualrw/bench.hpp"
#include "dualrw/eval.hpp"
#include "dualrw/rules.hpp"
#include "dualrw/syntax.hpp"
#include "dualrw/typecheck.hpp"
#include "dualrw/vars.hpp"
#include "support/debruijn.hpp"
#include "support/properties.hpp"

using namespace dualrw;
using namespace dualrw::testing;
namespace rl = dualrw::rules;

namespace {

Term P(const char* s) { return parse_term(s); }

Term rewrite(RewriteOutcome (*rule)(const Term&, RewriteState), const char* src) {
    auto out = rule(P(src), {});
    REQUIRE(out);
    return out->term;
}

bool declines(RewriteOutcome (*rule)(const Term&, RewriteState), const char* src) { return !rule(P(src), {}); }

std::size_t count_op(const Term& t, Op op) {
    std::size_t n = t.is(op);
    for (const auto& k : t.children()) n += count_op(k, op);
    return n;
}

} // namespace

TEST_CASE("get-build") {
    CHECK(rewrite(rl::get_build, "(geti 3 (build 3 (var g (-> (fin 3) real))) (var k (fin 3)))") ==
          P("(app (var g (-> (fin 3) real)) (var k (fin 3)))"));
    CHECK(declines(rl::get_build, "(geti 3 (var a (array 3 real)) (var k (fin 3)))"));
}

TEST_CASE("let-subst and let-subst-1") {
    const char* once = "(let x real (mul (var e real) (var e real)) (add (var x real) (const 1)))";
    CHECK(rewrite(rl::let_subst, once) == P("(add (mul (var e real) (var e real)) (const 1))"));
    CHECK(rl::let_subst_n(P(once), {}, 1));

    const char* twice = "(let x real (var e0 real) (add (var x real) (var x real)))";
    CHECK_FALSE(rl::let_subst_n(P(twice), {}, 1));
    CHECK(rl::let_subst(P(twice), {}));

    CHECK(rewrite(rl::let_subst, "(let x real (var e0 real) (const 5))") == P("(const 5)"));
}

TEST_CASE("let-trivial copies only variables and literals") {
    CHECK(rewrite(rl::let_trivial, "(let x real (var y real) (add (var x real) (var x real)))") ==
          P("(add (var y real) (var y real))"));
    CHECK(declines(rl::let_trivial, "(let x real (add (var y real) (const 1)) (var x real))"));
}

TEST_CASE("let-pair") {
    Term out = rewrite(rl::let_pair,
                       "(let p (pair real real) (pair (var a real) (var b real))"
                       " (add (fst (var p (pair real real))) (snd (var p (pair real real)))))");
    CHECK(alpha_equal(out, P("(let u real (var a real) (let w real (var b real) (add (var u real) (var w real))))")));
    CHECK(declines(rl::let_pair, "(let p (pair real real) (pair (var a real) (var b real)) (var p (pair real real)))"));
}

TEST_CASE("fresh-term") {
    auto out = rl::fresh_term(P("(lam y real (var y real))"), {});
    REQUIRE(out);
    CHECK(out->term == P("(lam x0 real (var x0 real))"));
    CHECK(out->state.counter == 1);
    CHECK(rewrite(rl::fresh_term, "(var z real)") == P("(var z real)"));

    Term nested = rewrite(rl::fresh_term, "(lam y real (lam y real (add (var y real) (var z real))))");
    CHECK(nested.name() != nested.child(0).name());
    CHECK(alpha_equal(nested, P("(lam y real (lam y real (add (var y real) (var z real))))")));
}

TEST_CASE("beta introduces a let") {
    CHECK(rewrite(rl::beta, "(app (lam x real (add (var x real) (const 1))) (var c real))") ==
          P("(let x real (var c real) (add (var x real) (const 1)))"));
    CHECK(declines(rl::beta, "(app (var f (-> real real)) (var c real))"));
}

TEST_CASE("pair projections") {
    CHECK(rewrite(rl::fst_pair, "(fst (pair (var u real) (var v int)))") == P("(var u real)"));
    CHECK(rewrite(rl::snd_pair, "(snd (pair (var u real) (var v int)))") == P("(var v int)"));
    CHECK(declines(rl::fst_pair, "(fst (var p (pair real real)))"));
}

TEST_CASE("arithmetic units") {
    CHECK(rewrite(rl::mul_zero_l, "(mul (const 0) (var e real))") == P("(const 0)"));
    CHECK(rewrite(rl::add_zero_r, "(add (var e real) (const 0))") == P("(var e real)"));
    CHECK(rewrite(rl::mul_one_r, "(mul (var e real) (const 1))") == P("(var e real)"));
    CHECK(declines(rl::mul_one_l, "(mul (const 2) (var e real))"));
    CHECK(declines(rl::mul_zero_l, "(mul (const 2) (var e real))"));
}

TEST_CASE("if-const and eq-refl") {
    CHECK(rewrite(rl::if_const, "(if (int 1) (var a real) (var b real))") == P("(var a real)"));
    CHECK(rewrite(rl::if_const, "(if (int 0) (var a real) (var b real))") == P("(var b real)"));
    CHECK(rewrite(rl::eq_refl, "(eq (fin2int (var i (fin 3))) (fin2int (var i (fin 3))))") == P("(int 1)"));
    CHECK(rewrite(rl::eq_refl, "(eq (int 2) (int 3))") == P("(int 0)"));
    CHECK(declines(rl::eq_refl, "(eq (fin2int (var i (fin 3))) (fin2int (var j (fin 3))))"));
}

TEST_CASE("fold-onehot") {
    const char* p_at_j = "(ifold 4 (lam acc real (lam j (fin 4) (add (var acc real)"
                         " (if (eq (fin2int (var i (fin 4))) (fin2int (var j (fin 4))))"
                         " (geti 4 (var p (array 4 real)) (var j (fin 4))) (const 0))))) (const 0))";
    CHECK(rewrite(rl::fold_onehot, p_at_j) == P("(geti 4 (var p (array 4 real)) (var i (fin 4)))"));

    const char* unguarded = "(ifold 4 (lam acc real (lam j (fin 4) (add (var acc real)"
                            " (geti 4 (var p (array 4 real)) (var j (fin 4)))))) (const 0))";
    CHECK(declines(rl::fold_onehot, unguarded));

    // The summand may not read the accumulator.
    const char* reads_acc = "(ifold 4 (lam acc real (lam j (fin 4) (add (var acc real)"
                            " (if (eq (fin2int (var i (fin 4))) (fin2int (var j (fin 4)))) (var acc real)"
                            " (const 0))))) (const 0))";
    CHECK(declines(rl::fold_onehot, reads_acc));

    // For every n and i, both sides agree.
    for (std::uint64_t n = 1; n <= 8; ++n) {
        Type fin = Type::fin(n);
        Term j = Term::var("j", fin);
        Term body = Term::int_to_real(Term::fin_to_int(j));
        for (std::uint64_t i = 0; i < n; ++i) {
            Term guarded = Term::ifte(Term::eq_int(Term::fin_to_int(j), Term::fin_to_int(Term::const_fin(i, n))),
                                      Term::add(body, Term::const_real(1)), Term::const_real(0));
            Term fold = Term::ifold(
                n, Term::lam("acc", Type::real(), Term::lam("j", fin, Term::add(guarded, Term::var("acc", Type::real())))),
                Term::const_real(0));
            auto out = rl::fold_onehot(fold, {});
            REQUIRE(out);
            CHECK(eval_closed(out->term).value.as_real() == eval_closed(fold).value.as_real());
            CHECK(eval_closed(out->term).value.as_real() == static_cast<double>(i) + 1);
        }
    }
}

TEST_CASE("ifold projections") {
    const char* src = "(snd (ifold 3 (lam a (pair real real) (lam j (fin 3)"
                      " (pair (add (fst (var a (pair real real))) (const 1))"
                      " (add (snd (var a (pair real real))) (fst (var a (pair real real)))))))"
                      " (pair (const 0) (const 0))))";
    // The second component reads fst of the accumulator.
    CHECK(declines(rl::snd_ifold, src));
    std::string fst_src = "(fst" + std::string(src).substr(4);
    Term first = rewrite(rl::fst_ifold, fst_src.c_str());
    CHECK(eval_closed(first).value.as_real() == 3.0);
    CHECK(eval_closed(P(fst_src.c_str())).value.as_real() == 3.0);
    CHECK(typecheck(first) == Type::real());
}

TEST_CASE("every registered rule is sound on random redexes") {
    for (const auto& name : rl::default_registry().names()) {
        CAPTURE(name);
        RuleReport r = check_rule(name, 120, std::hash<std::string>{}(name));
        CHECK(r.fired >= 120);
        for (const auto& f : r.failures) FAIL_CHECK(f);
    }
}

TEST_CASE("let-subst-1 never duplicates the bound term") {
    TermGen g(51);
    int fired = 0;
    for (int k = 0; k < 2000 && fired < 200; ++k) {
        Redex r = rule_redex("let-subst-1", g);
        auto out = rl::let_subst_n(r.term, {}, 1);
        if (!out) continue;
        ++fired;
        // Every free variable occurs at most as often as in the let itself.
        VarCounts before = free_vars(r.term), after = free_vars(out->term);
        for (const auto& [v, n] : after) CHECK(n <= before[v]);
        CHECK(out->term.node_count() <= r.term.node_count());
    }
    CHECK(fired >= 200);
}

TEST_CASE("default pipeline order") {
    CHECK(rl::default_pipeline().str() ==
          "normalize(get-build <+ beta <+ let-subst-1 <+ let-trivial <+ let-pair <+ fst-pair <+ snd-pair <+ "
          "fst-ifold <+ snd-ifold <+ eq-refl <+ if-const <+ add-zero <+ mul-zero <+ mul-one <+ fold-onehot)");
}

TEST_CASE("the pipeline removes the nested loop from the vector sum gradient") {
    for (std::uint64_t n : {1, 2, 3, 8, 50}) {
        CAPTURE(n);
        Term naive = vector_sum_gradient_program(n);
        auto opt = run(rl::default_pipeline(), naive, rl::default_registry());
        REQUIRE(opt);
        CHECK(count_op(*opt, Op::IFold) == 0);
        EvalResult a = eval_closed(naive), b = eval_closed(*opt);
        CHECK(values_close(a.value, b.value, 0));
        CHECK(b.ops.total() == n);
        for (const auto& v : b.value.elements()) CHECK(v.as_real() == 1.0);
    }
    auto four = run(rl::default_pipeline(), vector_sum_gradient_program(4), rl::default_registry());
    REQUIRE(four);
    CHECK(alpha_equal(*four, P("(build 4 (lam i (fin 4) (const 1.0)))")));
}

TEST_CASE("the pipeline is idempotent and preserves meaning") {
    auto corpus = pipeline_corpus(52);
    PipelineReport r = check_pipeline(corpus);
    CHECK(r.terms == corpus.size());
    for (const auto& f : r.failures) FAIL_CHECK(f);

    int compared = 0;
    for (const auto& t : corpus) {
        auto ty = typecheck(t);
        if (ty.is(Type::Kind::Arrow)) continue;
        auto opt = run(rl::default_pipeline(), t, rl::default_registry());
        REQUIRE(opt);
        CHECK(typecheck(*opt) == ty);
        try {
            Value a = eval_closed(t).value;
            CHECK_MESSAGE(values_close(a, eval_closed(*opt).value, 1e-12), print(t));
            ++compared;
        } catch (const EvalError&) {
        }
    }
    CHECK(compared > 50);
}
