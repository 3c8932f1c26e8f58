#include <doctest.h>

#include "dualrw/bench.hpp"
#include "dualrw/eval.hpp"
#include "dualrw/syntax.hpp"
#include "dualrw/typecheck.hpp"
#include "support/gen.hpp"
#include "support/reference.hpp"

using namespace dualrw;
using namespace dualrw::testing;

namespace {

Term P(const char* s) { return parse_term(s); }

Value reals(std::initializer_list<double> xs) {
    std::vector<Value> out;
    for (double x : xs) out.push_back(Value::real(x));
    return Value::array(std::move(out));
}

} // namespace

TEST_CASE("vector sum") {
    EvalResult fn = eval_closed(vector_sum(3));
    Value arg = reals({2, 3, 4});
    OpCounter ops;
    Value out = apply(fn.value, std::span<const Value>(&arg, 1), ops);
    CHECK(out.as_real() == 9.0);
    CHECK(ops.real_arith == 3);
    CHECK(ops.array_reads == 3);
    CHECK(ops.loop_iterations == 3);
}

TEST_CASE("if takes the second branch on zero") {
    CHECK(eval_closed(P("(if (int 0) (const 1) (const 2))")).value.as_real() == 2.0);
    CHECK(eval_closed(P("(if (int -3) (const 1) (const 2))")).value.as_real() == 1.0);
}

TEST_CASE("geti of build") {
    EvalResult r = eval_closed(P("(geti 3 (build 3 (lam i (fin 3) (int2real (fin2int (var i (fin 3)))))) (fin 2 3))"));
    CHECK(r.value.as_real() == 2.0);
    CHECK(r.ops.array_alloc_elems == 3);
    CHECK(r.ops.array_reads == 1);
}

TEST_CASE("closed evaluation") {
    CHECK_THROWS_AS(eval_closed(P("(add (var x real) (const 1))")), EvalError);
    CHECK_THROWS_AS(eval_closed(P("(div (const 1.0) (const 0.0))")), EvalError);
    CHECK(eval(P("(add (var x real) (const 1))"), {{Var{"x", Type::real()}, Value::real(2)}}).value.as_real() == 3.0);
    // Same name at another type is a different variable.
    CHECK_THROWS_AS(eval(P("(var x int)"), {{Var{"x", Type::real()}, Value::real(2)}}), EvalError);
}

TEST_CASE("ifold runs ascending indices") {
    // acc * 10 + j over j = 0..3 gives 123 only in ascending order.
    Term t = P("(ifold 4 (lam a real (lam j (fin 4) (add (mul (var a real) (const 10))"
               " (int2real (fin2int (var j (fin 4))))))) (const 0))");
    CHECK(eval_closed(t).value.as_real() == 123.0);
}

TEST_CASE("let evaluates its bound term once") {
    Term t = P("(let y (array 4 real) (build 4 (lam i (fin 4) (const 1)))"
               " (add (geti 4 (var y (array 4 real)) (fin 0 4)) (geti 4 (var y (array 4 real)) (fin 1 4))))");
    EvalResult r = eval_closed(t);
    CHECK(r.value.as_real() == 2.0);
    CHECK(r.ops.array_alloc_elems == 4);
}

TEST_CASE("comparisons") {
    CHECK(eval_closed(P("(lt (const 1) (const 2))")).value.as_int() == 1);
    CHECK(eval_closed(P("(lt (const 2) (const 2))")).value.as_int() == 0);
    CHECK(eval_closed(P("(eq (int 2) (int 2))")).value.as_int() == 1);
    EvalResult r = eval_closed(P("(eq (fin2int (fin 1 3)) (int 1))"));
    CHECK(r.value.as_int() == 1);
    CHECK(r.ops.comparisons == 1);
}

TEST_CASE("closures capture their environment") {
    Term t = P("(let k real (const 5) (let f (-> real real) (lam y real (add (var y real) (var k real)))"
               " (let k real (const 100) (app (var f (-> real real)) (var k real)))))");
    CHECK(eval_closed(t).value.as_real() == 105.0);
}

TEST_CASE("value literals") {
    Type ty = parse_type("(pair (array 2 real) (fin 3))");
    Value v = parse_value("([1, 2.5], 2)", ty);
    CHECK(v.matches(ty));
    CHECK(v.str() == "([1.0, 2.5], 2)");
    CHECK_THROWS_AS(parse_value("[1, 2, 3]", parse_type("(array 2 real)")), ParseError);
    CHECK_THROWS_AS(parse_value("3", parse_type("(fin 3)")), ParseError);
}

TEST_CASE("random closed terms evaluate to values of their type") {
    TermGen g(21);
    int values = 0;
    for (int k = 0; k < 400; ++k) {
        Type ty = g.type(2);
        Term t = g.term(ty, g.uniform(1, 6));
        try {
            EvalResult r = eval_closed(t);
            CHECK(r.value.matches(ty));
            ++values;
        } catch (const EvalError& e) {
            CHECK(std::string(e.what()).find("division by zero") != std::string::npos);
        }
    }
    CHECK(values > 300);
}

TEST_CASE("evaluator agrees with the reference interpreter") {
    TermGen g(22);
    for (int k = 0; k < 300; ++k) {
        Scope scope = free_scope();
        Type ty = g.first_order_type(2);
        Term t = g.term(ty, g.uniform(1, 6), scope);
        Env env = random_env(g, scope);
        RefEnv renv;
        for (const auto& [v, val] : env) renv = ref_bind(v, from_value(val), renv);
        bool ref_failed = false;
        RefValue want;
        try {
            want = ref_eval(t, renv);
        } catch (const RefDivByZero&) {
            ref_failed = true;
        }
        if (ref_failed) {
            CHECK_THROWS_AS(eval(t, env), EvalError);
            continue;
        }
        Value got = eval(t, env).value;
        CHECK_MESSAGE(close_to(want, got, 1e-9), print(t) << " gave " << got.str());
    }
}

TEST_CASE("operation counts are deterministic") {
    TermGen g(23);
    for (int k = 0; k < 100; ++k) {
        Term t = g.term(g.first_order_type(1), g.uniform(1, 5));
        try {
            EvalResult a = eval_closed(t), b = eval_closed(t);
            CHECK(a.ops == b.ops);
        } catch (const EvalError&) {
        }
    }
}
