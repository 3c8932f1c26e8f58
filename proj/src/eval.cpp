#include "dualrw/eval.hpp"

#include <sstream>
#include <vector>

#include "dualrw/vars.hpp"

namespace dualrw {

OpCounter& OpCounter::operator+=(const OpCounter& o) {
    real_arith += o.real_arith;
    comparisons += o.comparisons;
    array_reads += o.array_reads;
    array_alloc_elems += o.array_alloc_elems;
    loop_iterations += o.loop_iterations;
    return *this;
}

std::string OpCounter::summary() const {
    std::ostringstream out;
    out << "realArith=" << real_arith << " comparisons=" << comparisons << " arrayReads=" << array_reads
        << " arrayAllocElems=" << array_alloc_elems << " loopIterations=" << loop_iterations
        << " totalOps=" << total();
    return out.str();
}

namespace {

// Lowered term: variables are resolved to environment depths, free
// variables to constants.
struct Code {
    Op op;
    std::uint32_t depth = 0;
    bool constant = false;
    Value value{};
    std::uint64_t size = 0;
    std::vector<Code> kids{};
};

struct Frame {
    Value value;
    std::shared_ptr<const Frame> next;
};
using FramePtr = std::shared_ptr<const Frame>;

FramePtr push(Value v, FramePtr next) { return std::make_shared<const Frame>(Frame{std::move(v), std::move(next)}); }

struct Program {
    Code root;
};

} // namespace

struct Closure {
    std::shared_ptr<const Program> program;
    const Code* body;
    FramePtr env;
};

namespace {

class Lowering {
public:
    explicit Lowering(const Env& env) : env_(env) {}

    Code lower(const Term& t) {
        Code c{.op = t.op(), .size = t.size()};
        switch (t.op()) {
        case Op::Var: {
            Var v = t.binder();
            for (std::size_t i = scope_.size(); i-- > 0;) {
                if (scope_[i] == v) {
                    c.depth = static_cast<std::uint32_t>(scope_.size() - 1 - i);
                    return c;
                }
            }
            auto it = env_.find(v);
            if (it == env_.end()) throw EvalError("unbound variable " + v.name + " : " + v.type.str());
            c.constant = true;
            c.value = it->second;
            return c;
        }
        case Op::Lam:
            scope_.push_back(t.binder());
            c.kids.push_back(lower(t.child(0)));
            scope_.pop_back();
            return c;
        case Op::Let:
            c.kids.push_back(lower(t.child(0)));
            scope_.push_back(t.binder());
            c.kids.push_back(lower(t.child(1)));
            scope_.pop_back();
            return c;
        case Op::ConstReal: c.value = Value::real(t.real_value()); return c;
        case Op::ConstInt: c.value = Value::integer(t.int_value()); return c;
        case Op::ConstFin: c.value = Value::fin(t.fin_value(), t.size()); return c;
        default:
            c.kids.reserve(t.arity());
            for (const Term& k : t.children()) c.kids.push_back(lower(k));
            return c;
        }
    }

private:
    const Env& env_;
    std::vector<Var> scope_;
};

class Machine {
public:
    Machine(std::shared_ptr<const Program> program, OpCounter& ops) : program_(std::move(program)), ops_(ops) {}

    Value run(const Code& c, const FramePtr& env) {
        switch (c.op) {
        case Op::Var: {
            if (c.constant) return c.value;
            const Frame* f = env.get();
            for (std::uint32_t i = 0; i < c.depth; ++i) f = f->next.get();
            return f->value;
        }
        case Op::ConstReal:
        case Op::ConstInt:
        case Op::ConstFin: return c.value;
        case Op::Lam:
            return Value::closure(std::make_shared<const Closure>(Closure{program_, &c.kids[0], env}));
        case Op::App: {
            const Code& fn = c.kids[0];
            if (fn.op == Op::Lam) return run(fn.kids[0], push(run(c.kids[1], env), env));
            Value f = run(fn, env);
            Value a = run(c.kids[1], env);
            return call(f, std::move(a));
        }
        case Op::Let: return run(c.kids[1], push(run(c.kids[0], env), env));
        case Op::If: {
            std::int64_t cond = run(c.kids[0], env).as_int();
            return run(c.kids[cond != 0 ? 1 : 2], env);
        }
        case Op::IFold: {
            const Code& step = c.kids[0];
            Value acc = run(c.kids[1], env);
            ops_.loop_iterations += c.size;
            if (step.op == Op::Lam && step.kids[0].op == Op::Lam) {
                const Code& body = step.kids[0].kids[0];
                for (std::uint64_t j = 0; j < c.size; ++j)
                    acc = run(body, push(Value::fin(j, c.size), push(std::move(acc), env)));
                return acc;
            }
            Value f = run(step, env);
            for (std::uint64_t j = 0; j < c.size; ++j) acc = call(call(f, std::move(acc)), Value::fin(j, c.size));
            return acc;
        }
        case Op::MkPair: {
            Value a = run(c.kids[0], env);
            return Value::pair(std::move(a), run(c.kids[1], env));
        }
        case Op::Fst: return run(c.kids[0], env).first();
        case Op::Snd: return run(c.kids[0], env).second();
        case Op::Build: {
            const Code& gen = c.kids[0];
            std::vector<Value> elems;
            elems.reserve(c.size);
            ops_.array_alloc_elems += c.size;
            if (gen.op == Op::Lam) {
                for (std::uint64_t i = 0; i < c.size; ++i)
                    elems.push_back(run(gen.kids[0], push(Value::fin(i, c.size), env)));
            } else {
                Value g = run(gen, env);
                for (std::uint64_t i = 0; i < c.size; ++i) elems.push_back(call(g, Value::fin(i, c.size)));
            }
            return Value::array(std::move(elems));
        }
        case Op::Geti: {
            Value arr = run(c.kids[0], env);
            std::uint64_t i = run(c.kids[1], env).fin_index();
            ++ops_.array_reads;
            auto elems = arr.elements();
            if (i >= elems.size()) throw EvalError("index out of bounds");
            return elems[i];
        }
        case Op::Add:
        case Op::Mul:
        case Op::Sub:
        case Op::Div: {
            double a = run(c.kids[0], env).as_real();
            double b = run(c.kids[1], env).as_real();
            ++ops_.real_arith;
            switch (c.op) {
            case Op::Add: return Value::real(a + b);
            case Op::Mul: return Value::real(a * b);
            case Op::Sub: return Value::real(a - b);
            default:
                if (b == 0.0) throw EvalError("division by zero");
                return Value::real(a / b);
            }
        }
        case Op::Lt: {
            double a = run(c.kids[0], env).as_real();
            double b = run(c.kids[1], env).as_real();
            ++ops_.comparisons;
            return Value::integer(a < b ? 1 : 0);
        }
        case Op::EqInt: {
            std::int64_t a = run(c.kids[0], env).as_int();
            std::int64_t b = run(c.kids[1], env).as_int();
            ++ops_.comparisons;
            return Value::integer(a == b ? 1 : 0);
        }
        case Op::FinToInt: return Value::integer(static_cast<std::int64_t>(run(c.kids[0], env).fin_index()));
        case Op::IntToReal: return Value::real(static_cast<double>(run(c.kids[0], env).as_int()));
        }
        throw EvalError("unknown constructor");
    }

    Value call(const Value& f, Value arg) {
        const Closure& cl = f.as_closure();
        Machine inner(cl.program, ops_);
        return inner.run(*cl.body, push(std::move(arg), cl.env));
    }

private:
    std::shared_ptr<const Program> program_;
    OpCounter& ops_;
};

} // namespace

EvalResult eval(const Term& t, const Env& env) {
    auto program = std::make_shared<Program>();
    program->root = Lowering(env).lower(t);
    EvalResult result;
    Machine m(program, result.ops);
    result.value = m.run(program->root, nullptr);
    return result;
}

EvalResult eval_closed(const Term& t) {
    VarCounts fv = free_vars(t);
    if (!fv.empty()) throw EvalError("term has free variable " + fv.begin()->first.name);
    return eval(t);
}

Value apply(const Value& fn, std::span<const Value> args, OpCounter& ops) {
    Value cur = fn;
    for (const Value& a : args) {
        const Closure& cl = cur.as_closure();
        Machine m(cl.program, ops);
        cur = m.run(*cl.body, push(a, cl.env));
    }
    return cur;
}

} // namespace dualrw
