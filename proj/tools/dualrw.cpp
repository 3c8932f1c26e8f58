#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dualrw/autodiff.hpp"
#include "dualrw/bench.hpp"
#include "dualrw/eval.hpp"
#include "dualrw/futhark.hpp"
#include "dualrw/rules.hpp"
#include "dualrw/strategy.hpp"
#include "dualrw/syntax.hpp"
#include "dualrw/typecheck.hpp"

using namespace dualrw;

namespace {

constexpr int kStrategyFailed = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Term load(const std::string& path) { return parse_term(read_file(path)); }

Strategy pick_strategy(const std::string& text) {
    return text.empty() ? rules::default_pipeline() : parse_strategy(text);
}

// Peel the parameter types off an arrow type.
std::vector<Type> parameter_types(Type ty, std::size_t count) {
    std::vector<Type> out;
    for (std::size_t i = 0; i < count; ++i) {
        if (!ty.is(Type::Kind::Arrow))
            throw UsageError("term of type " + ty.str() + " takes fewer than " + std::to_string(count) +
                             " arguments");
        out.push_back(ty.dom());
        ty = ty.cod();
    }
    return out;
}

std::vector<Value> parse_args(const std::vector<std::string>& texts, const std::vector<Type>& types) {
    std::vector<Value> out;
    for (std::size_t i = 0; i < texts.size(); ++i) out.push_back(parse_value(texts[i], types[i]));
    return out;
}

bool is_real_array(const Type& t) { return t.is(Type::Kind::Array) && t.elem().is(Type::Kind::Real); }

// `array n real -> real` is accepted as a loss that ignores its data.
Term as_loss(const Term& t) {
    Type ty = typecheck(t);
    if (ty.is(Type::Kind::Arrow) && is_real_array(ty.dom()) && ty.cod().is(Type::Kind::Real)) {
        Type data = Type::array(1, Type::real());
        return Term::lam("_x", data, Term::lam("_y", data, t));
    }
    return t;
}

int cmd_check(const std::string& file) {
    Term t = load(file);
    try {
        std::cout << typecheck(t).str() << "\n";
        return 0;
    } catch (const TypeError& e) {
        std::cout << to_string(e.kind()) << " at " << locator_string(e.locator()) << ": " << e.what() << "\n";
        return 1;
    }
}

int cmd_eval(const std::string& file, const std::vector<std::string>& args) {
    Term t = load(file);
    Type ty = typecheck(t);
    EvalResult r = eval_closed(t);
    if (!args.empty()) {
        auto values = parse_args(args, parameter_types(ty, args.size()));
        r.value = apply(r.value, values, r.ops);
    }
    std::cout << r.value.str() << "\n" << r.ops.summary() << "\n";
    return 0;
}

int cmd_ad(const std::string& file) {
    Term t = load(file);
    typecheck(t);
    std::cout << print_pretty(dual_term(t)) << "\n";
    return 0;
}

int cmd_grad(const std::string& file, const std::string& params, const std::string& xs, const std::string& ys,
             bool optimize, const std::string& strategy) {
    Term loss = as_loss(load(file));
    Term g = loss_grad(loss);
    if (optimize || !strategy.empty()) {
        auto out = run(pick_strategy(strategy), g, rules::default_registry());
        if (!out) {
            std::cerr << "FAILED\n";
            return kStrategyFailed;
        }
        g = *out;
    }
    auto types = parameter_types(typecheck(g), 3);
    std::vector<Value> values;
    auto zeros = [](const Type& ty) {
        std::string s = "[";
        for (std::uint64_t i = 0; i < ty.size(); ++i) s += i ? ",0" : "0";
        return s + "]";
    };
    values.push_back(parse_value(xs.empty() ? zeros(types[0]) : xs, types[0]));
    values.push_back(parse_value(ys.empty() ? zeros(types[1]) : ys, types[1]));
    values.push_back(parse_value(params, types[2]));
    EvalResult r = eval_closed(g);
    Value grad = apply(r.value, values, r.ops);
    std::cout << grad.str() << "\n" << r.ops.summary() << "\n";
    return 0;
}

int cmd_opt(const std::string& file, const std::string& strategy) {
    Term t = load(file);
    typecheck(t);
    auto out = run(pick_strategy(strategy), t, rules::default_registry());
    if (!out) {
        std::cout << "FAILED\n";
        return kStrategyFailed;
    }
    std::cout << print_pretty(*out) << "\n";
    return 0;
}

int cmd_emit(const std::string& file, bool optimize, const std::string& strategy, const std::string& entry) {
    Term t = load(file);
    typecheck(t);
    if (optimize || !strategy.empty()) {
        auto out = run(pick_strategy(strategy), t, rules::default_registry());
        if (!out) {
            std::cerr << "FAILED\n";
            return kStrategyFailed;
        }
        t = *out;
    }
    EmitOptions opts;
    opts.entry = entry;
    std::cout << emit_futhark(t, opts);
    return 0;
}

int cmd_bench(const std::string& which, const std::vector<std::uint64_t>& sizes) {
    if (which != "vectorsum") throw UsageError("unknown benchmark: " + which);
    BenchReport report = bench_vector_sum(sizes);
    std::cout << report.table() << "\n" << report.machine_lines();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dualrw: dual-numbers differentiation by rewriting"};
    app.require_subcommand(1);

    std::string file, params, xs, ys, strategy, entry = "main", bench_name;
    std::vector<std::string> args;
    std::vector<std::uint64_t> sizes{256, 512, 1024, 2048, 4096};
    bool optimize = false;

    auto* check = app.add_subcommand("check", "Typecheck a term");
    check->add_option("file", file)->required();

    auto* evalc = app.add_subcommand("eval", "Evaluate a closed term, optionally applied to arguments");
    evalc->add_option("file", file)->required();
    evalc->add_option("--args", args, "Value literal for the next argument; repeat per argument")->allow_extra_args(false);

    auto* ad = app.add_subcommand("ad", "Print the dual-numbers transform of a term");
    ad->add_option("file", file)->required();

    auto* grad = app.add_subcommand("grad", "Gradient of a loss at the given parameters");
    grad->add_option("file", file)->required();
    grad->add_option("--params", params)->required();
    grad->add_option("--x", xs, "Input data (default zeros)");
    grad->add_option("--y", ys, "Target data (default zeros)");
    grad->add_flag("--optimize", optimize, "Run the default pipeline first");
    grad->add_option("--strategy", strategy, "Strategy to run first");

    auto* opt = app.add_subcommand("opt", "Rewrite a term with a strategy");
    opt->add_option("file", file)->required();
    opt->add_option("--strategy", strategy, "Defaults to the standard pipeline");

    auto* emit = app.add_subcommand("emit", "Print Futhark source for a term");
    emit->add_option("file", file)->required();
    emit->add_flag("--optimize", optimize);
    emit->add_option("--strategy", strategy);
    emit->add_option("--entry", entry);

    auto* bench = app.add_subcommand("bench", "Operation-count benchmark");
    bench->add_option("name", bench_name)->required();
    bench->add_option("--sizes", sizes)->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return cmd_check(file);
        if (*evalc) return cmd_eval(file, args);
        if (*ad) return cmd_ad(file);
        if (*grad) return cmd_grad(file, params, xs, ys, optimize, strategy);
        if (*opt) return cmd_opt(file, strategy);
        if (*emit) return cmd_emit(file, optimize, strategy, entry);
        if (*bench) return cmd_bench(bench_name, sizes);
    } catch (const TypeError& e) {
        std::cerr << "type error: " << to_string(e.kind()) << " at " << locator_string(e.locator()) << ": "
                  << e.what() << "\n";
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
}
