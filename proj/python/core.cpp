#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dualrw/autodiff.hpp"
#include "dualrw/bench.hpp"
#include "dualrw/eval.hpp"
#include "dualrw/futhark.hpp"
#include "dualrw/rules.hpp"
#include "dualrw/strategy.hpp"
#include "dualrw/syntax.hpp"
#include "dualrw/typecheck.hpp"
#include "dualrw/value.hpp"

namespace py = pybind11;
using namespace dualrw;

namespace {

Value to_value(py::handle obj, const Type& ty) {
    switch (ty.kind()) {
    case Type::Kind::Real: return Value::real(obj.cast<double>());
    case Type::Kind::Int: return Value::integer(obj.cast<std::int64_t>());
    case Type::Kind::Fin: {
        auto i = obj.cast<std::int64_t>();
        if (i < 0 || static_cast<std::uint64_t>(i) >= ty.size())
            throw py::value_error("index " + std::to_string(i) + " out of range for " + ty.str());
        return Value::fin(static_cast<std::uint64_t>(i), ty.size());
    }
    case Type::Kind::Array: {
        auto seq = obj.cast<py::sequence>();
        if (seq.size() != ty.size())
            throw py::value_error("expected " + std::to_string(ty.size()) + " elements for " + ty.str() + ", got " +
                                  std::to_string(seq.size()));
        std::vector<Value> out;
        for (auto item : seq) out.push_back(to_value(item, ty.elem()));
        return Value::array(std::move(out));
    }
    case Type::Kind::Pair: {
        auto seq = obj.cast<py::sequence>();
        if (seq.size() != 2) throw py::value_error("expected a pair for " + ty.str());
        return Value::pair(to_value(seq[0], ty.left()), to_value(seq[1], ty.right()));
    }
    case Type::Kind::Arrow: break;
    }
    throw py::type_error("functions cannot be passed as arguments");
}

py::object from_value(const Value& v) {
    switch (v.kind()) {
    case Value::Kind::Real: return py::float_(v.as_real());
    case Value::Kind::Int: return py::int_(v.as_int());
    case Value::Kind::Fin: return py::int_(v.fin_index());
    case Value::Kind::Array: {
        py::list out;
        for (const auto& e : v.elements()) out.append(from_value(e));
        return std::move(out);
    }
    case Value::Kind::Pair: return py::make_tuple(from_value(v.first()), from_value(v.second()));
    case Value::Kind::Closure: break;
    }
    return py::str(v.str());
}

py::dict ops_dict(const OpCounter& ops) {
    py::dict d;
    d["real_arith"] = ops.real_arith;
    d["comparisons"] = ops.comparisons;
    d["array_reads"] = ops.array_reads;
    d["array_alloc_elems"] = ops.array_alloc_elems;
    d["loop_iterations"] = ops.loop_iterations;
    d["total"] = ops.total();
    return d;
}

py::tuple evaluate(const Term& t, const py::sequence& args) {
    Type ty = typecheck(t);
    EvalResult r = eval_closed(t);
    if (args.size() > 0) {
        std::vector<Value> values;
        for (auto a : args) {
            if (!ty.is(Type::Kind::Arrow)) throw py::value_error("too many arguments for " + typecheck(t).str());
            values.push_back(to_value(a, ty.dom()));
            ty = ty.cod();
        }
        r.value = apply(r.value, values, r.ops);
    }
    return py::make_tuple(from_value(r.value), ops_dict(r.ops));
}

std::optional<Term> optimize(const Term& t, const std::optional<std::string>& strategy) {
    Strategy s = strategy ? parse_strategy(*strategy) : rules::default_pipeline();
    return run(s, t, rules::default_registry());
}

std::string emit(const Term& t, const std::string& entry, const std::map<std::uint64_t, std::string>& sizes) {
    EmitOptions o;
    o.entry = entry;
    o.size_names = sizes;
    return emit_futhark(t, o);
}

py::dict bench(const std::vector<std::uint64_t>& sizes) {
    BenchReport r = bench_vector_sum(sizes);
    py::list rows;
    for (const auto& row : r.rows) {
        py::dict d = ops_dict(row.ops);
        d["n"] = row.n;
        d["variant"] = row.variant;
        rows.append(d);
    }
    py::dict out;
    out["rows"] = rows;
    out["slope_unoptimized"] = r.slope_unoptimized;
    out["slope_optimized"] = r.slope_optimized;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dual-number AD and term rewriting";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<TypeError>(m, "TypeCheckError", PyExc_TypeError);
    py::register_exception<EvalError>(m, "EvalError", PyExc_ArithmeticError);
    py::register_exception<StrategyError>(m, "StrategyError", PyExc_RuntimeError);

    py::class_<Type>(m, "Type")
        .def("__str__", &Type::str)
        .def("__repr__", [](const Type& t) { return "Type(" + t.str() + ")"; })
        .def("__eq__", [](const Type& a, const Type& b) { return a == b; })
        .def("__hash__", [](const Type& t) { return std::hash<std::string>{}(t.str()); });

    py::class_<Term>(m, "Term")
        .def("__str__", [](const Term& t) { return print(t); })
        .def("__repr__", [](const Term& t) { return "Term(" + print(t) + ")"; })
        .def("__eq__", [](const Term& a, const Term& b) { return a == b; })
        .def("__hash__", [](const Term& t) { return std::hash<std::string>{}(print(t)); })
        .def("pretty", [](const Term& t, std::size_t width) { return print_pretty(t, width); }, py::arg("width") = 80)
        .def_property_readonly("node_count", &Term::node_count);

    m.def("parse", [](const std::string& src) { return parse_term(src); }, py::arg("source"));
    m.def("parse_type", [](const std::string& src) { return parse_type(src); }, py::arg("source"));
    m.def("typecheck", &typecheck, py::arg("term"));
    m.def("evaluate", &evaluate, py::arg("term"), py::arg("args") = py::tuple(),
          "Evaluate a closed term, applying it to `args` if given. Returns (value, op counts).");
    m.def("dual_term", &dual_term, py::arg("term"));
    m.def("dual_type", &dual_type, py::arg("type"));
    m.def("loss_grad", &loss_grad, py::arg("loss"));
    m.def("optimize", &optimize, py::arg("term"), py::arg("strategy") = std::nullopt,
          "Run a strategy (default pipeline if omitted). Returns None when the strategy fails.");
    m.def("default_pipeline", [] { return rules::default_pipeline().str(); });
    m.def("rule_names", [] { return rules::default_registry().names(); });
    m.def("emit_futhark", &emit, py::arg("term"), py::arg("entry") = "main",
          py::arg("size_names") = std::map<std::uint64_t, std::string>{});
    m.def("bench_vector_sum", &bench, py::arg("sizes"));
}
