#include "dualrw/futhark.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dualrw/syntax.hpp"
#include "dualrw/typecheck.hpp"

namespace dualrw {

namespace {

const std::set<std::string>& futhark_keywords() {
    static const std::set<std::string> kw = {
        "case", "def", "do",    "else", "entry", "for",  "if",   "import", "in",   "include", "let", "local",
        "loop", "match", "module", "open", "then",  "type", "val",  "while",  "with", "true",    "false", "f64",
        "i64",  "tabulate",
    };
    return kw;
}

class Emitter {
public:
    explicit Emitter(const EmitOptions& opts) : opts_(opts) {
        for (const auto& [n, name] : opts_.size_names) {
            if (n == 0 || name.empty()) throw std::invalid_argument("size bindings must be positive and named");
            used_.insert(name);
        }
    }

    std::string type(const Type& t) const {
        switch (t.kind()) {
        case Type::Kind::Real: return opts_.real_type;
        case Type::Kind::Int:
        case Type::Kind::Fin: return "i64";
        case Type::Kind::Array: return "[" + type_size(t.size()) + "]" + type(t.elem());
        case Type::Kind::Pair: return "(" + type(t.left()) + ", " + type(t.right()) + ")";
        case Type::Kind::Arrow: return "(" + type(t.dom()) + " -> " + type(t.cod()) + ")";
        }
        return "?";
    }

    std::string size(std::uint64_t n) const {
        auto it = opts_.size_names.find(n);
        return it != opts_.size_names.end() ? it->second : std::to_string(n) + "i64";
    }

    std::string type_size(std::uint64_t n) const {
        auto it = opts_.size_names.find(n);
        return it != opts_.size_names.end() ? it->second : std::to_string(n);
    }

    const std::string& ident(const Var& v) {
        auto it = names_.find(v);
        if (it != names_.end()) return it->second;
        std::string base = v.name;
        if (base.empty() || base[0] == '_') base = "u" + base;
        if (futhark_keywords().contains(base)) base += "_";
        std::string candidate = base;
        for (int i = 2; used_.contains(candidate); ++i) candidate = base + "_" + std::to_string(i);
        used_.insert(candidate);
        return names_.emplace(v, candidate).first->second;
    }

    std::string temp(const std::string& base) {
        std::string candidate = base;
        for (int i = 2; used_.contains(candidate); ++i) candidate = base + "_" + std::to_string(i);
        used_.insert(candidate);
        return candidate;
    }

    std::string real(double x) const {
        if (std::isnan(x)) return opts_.real_type + ".nan";
        if (std::isinf(x)) return x > 0 ? opts_.real_type + ".inf" : "(-" + opts_.real_type + ".inf)";
        std::string s = format_real(x) + opts_.real_type;
        return x < 0 || std::signbit(x) ? "(" + s + ")" : s;
    }

    std::string expr(const Term& t) {
        switch (t.op()) {
        case Op::Var: return ident(t.binder());
        case Op::App: return "(" + expr(t.child(0)) + " " + expr(t.child(1)) + ")";
        case Op::Lam: {
            const std::string& x = ident(t.binder());
            return "(\\(" + x + ": " + type(t.var_type()) + ") -> " + expr(t.child(0)) + ")";
        }
        case Op::Let: {
            std::string bound = expr(t.child(0));
            const std::string& x = ident(t.binder());
            return "(let " + x + ": " + type(t.var_type()) + " = " + bound + " in " + expr(t.child(1)) + ")";
        }
        case Op::If:
            return "(if " + expr(t.child(0)) + " != 0 then " + expr(t.child(1)) + " else " + expr(t.child(2)) + ")";
        case Op::IFold: {
            const Term& step = t.child(0);
            std::string init = expr(t.child(1));
            if (step.is(Op::Lam) && step.child(0).is(Op::Lam)) {
                const std::string acc = ident(step.binder());
                const std::string j = ident(step.child(0).binder());
                return "(loop " + acc + " = " + init + " for " + j + " < " + size(t.size()) + " do " +
                       expr(step.child(0).child(0)) + ")";
            }
            std::string f = expr(step);
            std::string acc = temp("acc"), j = temp("j");
            return "(loop " + acc + " = " + init + " for " + j + " < " + size(t.size()) + " do (" + f + " " + acc +
                   " " + j + "))";
        }
        case Op::ConstReal: return real(t.real_value());
        case Op::ConstInt: {
            std::string s = std::to_string(t.int_value()) + "i64";
            return t.int_value() < 0 ? "(" + s + ")" : s;
        }
        case Op::ConstFin: return std::to_string(t.fin_value()) + "i64";
        case Op::MkPair: return "(" + expr(t.child(0)) + ", " + expr(t.child(1)) + ")";
        case Op::Fst: return expr(t.child(0)) + ".0";
        case Op::Snd: return expr(t.child(0)) + ".1";
        case Op::Build: return "(tabulate " + size(t.size()) + " " + expr(t.child(0)) + ")";
        case Op::Geti: return expr(t.child(0)) + "[" + expr(t.child(1)) + "]";
        case Op::Add: return binop(t, "+");
        case Op::Mul: return binop(t, "*");
        case Op::Sub: return binop(t, "-");
        case Op::Div: return binop(t, "/");
        case Op::Lt: return "(if " + expr(t.child(0)) + " < " + expr(t.child(1)) + " then 1i64 else 0i64)";
        case Op::EqInt: return "(if " + expr(t.child(0)) + " == " + expr(t.child(1)) + " then 1i64 else 0i64)";
        case Op::FinToInt: return expr(t.child(0));
        case Op::IntToReal: return "(" + opts_.real_type + ".i64 " + expr(t.child(0)) + ")";
        }
        throw std::logic_error("emit: unknown constructor");
    }

private:
    std::string binop(const Term& t, const char* sym) {
        std::string a = expr(t.child(0));
        return "(" + a + " " + sym + " " + expr(t.child(1)) + ")";
    }

    const EmitOptions& opts_;
    std::map<Var, std::string> names_;
    std::set<std::string> used_;
};

} // namespace

std::string emit_futhark(const Term& t, const EmitOptions& opts) {
    if (opts.real_type != "f64") throw std::invalid_argument("only f64 reals are supported");
    if (opts.entry.empty()) throw std::invalid_argument("entry point name must not be empty");
    Type result;
    try {
        result = typecheck(t);
    } catch (const TypeError& e) {
        throw std::invalid_argument(std::string("cannot emit ill-typed term: ") + e.what());
    }

    Emitter em(opts);
    std::ostringstream out;
    out << "-- Generated by dualrw.\n";
    for (const auto& [n, name] : opts.size_names) out << "def " << name << " : i64 = " << n << "\n";
    if (!opts.size_names.empty()) out << "\n";

    const Term* body = &t;
    std::string params;
    while (body->is(Op::Lam)) {
        params += " (" + em.ident(body->binder()) + ": " + em.type(body->var_type()) + ")";
        result = result.cod();
        body = &body->child(0);
    }
    out << "entry " << opts.entry << params << " : " << em.type(result) << " =\n  " << em.expr(*body) << "\n";
    return out.str();
}

} // namespace dualrw
