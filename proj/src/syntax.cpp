#include "dualrw/syntax.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <optional>
#include <sstream>

namespace dualrw {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line),
      column_(column) {}

std::string format_real(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, end);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

namespace {

struct Token {
    enum class Kind { Open, Close, Atom, End } kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_blank();
        if (pos_ >= src_.size()) return {Token::Kind::End, "", line_, col_};
        std::size_t line = line_, col = col_;
        char c = src_[pos_];
        if (c == '(' || c == ')') {
            advance();
            return {c == '(' ? Token::Kind::Open : Token::Kind::Close, std::string(1, c), line, col};
        }
        std::size_t start = pos_;
        while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) && src_[pos_] != '(' &&
               src_[pos_] != ')' && src_[pos_] != ';')
            advance();
        return {Token::Kind::Atom, std::string(src_.substr(start, pos_ - start)), line, col};
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ';') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { tok_ = lex_.next(); }

    Term term() {
        Token open = expect_open("term");
        Token head = expect_atom("term constructor");
        const std::string& k = head.text;
        Term result = [&] {
            if (k == "var") {
                std::string name = identifier();
                return Term::var(std::move(name), type());
            }
            if (k == "lam") {
                std::string name = identifier();
                Type ty = type();
                return Term::lam(std::move(name), std::move(ty), term());
            }
            if (k == "let") {
                std::string name = identifier();
                Type ty = type();
                Term bound = term();
                return Term::let(std::move(name), std::move(ty), std::move(bound), term());
            }
            if (k == "app") return binary(&Term::app);
            if (k == "if") {
                Term c = term();
                Term a = term();
                return Term::ifte(std::move(c), std::move(a), term());
            }
            if (k == "ifold") {
                auto n = size();
                Term step = term();
                return Term::ifold(n, std::move(step), term());
            }
            if (k == "build") {
                auto n = size();
                return Term::build(n, term());
            }
            if (k == "geti") {
                auto n = size();
                Term arr = term();
                return Term::geti(n, std::move(arr), term());
            }
            if (k == "pair") return binary(&Term::mkpair);
            if (k == "fst") return Term::fst(term());
            if (k == "snd") return Term::snd(term());
            if (k == "add") return binary(&Term::add);
            if (k == "mul") return binary(&Term::mul);
            if (k == "sub") return binary(&Term::sub);
            if (k == "div") return binary(&Term::div);
            if (k == "lt") return binary(&Term::lt);
            if (k == "eq") return binary(&Term::eq_int);
            if (k == "fin2int") return Term::fin_to_int(term());
            if (k == "int2real") return Term::int_to_real(term());
            if (k == "const") return Term::const_real(real_literal());
            if (k == "int") return Term::const_int(int_literal());
            if (k == "fin") {
                Token at = tok_;
                std::uint64_t i = natural();
                std::uint64_t n = size();
                if (i >= n)
                    throw ParseError(at.line, at.column,
                                     "index " + std::to_string(i) + " out of bound " + std::to_string(n));
                return Term::const_fin(i, n);
            }
            throw ParseError(head.line, head.column, "unknown term constructor '" + k + "'");
        }();
        expect_close(open);
        return result;
    }

    Type type() {
        if (tok_.kind == Token::Kind::Atom) {
            Token t = take();
            if (t.text == "real") return Type::real();
            if (t.text == "int") return Type::integer();
            throw ParseError(t.line, t.column, "unknown type '" + t.text + "'");
        }
        Token open = expect_open("type");
        Token head = expect_atom("type constructor");
        Type result = [&] {
            if (head.text == "fin") return Type::fin(size());
            if (head.text == "array") {
                auto n = size();
                return Type::array(n, type());
            }
            if (head.text == "pair") {
                Type a = type();
                return Type::pair(std::move(a), type());
            }
            if (head.text == "->") {
                Type a = type();
                return Type::arrow(std::move(a), type());
            }
            throw ParseError(head.line, head.column, "unknown type constructor '" + head.text + "'");
        }();
        expect_close(open);
        return result;
    }

    void finish() {
        if (tok_.kind != Token::Kind::End) throw ParseError(tok_.line, tok_.column, "trailing input");
    }

private:
    Term binary(Term (*make)(Term, Term)) {
        Term a = term();
        return make(std::move(a), term());
    }

    Token take() {
        Token t = tok_;
        tok_ = lex_.next();
        return t;
    }

    Token expect_open(const char* what) {
        if (tok_.kind != Token::Kind::Open)
            throw ParseError(tok_.line, tok_.column, std::string("expected '(' to start a ") + what + describe());
        return take();
    }

    void expect_close(const Token& open) {
        if (tok_.kind != Token::Kind::Close)
            throw ParseError(tok_.line, tok_.column,
                             "expected ')' closing the form at " + std::to_string(open.line) + ":" +
                                 std::to_string(open.column) + describe());
        take();
    }

    Token expect_atom(const char* what) {
        if (tok_.kind != Token::Kind::Atom)
            throw ParseError(tok_.line, tok_.column, std::string("expected ") + what + describe());
        return take();
    }

    std::string describe() const {
        switch (tok_.kind) {
        case Token::Kind::End: return ", found end of input";
        case Token::Kind::Open: return ", found '('";
        case Token::Kind::Close: return ", found ')'";
        case Token::Kind::Atom: return ", found '" + tok_.text + "'";
        }
        return "";
    }

    std::string identifier() {
        Token t = expect_atom("identifier");
        bool ok = !t.text.empty() && (std::isalpha(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_');
        for (char c : t.text) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'');
        if (!ok) throw ParseError(t.line, t.column, "invalid identifier '" + t.text + "'");
        return t.text;
    }

    std::uint64_t natural() {
        Token t = expect_atom("natural number");
        std::uint64_t v = 0;
        auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || end != t.text.data() + t.text.size())
            throw ParseError(t.line, t.column, "invalid natural number '" + t.text + "'");
        return v;
    }

    std::uint64_t size() {
        Token at = tok_;
        std::uint64_t n = natural();
        if (n == 0) throw ParseError(at.line, at.column, "size must be at least 1");
        return n;
    }

    std::int64_t int_literal() {
        Token t = expect_atom("integer literal");
        std::int64_t v = 0;
        auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || end != t.text.data() + t.text.size())
            throw ParseError(t.line, t.column, "invalid integer literal '" + t.text + "'");
        return v;
    }

    double real_literal() {
        Token t = expect_atom("real literal");
        double v = 0;
        auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || end != t.text.data() + t.text.size())
            throw ParseError(t.line, t.column, "invalid real literal '" + t.text + "'");
        return v;
    }

    Lexer lex_;
    Token tok_;
};

void print_to(std::ostream& out, const Term& t) {
    out << '(' << op_keyword(t.op());
    switch (t.op()) {
    case Op::Var: out << ' ' << t.name() << ' ' << t.var_type().str(); break;
    case Op::Lam:
    case Op::Let: out << ' ' << t.name() << ' ' << t.var_type().str(); break;
    case Op::IFold:
    case Op::Build:
    case Op::Geti: out << ' ' << t.size(); break;
    case Op::ConstReal: out << ' ' << format_real(t.real_value()); break;
    case Op::ConstInt: out << ' ' << t.int_value(); break;
    case Op::ConstFin: out << ' ' << t.fin_value() << ' ' << t.size(); break;
    default: break;
    }
    for (const Term& k : t.children()) {
        out << ' ';
        print_to(out, k);
    }
    out << ')';
}

void pretty_to(std::ostream& out, const Term& t, std::size_t indent, std::size_t width) {
    std::string flat = print(t);
    if (indent + flat.size() <= width || t.arity() == 0) {
        out << flat;
        return;
    }
    out << '(' << op_keyword(t.op());
    switch (t.op()) {
    case Op::Lam:
    case Op::Let: out << ' ' << t.name() << ' ' << t.var_type().str(); break;
    case Op::IFold:
    case Op::Build:
    case Op::Geti: out << ' ' << t.size(); break;
    default: break;
    }
    for (const Term& k : t.children()) {
        out << '\n' << std::string(indent + 2, ' ');
        pretty_to(out, k, indent + 2, width);
    }
    out << ')';
}

} // namespace

Term parse_term(std::string_view src) {
    Parser p(src);
    Term t = p.term();
    p.finish();
    return t;
}

Type parse_type(std::string_view src) {
    Parser p(src);
    Type t = p.type();
    p.finish();
    return t;
}

std::string print(const Term& t) {
    std::ostringstream out;
    print_to(out, t);
    return out.str();
}

std::string print_pretty(const Term& t, std::size_t width) {
    std::ostringstream out;
    pretty_to(out, t, 0, width);
    return out.str();
}

std::string Term::str() const { return print(*this); }

} // namespace dualrw
