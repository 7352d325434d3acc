#include "quartica/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <variant>

namespace quartica {

// --------------------------------------------------------------------- lexer

namespace {

const std::set<std::string> kKeywords = {"field", "let",    "curve",  "line", "conic",
                                         "point", "lines",  "points", "conics",
                                         "assert", "print"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

} // namespace

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto bump = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') bump(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            bump(1);
            continue;
        }
        Span span{line, col};
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            std::string lex = text.substr(i, j - i);
            out.push_back({kKeywords.count(lex) ? TokKind::Keyword : TokKind::Ident, lex, span});
            bump(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({TokKind::Integer, text.substr(i, j - i), span});
            bump(j - i);
            continue;
        }
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
            if (j >= text.size() || text[j] != '"') throw LexError(span, "unterminated string");
            out.push_back({TokKind::Str, text.substr(i + 1, j - i - 1), span});
            bump(j - i + 1);
            continue;
        }
        if (c == '=' && i + 1 < text.size() && text[i + 1] == '=') {
            out.push_back({TokKind::Punct, "==", span});
            bump(2);
            continue;
        }
        if (c == '!' && i + 1 < text.size() && text[i + 1] == '=') {
            out.push_back({TokKind::Punct, "!=", span});
            bump(2);
            continue;
        }
        if (std::string("()[],:=+-*/^").find(c) != std::string::npos) {
            out.push_back({TokKind::Punct, std::string(1, c), span});
            bump(1);
            continue;
        }
        throw LexError(span, std::string("unexpected character '") + c + "'");
    }
    out.push_back({TokKind::End, "", {line, col}});
    return out;
}

// -------------------------------------------------------------------- parser

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

    ScenarioAst scenario() {
        ScenarioAst ast;
        while (!at_end()) ast.stmts.push_back(statement());
        return ast;
    }

private:
    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    bool at_end() const { return peek().kind == TokKind::End; }
    const Token& advance() { return toks_[pos_++]; }
    bool check_punct(const std::string& p) const {
        return peek().kind == TokKind::Punct && peek().lexeme == p;
    }
    const Token& expect_punct(const std::string& p) {
        if (!check_punct(p)) throw ParseError(peek().span, "expected '" + p + "'");
        return advance();
    }
    std::string expect_ident() {
        if (peek().kind != TokKind::Ident) throw ParseError(peek().span, "expected identifier");
        return advance().lexeme;
    }

    Stmt statement() {
        const Token& t = peek();
        if (t.kind != TokKind::Keyword)
            throw ParseError(t.span, "expected a statement keyword, got '" + t.lexeme + "'");
        if (t.lexeme == "field") return field_decl();
        if (t.lexeme == "let") return let_decl();
        if (t.lexeme == "assert") return assert_stmt();
        if (t.lexeme == "print") return print_stmt();
        return obj_decl();
    }

    Stmt field_decl() {
        Stmt s;
        s.kind = Stmt::Kind::Field;
        s.span = advance().span;
        s.name = expect_ident();
        expect_punct("=");
        std::string q = expect_ident();
        if (q != "Q") throw ParseError(peek().span, "field declarations use Q(...)");
        expect_punct("(");
        if (!check_punct(")")) {
            while (true) {
                std::string gen = expect_ident();
                expect_punct(":");
                s.gens.emplace_back(gen, expression());
                if (check_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
        }
        expect_punct(")");
        return s;
    }

    Stmt let_decl() {
        Stmt s;
        s.kind = Stmt::Kind::Let;
        s.span = advance().span;
        s.name = expect_ident();
        expect_punct("=");
        s.exprs.push_back(expression());
        return s;
    }

    Stmt obj_decl() {
        Stmt s;
        s.kind = Stmt::Kind::Obj;
        const Token& kw = advance();
        s.span = kw.span;
        s.obj_kind = kw.lexeme;
        s.name = expect_ident();
        expect_punct("=");
        s.exprs.push_back(expression());
        return s;
    }

    Stmt assert_stmt() {
        Stmt s;
        s.kind = Stmt::Kind::Assert;
        s.span = advance().span;
        s.exprs.push_back(expression());
        if (check_punct("==") || check_punct("!=")) {
            s.relop = advance().lexeme;
            s.exprs.push_back(expression());
        } else if (s.exprs.front().kind != Expr::Kind::Call) {
            throw ParseError(s.span, "assert needs a comparison or a call");
        }
        return s;
    }

    Stmt print_stmt() {
        Stmt s;
        s.kind = Stmt::Kind::Print;
        s.span = advance().span;
        s.exprs.push_back(expression());
        return s;
    }

    // precedence: ^ then unary - then * / then + -
    Expr expression() { return additive(); }

    Expr additive() {
        Expr e = multiplicative();
        while (check_punct("+") || check_punct("-")) {
            Expr bin;
            bin.kind = Expr::Kind::Binary;
            bin.span = peek().span;
            bin.text = advance().lexeme;
            bin.kids.push_back(std::move(e));
            bin.kids.push_back(multiplicative());
            e = std::move(bin);
        }
        return e;
    }

    Expr multiplicative() {
        Expr e = unary();
        while (check_punct("*") || check_punct("/")) {
            Expr bin;
            bin.kind = Expr::Kind::Binary;
            bin.span = peek().span;
            bin.text = advance().lexeme;
            bin.kids.push_back(std::move(e));
            bin.kids.push_back(unary());
            e = std::move(bin);
        }
        return e;
    }

    Expr unary() {
        if (check_punct("-")) {
            Expr u;
            u.kind = Expr::Kind::Unary;
            u.span = peek().span;
            u.text = advance().lexeme;
            u.kids.push_back(unary());
            return u;
        }
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (check_punct("^")) {
            Expr bin;
            bin.kind = Expr::Kind::Binary;
            bin.span = peek().span;
            bin.text = advance().lexeme;
            bin.kids.push_back(std::move(base));
            // right associative, binding tighter than unary minus
            bin.kids.push_back(power_rhs());
            return bin;
        }
        return base;
    }

    Expr power_rhs() {
        if (check_punct("-")) {
            Expr u;
            u.kind = Expr::Kind::Unary;
            u.span = peek().span;
            u.text = advance().lexeme;
            u.kids.push_back(power_rhs());
            return u;
        }
        return power();
    }

    Expr atom() {
        const Token& t = peek();
        if (t.kind == TokKind::Integer) {
            Expr e;
            e.kind = Expr::Kind::Integer;
            e.span = t.span;
            e.text = advance().lexeme;
            return e;
        }
        if (t.kind == TokKind::Str) {
            Expr e;
            e.kind = Expr::Kind::Str;
            e.span = t.span;
            e.text = advance().lexeme;
            return e;
        }
        if (t.kind == TokKind::Ident) {
            Expr e;
            e.span = t.span;
            e.text = advance().lexeme;
            if (check_punct("(")) {
                e.kind = Expr::Kind::Call;
                advance();
                if (!check_punct(")")) {
                    while (true) {
                        e.kids.push_back(expression());
                        if (check_punct(",")) {
                            advance();
                            continue;
                        }
                        break;
                    }
                }
                expect_punct(")");
            } else {
                e.kind = Expr::Kind::Ident;
            }
            return e;
        }
        if (check_punct("(")) {
            Span open = advance().span;
            Expr first = expression();
            if (check_punct(":")) {
                Expr pt;
                pt.kind = Expr::Kind::PointLit;
                pt.span = open;
                pt.kids.push_back(std::move(first));
                advance();
                pt.kids.push_back(expression());
                expect_punct(":");
                pt.kids.push_back(expression());
                expect_punct(")");
                return pt;
            }
            expect_punct(")");
            return first;
        }
        if (check_punct("[")) {
            Expr list;
            list.kind = Expr::Kind::ListLit;
            list.span = advance().span;
            if (!check_punct("]")) {
                while (true) {
                    list.kids.push_back(expression());
                    if (check_punct(",")) {
                        advance();
                        continue;
                    }
                    break;
                }
            }
            expect_punct("]");
            return list;
        }
        throw ParseError(t.span, "expected an expression, got '" + t.lexeme + "'");
    }
};

} // namespace

ScenarioAst parse(const std::vector<Token>& tokens) { return Parser(tokens).scenario(); }

ScenarioAst parse_text(const std::string& text) { return parse(tokenize(text)); }

// ------------------------------------------------------------- AST printing

std::string Expr::print() const {
    switch (kind) {
        case Kind::Integer: return text;
        case Kind::Ident: return text;
        case Kind::Str: return "\"" + text + "\"";
        case Kind::Unary: return "(-" + kids[0].print() + ")";
        case Kind::Binary:
            return "(" + kids[0].print() + " " + text + " " + kids[1].print() + ")";
        case Kind::Call: {
            std::string s = text + "(";
            for (std::size_t i = 0; i < kids.size(); ++i)
                s += (i ? ", " : "") + kids[i].print();
            return s + ")";
        }
        case Kind::PointLit:
            return "(" + kids[0].print() + " : " + kids[1].print() + " : " + kids[2].print() + ")";
        case Kind::ListLit: {
            std::string s = "[";
            for (std::size_t i = 0; i < kids.size(); ++i) s += (i ? ", " : "") + kids[i].print();
            return s + "]";
        }
    }
    return "";
}

std::string Stmt::print() const {
    switch (kind) {
        case Kind::Field: {
            std::string s = "field " + name + " = Q(";
            for (std::size_t i = 0; i < gens.size(); ++i)
                s += (i ? ", " : "") + gens[i].first + ": " + gens[i].second.print();
            return s + ")";
        }
        case Kind::Let: return "let " + name + " = " + exprs[0].print();
        case Kind::Obj: return obj_kind + " " + name + " = " + exprs[0].print();
        case Kind::Assert:
            if (relop.empty()) return "assert " + exprs[0].print();
            return "assert " + exprs[0].print() + " " + relop + " " + exprs[1].print();
        case Kind::Print: return "print " + exprs[0].print();
    }
    return "";
}

std::string ScenarioAst::print() const {
    std::string s;
    for (const auto& st : stmts) s += st.print() + "\n";
    return s;
}

// ----------------------------------------------------------------- evaluator

namespace {

struct Value;
using List = std::vector<Value>;

struct Value {
    std::variant<FieldElement, MultiPoly, ProjPoint, ProjLine, Conic, List, bool, std::string> v;

    template <typename T>
    Value(T x) : v(std::move(x)) {} // NOLINT: implicit by design

    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(v);
    }
    template <typename T>
    const T& as() const {
        return std::get<T>(v);
    }
};

std::string value_str(const Value& val) {
    if (val.is<FieldElement>()) return val.as<FieldElement>().str();
    if (val.is<MultiPoly>()) return val.as<MultiPoly>().str();
    if (val.is<ProjPoint>()) return val.as<ProjPoint>().str();
    if (val.is<ProjLine>()) return val.as<ProjLine>().str();
    if (val.is<Conic>()) return val.as<Conic>().str();
    if (val.is<bool>()) return val.as<bool>() ? "true" : "false";
    if (val.is<std::string>()) return "\"" + val.as<std::string>() + "\"";
    std::string s = "[";
    const auto& list = val.as<List>();
    for (std::size_t i = 0; i < list.size(); ++i) s += (i ? ", " : "") + value_str(list[i]);
    return s + "]";
}

class Evaluator {
public:
    ScenarioResult run(const ScenarioAst& ast) {
        ScenarioResult out;
        for (const auto& s : ast.stmts) {
            switch (s.kind) {
                case Stmt::Kind::Field: do_field(s); break;
                case Stmt::Kind::Let:
                    declare(s.name, eval(s.exprs[0]), s.span);
                    break;
                case Stmt::Kind::Obj: do_obj(s); break;
                case Stmt::Kind::Assert: out.checks.push_back(do_assert(s)); break;
                case Stmt::Kind::Print: out.prints.push_back(value_str(eval(s.exprs[0]))); break;
            }
        }
        return out;
    }

    TowerPtr build_tower_from(const Stmt& field_stmt) {
        do_field(field_stmt);
        return tower_;
    }

    void force_tower(TowerPtr t) {
        tower_ = std::move(t);
        for (std::size_t k = 0; k < tower_->levels(); ++k)
            env_.emplace(tower_->level(k).name,
                         Value(FieldElement::generator(tower_, k)));
    }

    Value eval_public(const Expr& e) { return eval(e); }

private:
    TowerPtr tower_;
    std::map<std::string, Value> env_;
    bool field_declared_ = false;

    const TowerPtr& tower(Span s) const {
        if (!tower_) throw EvalError(s, "no field declared yet");
        return tower_;
    }

    void declare(const std::string& name, Value v, Span s) {
        if (name == "x" || name == "y" || name == "z")
            throw EvalError(s, "'" + name + "' is a reserved curve variable");
        if (!env_.emplace(name, std::move(v)).second)
            throw EvalError(s, "identifier '" + name + "' already declared");
    }

    void do_field(const Stmt& s) {
        if (field_declared_) throw EvalError(s.span, "exactly one field declaration is allowed");
        field_declared_ = true;
        TowerPtr t = TowerField::rationals();
        tower_ = t;
        for (const auto& [gen, radicand_expr] : s.gens) {
            Value rad = eval(radicand_expr);
            FieldElement r = to_num(rad, radicand_expr.span);
            try {
                tower_ = extend_tower(tower_, gen, r);
            } catch (const KernelError& e) {
                throw EvalError(s.span, e.what());
            }
            // rebind earlier generators into the extended tower
            for (std::size_t k = 0; k < tower_->levels(); ++k) {
                auto it = env_.find(tower_->level(k).name);
                FieldElement g = FieldElement::generator(tower_, k);
                if (it == env_.end())
                    env_.emplace(tower_->level(k).name, Value(g));
                else
                    it->second = Value(g);
            }
        }
        declare(s.name, Value(std::string("Q")), s.span); // the field name itself is opaque
        env_.erase(s.name);
    }

    void do_obj(const Stmt& s) {
        Value v = eval(s.exprs[0]);
        const std::string& k = s.obj_kind;
        if (k == "curve") {
            MultiPoly p = to_poly(v, s.span);
            if (!p.is_homogeneous() || p.is_zero())
                throw EvalError(s.span, "curves need nonzero homogeneous forms");
            declare(s.name, Value(std::move(p)), s.span);
        } else if (k == "line") {
            declare(s.name, Value(to_line(v, s.span)), s.span);
        } else if (k == "conic") {
            declare(s.name, Value(to_conic(v, s.span)), s.span);
        } else if (k == "point") {
            if (!v.is<ProjPoint>()) throw EvalError(s.span, "point declarations need (a : b : c)");
            declare(s.name, v, s.span);
        } else { // lines, points, conics
            if (!v.is<List>()) throw EvalError(s.span, k + " declarations need a list");
            List items;
            for (const auto& item : v.as<List>()) {
                if (k == "lines") items.emplace_back(to_line(item, s.span));
                else if (k == "conics") items.emplace_back(to_conic(item, s.span));
                else {
                    if (!item.is<ProjPoint>()) throw EvalError(s.span, "expected points");
                    items.push_back(item);
                }
            }
            declare(s.name, Value(std::move(items)), s.span);
        }
    }

    CheckOutcome do_assert(const Stmt& s) {
        CheckOutcome out;
        out.span = s.span;
        out.text = s.print().substr(7); // drop "assert "
        try {
            if (s.relop.empty()) {
                Value v = eval(s.exprs[0]);
                if (!v.is<bool>())
                    throw EvalError(s.span, "bare assert needs a boolean call");
                out.passed = v.as<bool>();
                out.computed = value_str(v);
                out.expected = "true";
            } else {
                Value lhs = eval(s.exprs[0]);
                Value rhs = eval(s.exprs[1]);
                bool eq = values_equal(lhs, rhs, s.span);
                out.passed = (s.relop == "==") ? eq : !eq;
                out.computed = value_str(lhs);
                out.expected = value_str(rhs);
            }
        } catch (const DslError&) {
            throw;
        } catch (const KernelError& e) {
            throw EvalError(s.span, e.what());
        }
        return out;
    }

    // ---- conversions

    FieldElement to_num(const Value& v, Span s) {
        if (v.is<FieldElement>()) return v.as<FieldElement>();
        if (v.is<MultiPoly>()) {
            const MultiPoly& p = v.as<MultiPoly>();
            if (p.is_zero()) return FieldElement::zero(p.tower());
            if (p.degree() == 0) return p.leading_coeff();
        }
        throw EvalError(s, "expected a scalar");
    }

    MultiPoly to_poly(const Value& v, Span s) {
        if (v.is<MultiPoly>()) return v.as<MultiPoly>();
        if (v.is<FieldElement>()) return MultiPoly::constant(v.as<FieldElement>());
        if (v.is<Conic>()) return conic_to_poly(v.as<Conic>());
        if (v.is<ProjLine>()) return line_to_poly(v.as<ProjLine>());
        throw EvalError(s, "expected a polynomial");
    }

    ProjLine to_line(const Value& v, Span s) {
        if (v.is<ProjLine>()) return v.as<ProjLine>();
        if (v.is<MultiPoly>()) {
            const MultiPoly& p = v.as<MultiPoly>();
            if (p.degree() == 1 && p.is_homogeneous())
                return ProjLine(p.coeff({{1, 0, 0}}), p.coeff({{0, 1, 0}}), p.coeff({{0, 0, 1}}));
        }
        throw EvalError(s, "expected a linear form");
    }

    Conic to_conic(const Value& v, Span s) {
        if (v.is<Conic>()) return v.as<Conic>();
        if (v.is<MultiPoly>()) {
            try {
                return poly_to_conic(v.as<MultiPoly>());
            } catch (const KernelError& e) {
                throw EvalError(s, e.what());
            }
        }
        throw EvalError(s, "expected a conic");
    }

    long to_count(const Value& v, Span s) {
        FieldElement n = to_num(v, s);
        if (!n.is_rational()) throw EvalError(s, "expected an integer");
        const Rational& r = n.rational_part();
        if (boost::multiprecision::denominator(r) != 1) throw EvalError(s, "expected an integer");
        return r.convert_to<long>();
    }

    std::vector<ProjPoint> to_points(const Value& v, Span s) {
        if (!v.is<List>()) throw EvalError(s, "expected a list of points");
        std::vector<ProjPoint> out;
        for (const auto& item : v.as<List>()) {
            if (!item.is<ProjPoint>()) throw EvalError(s, "expected a list of points");
            out.push_back(item.as<ProjPoint>());
        }
        return out;
    }

    std::vector<ProjLine> to_lines(const Value& v, Span s) {
        if (!v.is<List>()) throw EvalError(s, "expected a list of lines");
        std::vector<ProjLine> out;
        for (const auto& item : v.as<List>()) out.push_back(to_line(item, s));
        return out;
    }

    std::vector<Conic> to_conics(const Value& v, Span s) {
        if (!v.is<List>()) throw EvalError(s, "expected a list of conics");
        std::vector<Conic> out;
        for (const auto& item : v.as<List>()) out.push_back(to_conic(item, s));
        return out;
    }

    // ---- equality

    bool values_equal(const Value& a, const Value& b, Span s) {
        if (a.is<bool>() || b.is<bool>()) {
            if (!(a.is<bool>() && b.is<bool>())) throw EvalError(s, "comparing bool with non-bool");
            return a.as<bool>() == b.as<bool>();
        }
        if (a.is<std::string>() || b.is<std::string>()) {
            if (!(a.is<std::string>() && b.is<std::string>()))
                throw EvalError(s, "comparing string with non-string");
            return a.as<std::string>() == b.as<std::string>();
        }
        if (a.is<List>() || b.is<List>()) {
            if (!(a.is<List>() && b.is<List>())) return false;
            const List& la = a.as<List>();
            const List& lb = b.as<List>();
            if (la.size() != lb.size()) return false;
            bool geometric = !la.empty() && (la[0].is<ProjPoint>() || la[0].is<ProjLine>() ||
                                             la[0].is<Conic>());
            if (!geometric) {
                for (std::size_t i = 0; i < la.size(); ++i)
                    if (!values_equal(la[i], lb[i], s)) return false;
                return true;
            }
            // geometric lists compare as multisets
            std::vector<std::string> sa, sb;
            for (const auto& v : la) sa.push_back(value_str(v));
            for (const auto& v : lb) sb.push_back(value_str(v));
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            return sa == sb;
        }
        if (a.is<ProjPoint>() && b.is<ProjPoint>()) return a.as<ProjPoint>() == b.as<ProjPoint>();
        if (a.is<ProjLine>() && b.is<ProjLine>()) return a.as<ProjLine>() == b.as<ProjLine>();
        if (a.is<Conic>() && b.is<Conic>()) return a.as<Conic>() == b.as<Conic>();
        // numeric / polynomial comparison with scalar promotion
        MultiPoly pa = to_poly(a, s);
        MultiPoly pb = to_poly(b, s);
        return pa == pb;
    }

    // ---- expressions

    Value eval(const Expr& e) {
        switch (e.kind) {
            case Expr::Kind::Integer:
                return Value(FieldElement(tower(e.span), Rational(e.text)));
            case Expr::Kind::Str: return Value(e.text);
            case Expr::Kind::Ident: {
                if (e.text == "x" || e.text == "y" || e.text == "z")
                    return Value(MultiPoly::variable(tower(e.span),
                                                     e.text == "x"   ? Var::X
                                                     : e.text == "y" ? Var::Y
                                                                     : Var::Z));
                auto it = env_.find(e.text);
                if (it == env_.end())
                    throw EvalError(e.span, "undeclared identifier '" + e.text + "'");
                return it->second;
            }
            case Expr::Kind::Unary: {
                Value v = eval(e.kids[0]);
                if (v.is<FieldElement>()) return Value(-v.as<FieldElement>());
                if (v.is<MultiPoly>()) return Value(-v.as<MultiPoly>());
                throw EvalError(e.span, "cannot negate this value");
            }
            case Expr::Kind::Binary: return eval_binary(e);
            case Expr::Kind::Call: return eval_call(e);
            case Expr::Kind::PointLit: {
                FieldElement a = to_num(eval(e.kids[0]), e.span);
                FieldElement b = to_num(eval(e.kids[1]), e.span);
                FieldElement c = to_num(eval(e.kids[2]), e.span);
                try {
                    return Value(ProjPoint(a, b, c));
                } catch (const KernelError& err) {
                    throw EvalError(e.span, err.what());
                }
            }
            case Expr::Kind::ListLit: {
                List items;
                for (const auto& k : e.kids) items.push_back(eval(k));
                return Value(std::move(items));
            }
        }
        throw EvalError(e.span, "unreachable expression kind");
    }

    Value eval_binary(const Expr& e) {
        if (e.text == "^") {
            Value base = eval(e.kids[0]);
            long exp = to_count(eval(e.kids[1]), e.kids[1].span);
            if (base.is<FieldElement>()) return Value(base.as<FieldElement>().pow(exp));
            if (base.is<MultiPoly>()) {
                if (exp < 0) throw EvalError(e.span, "negative power of a polynomial");
                return Value(base.as<MultiPoly>().pow(int(exp)));
            }
            throw EvalError(e.span, "cannot raise this value to a power");
        }
        Value a = eval(e.kids[0]);
        Value b = eval(e.kids[1]);
        try {
            if (a.is<FieldElement>() && b.is<FieldElement>()) {
                const auto& x = a.as<FieldElement>();
                const auto& y = b.as<FieldElement>();
                if (e.text == "+") return Value(x + y);
                if (e.text == "-") return Value(x - y);
                if (e.text == "*") return Value(x * y);
                return Value(x / y);
            }
            MultiPoly x = to_poly(a, e.span);
            MultiPoly y = to_poly(b, e.span);
            if (e.text == "+") return Value(x + y);
            if (e.text == "-") return Value(x - y);
            if (e.text == "*") return Value(x * y);
            // polynomial division only by scalars
            return Value(x * to_num(b, e.span).inverse());
        } catch (const DslError&) {
            throw;
        } catch (const KernelError& err) {
            throw EvalError(e.span, err.what());
        }
    }

    Value eval_call(const Expr& e) {
        const std::string& f = e.text;
        auto arity = [&](std::size_t n) {
            if (e.kids.size() != n)
                throw EvalError(e.span, f + " expects " + std::to_string(n) + " arguments");
        };
        std::vector<Value> args;
        for (const auto& k : e.kids) args.push_back(eval(k));
        try {
            if (f == "tvector") {
                arity(1);
                auto census = line_census(to_lines(args[0], e.span));
                List out;
                for (long v : census.t_vector)
                    out.emplace_back(FieldElement(tower(e.span), Rational(v)));
                return Value(std::move(out));
            }
            if (f == "pn") {
                arity(2);
                auto census = line_census(to_lines(args[0], e.span));
                long n = to_count(args[1], e.span);
                List out;
                for (const auto& p : census.points_of_multiplicity(int(n))) out.emplace_back(p);
                return Value(std::move(out));
            }
            if (f == "dual") {
                arity(1);
                if (args[0].is<ProjPoint>()) return Value(dualize(args[0].as<ProjPoint>()));
                if (args[0].is<ProjLine>()) return Value(dualize(args[0].as<ProjLine>()));
                if (args[0].is<List>()) {
                    List out;
                    for (const auto& item : args[0].as<List>()) {
                        if (item.is<ProjPoint>()) out.emplace_back(dualize(item.as<ProjPoint>()));
                        else if (item.is<ProjLine>()) out.emplace_back(dualize(item.as<ProjLine>()));
                        else throw EvalError(e.span, "dual expects points or lines");
                    }
                    return Value(std::move(out));
                }
                throw EvalError(e.span, "dual expects a point or a line");
            }
            if (f == "meet") {
                arity(2);
                return Value(meet(to_line(args[0], e.span), to_line(args[1], e.span)));
            }
            if (f == "join") {
                arity(2);
                if (!args[0].is<ProjPoint>() || !args[1].is<ProjPoint>())
                    throw EvalError(e.span, "join expects two points");
                return Value(join(args[0].as<ProjPoint>(), args[1].as<ProjPoint>()));
            }
            if (f == "crossratio" || f == "harmonic") {
                arity(4);
                std::array<ProjPoint, 4> p{args[0].as<ProjPoint>(), args[1].as<ProjPoint>(),
                                           args[2].as<ProjPoint>(), args[3].as<ProjPoint>()};
                if (f == "crossratio") return Value(cross_ratio(p[0], p[1], p[2], p[3]));
                return Value(is_harmonic(p[0], p[1], p[2], p[3]));
            }
            if (f == "contact") {
                arity(3);
                PlaneCurve c(to_poly(args[0], e.span));
                MultiPoly d = to_poly(args[1], e.span);
                auto rep = contact_order(c, d, args[2].as<ProjPoint>());
                return Value(FieldElement(tower(e.span), Rational(rep.order)));
            }
            if (f == "is_mtl") {
                arity(2);
                PlaneCurve c(to_poly(args[0], e.span));
                return Value(mtl_verify(c, to_line(args[1], e.span)).is_mtl);
            }
            if (f == "hessian") {
                arity(1);
                return Value(hessian(PlaneCurve(to_poly(args[0], e.span))).form());
            }
            if (f == "sextactic") {
                arity(2);
                auto rep = sextactic_classify(PlaneCurve(to_poly(args[0], e.span)),
                                              args[1].as<ProjPoint>());
                switch (rep.cls) {
                    case SextacticClass::Proper: return Value(std::string("proper"));
                    case SextacticClass::Improper: return Value(std::string("improper"));
                    default: return Value(std::string("none"));
                }
            }
            if (f == "biosculating") {
                arity(2);
                auto found = biosculating_conics(PlaneCurve(to_poly(args[0], e.span)),
                                                 to_points(args[1], e.span));
                List out;
                for (const auto& b : found) out.emplace_back(b.conic);
                return Value(std::move(out));
            }
            if (f == "census") {
                if (e.kids.size() != 1 && e.kids.size() != 2)
                    throw EvalError(e.span, "census expects conics and optional claimed points");
                auto conics = to_conics(args[0], e.span);
                std::vector<ProjPoint> claims;
                if (e.kids.size() == 2) claims = to_points(args[1], e.span);
                auto census = conic_census(conics, claims);
                if (census.status != CensusStatus::Conclusive)
                    throw EvalError(e.span, "census inconclusive: " + census.note);
                long higher = 0;
                for (const auto& [k, c] : census.kfold)
                    if (k >= 3) higher += c;
                List out;
                for (long v : {census.distinct, census.simple, census.tangency, higher})
                    out.emplace_back(FieldElement(tower(e.span), Rational(v)));
                return Value(std::move(out));
            }
            if (f == "hilbert") {
                arity(2);
                auto pts = to_points(args[0], e.span);
                return Value(FieldElement(
                    tower(e.span), Rational(hilbert_function(pts, int(to_count(args[1], e.span))))));
            }
            if (f == "ci_check") {
                arity(3);
                auto pts = to_points(args[0], e.span);
                return Value(verify_complete_intersection(pts, to_poly(args[1], e.span),
                                                          to_poly(args[2], e.span))
                                 .certified());
            }
            if (f == "containment") {
                arity(3);
                std::vector<MultiPoly> h;
                if (args[2].is<List>())
                    for (const auto& item : args[2].as<List>()) h.push_back(to_poly(item, e.span));
                else h.push_back(to_poly(args[2], e.span));
                return Value(variety_containment(to_poly(args[0], e.span),
                                                 to_poly(args[1], e.span),
                                                 h) == Containment::Certified);
            }
        } catch (const DslError&) {
            throw;
        } catch (const std::bad_variant_access&) {
            throw EvalError(e.span, "wrong argument type for " + f);
        } catch (const KernelError& err) {
            throw EvalError(e.span, err.what());
        }
        throw EvalError(e.span, "unknown builtin '" + f + "'");
    }
};

} // namespace

ScenarioResult evaluate(const ScenarioAst& ast) {
    Evaluator ev;
    return ev.run(ast);
}

TowerPtr parse_tower_spec(const std::string& spec) {
    ScenarioAst ast = parse_text("field K = " + spec);
    if (ast.stmts.size() != 1 || ast.stmts[0].kind != Stmt::Kind::Field)
        throw MalformedSpec("not a field spec: " + spec);
    Evaluator ev;
    return ev.build_tower_from(ast.stmts[0]);
}

std::string eval_expression(const std::string& expr, const TowerPtr& tower) {
    ScenarioAst ast = parse_text("print " + expr);
    Evaluator ev;
    ev.force_tower(tower);
    auto result = ev.run(ast);
    return result.prints.empty() ? "" : result.prints.front();
}

} // namespace quartica
