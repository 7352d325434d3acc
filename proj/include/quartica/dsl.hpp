#pragma once

// The scenario language: declarations of a field, geometric objects and
// assertions, so verifications run as scripts instead of recompiled tests.
//
//   scenario := stmt*
//   stmt     := fielddecl | letdecl | objdecl | assert | print
//   fielddecl:= "field" IDENT "=" "Q" "(" [IDENT ":" expr ("," IDENT ":" expr)*] ")"
//   letdecl  := "let" IDENT "=" expr
//   objdecl  := ("curve"|"line"|"conic"|"point"|"lines"|"points"|"conics") IDENT "=" expr
//   assert   := "assert" expr ("=="|"!=") expr | "assert" call
//   print    := "print" expr
//
// Expression precedence: ^  >  unary -  >  * /  >  + -, with ^ right
// associative.  Integer literals only; rationals are written as divisions.
// Comments run from '#' to the end of the line.

#include "quartica/ideals.hpp"

#include <memory>
#include <string>
#include <vector>

namespace quartica {

struct Span {
    int line = 0;
    int col = 0;
    std::string str() const { return std::to_string(line) + ":" + std::to_string(col); }
};

struct DslError : KernelError {
    Span span;
    DslError(const std::string& kind, Span s, const std::string& what)
        : KernelError(kind + " at " + s.str() + ": " + what), span(s) {}
};
struct LexError : DslError {
    LexError(Span s, const std::string& what) : DslError("LexError", s, what) {}
};
struct ParseError : DslError {
    ParseError(Span s, const std::string& what) : DslError("ParseError", s, what) {}
};
struct EvalError : DslError {
    EvalError(Span s, const std::string& what) : DslError("EvalError", s, what) {}
};

enum class TokKind { Ident, Integer, Punct, Keyword, Str, End };

struct Token {
    TokKind kind;
    std::string lexeme;
    Span span;
};

std::vector<Token> tokenize(const std::string& text);

struct Expr {
    enum class Kind { Integer, Ident, Str, Unary, Binary, Call, PointLit, ListLit };
    Kind kind = Kind::Integer;
    Span span;
    std::string text; // literal digits, identifier, operator symbol, or call name
    std::vector<Expr> kids;
    std::string print() const;
};

struct Stmt {
    enum class Kind { Field, Let, Obj, Assert, Print };
    Kind kind = Kind::Print;
    Span span;
    std::string name;     // declared identifier
    std::string obj_kind; // curve|line|conic|point|lines|points|conics
    std::vector<std::pair<std::string, Expr>> gens; // field generators
    std::vector<Expr> exprs;                        // operands
    std::string relop;                              // assert comparison, empty for bare calls
    std::string print() const;
};

struct ScenarioAst {
    std::vector<Stmt> stmts;
    std::string print() const;
};

ScenarioAst parse(const std::vector<Token>& tokens);
ScenarioAst parse_text(const std::string& text);

struct CheckOutcome {
    Span span;
    std::string text;     // the assertion as written
    bool passed = false;
    std::string computed; // canonical form of the left side
    std::string expected; // canonical form of the right side (or "true")
};

struct ScenarioResult {
    std::vector<CheckOutcome> checks;
    std::vector<std::string> prints;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

// Executes the statements in order against the kernel; every assertion yields
// an outcome, kernel errors surface as EvalError with the statement's span.
ScenarioResult evaluate(const ScenarioAst& ast);

// "Q(i:-1,r2:2,...)" -> tower; shared by the CLI --field option
TowerPtr parse_tower_spec(const std::string& spec);

// evaluate a scalar/polynomial expression in the given tower ("quartica eval")
std::string eval_expression(const std::string& expr, const TowerPtr& tower);

} // namespace quartica
