#ifndef CHC2VMT_SEXPR_HPP_
#define CHC2VMT_SEXPR_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "chc2vmt/diag.hpp"

namespace chc2vmt {

enum class TokKind { LParen, RParen, Atom, String };

struct Token {
  TokKind kind;
  std::string text;  // atom: symbol text (|..| stripped); string: decoded body
  Span span;
};

//! Tokenizes SMT-LIB surface syntax: parens, simple and |quoted| symbols,
//! "string" literals, ; comments to end of line. Keywords (:foo) and
//! numerals are plain atoms here.
std::vector<Token> lex(std::string_view src);

//! Atom or list. Every node carries the byte span of its source text;
//! a list's span covers its parentheses, so child spans nest inside it.
struct SExpr {
  bool is_atom = false;
  std::string atom;              // nonempty iff is_atom
  std::vector<SExpr> children;   // empty if is_atom
  Span span;

  static SExpr make_atom(std::string text, Span sp);
  static SExpr make_list(std::vector<SExpr> kids, Span sp);
};

//! Parses a whole token stream into the top-level s-expression sequence.
std::vector<SExpr> parse_sexprs(const std::vector<Token> &toks);

//! Canonical single-line rendering; symbols are re-quoted when needed.
std::string print_sexpr(const SExpr &e);

bool sexpr_equal(const SExpr &a, const SExpr &b);

//! True iff `name` is printable as a bare SMT-LIB simple symbol.
bool is_simple_symbol(std::string_view name);

//! `name` wrapped in |..| unless it is a simple symbol.
std::string quote_symbol(std::string_view name);

}  // namespace chc2vmt

#endif
