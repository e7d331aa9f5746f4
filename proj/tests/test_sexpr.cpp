#include <doctest.h>

#include "chc2vmt/sexpr.hpp"

using namespace chc2vmt;

namespace {

SExpr parse_one(std::string_view src) {
  std::vector<SExpr> es = parse_sexprs(lex(src));
  REQUIRE(es.size() == 1);
  return es[0];
}

ErrKind kind_of(std::string_view src) {
  try {
    parse_sexprs(lex(src));
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("expected a parse error for: ", src);
  return ErrKind::UnexpectedEOF;
}

}  // namespace

TEST_CASE("lexer token kinds and text") {
  std::vector<Token> toks = lex("(foo :bar |a b| \"x\"\"y\" 12) ; trailing");
  REQUIRE(toks.size() == 7);
  CHECK(toks[0].kind == TokKind::LParen);
  CHECK(toks[1].text == "foo");
  CHECK(toks[2].text == ":bar");
  CHECK(toks[3].kind == TokKind::Atom);
  CHECK(toks[3].text == "a b");
  CHECK(toks[4].kind == TokKind::String);
  CHECK(toks[4].text == "x\"y");
  CHECK(toks[5].text == "12");
  CHECK(toks[6].kind == TokKind::RParen);
}

TEST_CASE("lexer handles smtlib symbol characters") {
  std::vector<Token> toks = lex("a@3 q.U <= + ~!$%^&*_-+=<>.?/");
  REQUIRE(toks.size() == 5);
  CHECK(toks[0].text == "a@3");
  CHECK(toks[1].text == "q.U");
  CHECK(toks[2].text == "<=");
  CHECK(toks[4].text == "~!$%^&*_-+=<>.?/");
}

TEST_CASE("comments run to end of line") {
  std::vector<Token> toks = lex("a ; b c d\nb");
  REQUIRE(toks.size() == 2);
  CHECK(toks[0].text == "a");
  CHECK(toks[1].text == "b");
}

TEST_CASE("parse builds nested lists") {
  SExpr e = parse_one("(assert (=> (and A B) C))");
  REQUIRE(!e.is_atom);
  REQUIRE(e.children.size() == 2);
  CHECK(e.children[0].atom == "assert");
  const SExpr &imp = e.children[1];
  REQUIRE(imp.children.size() == 3);
  CHECK(imp.children[0].atom == "=>");
  CHECK(imp.children[1].children.size() == 3);
  CHECK(imp.children[2].atom == "C");
}

TEST_CASE("spans nest: child span inside parent span") {
  std::string src = "  (a (b c) d)";
  SExpr e = parse_one(src);
  CHECK(src.substr(e.span.begin, e.span.end - e.span.begin) == "(a (b c) d)");
  const SExpr &inner = e.children[1];
  CHECK(src.substr(inner.span.begin, inner.span.end - inner.span.begin) ==
        "(b c)");
  CHECK(e.span.begin <= inner.span.begin);
  CHECK(inner.span.end <= e.span.end);
  for (const SExpr &kid : e.children) {
    CHECK(e.span.begin < kid.span.begin);
    CHECK(kid.span.end < e.span.end);
  }
}

TEST_CASE("line_col_at maps spans to positions") {
  std::string src = "(a\n  (b))";
  SExpr e = parse_one(src);
  LineCol lc = line_col_at(src, e.children[1].span.begin);
  CHECK(lc.line == 2);
  CHECK(lc.col == 3);
}

TEST_CASE("lex and parse error kinds") {
  CHECK(kind_of("(a b") == ErrKind::UnexpectedEOF);
  CHECK(kind_of("(a))") == ErrKind::UnbalancedParens);
  CHECK(kind_of(")") == ErrKind::UnbalancedParens);
  CHECK(kind_of("\"abc") == ErrKind::UnterminatedString);
  CHECK(kind_of("|abc") == ErrKind::UnterminatedString);
  CHECK(kind_of("a \x01 b") == ErrKind::IllegalCharacter);
}

TEST_CASE("print round-trips structure") {
  const char *cases[] = {
      "(set-logic HORN)",
      "(assert (forall ((x Int)) (=> (R x) (R (+ x 1)))))",
      "(a (b (c (d))) e)",
      "()",
  };
  for (const char *src : cases) {
    SExpr e = parse_one(src);
    SExpr back = parse_one(print_sexpr(e));
    CHECK(sexpr_equal(e, back));
  }
}

TEST_CASE("print re-quotes non-simple symbols") {
  SExpr e = parse_one("(|a b| c)");
  CHECK(print_sexpr(e) == "(|a b| c)");
  SExpr back = parse_one(print_sexpr(e));
  CHECK(back.children[0].atom == "a b");
}

TEST_CASE("symbol quoting predicate") {
  CHECK(is_simple_symbol("foo"));
  CHECK(is_simple_symbol("q.U"));
  CHECK(is_simple_symbol("<="));
  CHECK(is_simple_symbol("in.2.x"));
  CHECK(!is_simple_symbol(""));
  CHECK(!is_simple_symbol("a b"));
  CHECK(!is_simple_symbol("(a)"));
  CHECK(quote_symbol("foo") == "foo");
  CHECK(quote_symbol("a b") == "|a b|");
}

TEST_CASE("multiple toplevel forms parse in order") {
  std::vector<SExpr> es = parse_sexprs(lex("(a) b (c d)"));
  REQUIRE(es.size() == 3);
  CHECK(!es[0].is_atom);
  CHECK(es[1].atom == "b");
  CHECK(es[2].children.size() == 2);
}
