#include <doctest.h>

#include "chc2vmt/script.hpp"

using namespace chc2vmt;

namespace {

struct Fixture {
  std::vector<Relation> relations;
  std::unordered_map<std::string, int> rels;
  Scope scope;

  Fixture() {
    relations.push_back({"R", {Sort::Int}, 0});
    relations.push_back({"B", {}, 1});
    rels = {{"R", 0}, {"B", 1}};
    scope.bind("x", Term::mk_bound("x", Sort::Int));
    scope.bind("p", Term::mk_bound("p", Sort::Bool));
  }

  TermPtr parse(std::string_view src) {
    std::vector<SExpr> es = parse_sexprs(lex(src));
    REQUIRE(es.size() == 1);
    return parse_term(es[0], scope, relations, rels);
  }

  ErrKind kind_of(std::string_view src) {
    try {
      parse(src);
    } catch (const Error &e) {
      return e.kind();
    }
    FAIL("expected a term error for: ", src);
    return ErrKind::UnknownIdentifier;
  }
};

ErrKind script_kind_of(std::string_view src) {
  try {
    parse_script_text(src);
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("expected a script error for: ", src);
  return ErrKind::UnknownIdentifier;
}

}  // namespace

TEST_CASE("parse_script reads declarations and asserts") {
  RawScript raw = parse_script_text(
      "(set-logic HORN)\n"
      "(set-info :status unsat)\n"
      "(declare-fun E () Bool)\n"
      "(declare-fun L (Int Bool) Bool)\n"
      "(assert true)\n"
      "(check-sat)\n"
      "(exit)\n");
  CHECK(raw.logic == "HORN");
  REQUIRE(raw.relations.size() == 2);
  CHECK(raw.relations[0].name == "E");
  CHECK(raw.relations[0].arity() == 0);
  CHECK(raw.relations[1].name == "L");
  REQUIRE(raw.relations[1].arity() == 2);
  CHECK(raw.relations[1].param_sorts[0] == Sort::Int);
  CHECK(raw.relations[1].param_sorts[1] == Sort::Bool);
  CHECK(raw.relations[1].index == 1);
  CHECK(raw.asserts.size() == 1);
  CHECK(raw.saw_check_sat);
}

TEST_CASE("script-level error taxonomy") {
  CHECK(script_kind_of("(set-logic QF_LIA)") == ErrKind::UnsupportedLogic);
  CHECK(script_kind_of("(declare-fun R () Bool)") == ErrKind::UnsupportedLogic);
  CHECK(script_kind_of("(set-logic HORN)(set-logic HORN)") ==
        ErrKind::UnsupportedCommand);
  CHECK(script_kind_of("(set-logic HORN)(declare-fun f () Int)") ==
        ErrKind::UnsupportedSort);
  CHECK(script_kind_of("(set-logic HORN)(declare-fun f (Real) Bool)") ==
        ErrKind::UnsupportedSort);
  CHECK(script_kind_of(
            "(set-logic HORN)(declare-fun R () Bool)(declare-fun R () Bool)") ==
        ErrKind::DuplicateRelation);
  CHECK(script_kind_of("(set-logic HORN)(declare-const c Bool)") ==
        ErrKind::UnsupportedCommand);
  CHECK(script_kind_of("(set-logic HORN)(get-model)") ==
        ErrKind::UnsupportedCommand);
}

TEST_CASE("terms: literals, variables, relation atoms") {
  Fixture f;
  TermPtr t = f.parse("true");
  CHECK(t->kind() == TermKind::BoolLit);
  CHECK(t->bool_value());
  t = f.parse("42");
  CHECK(t->kind() == TermKind::IntLit);
  CHECK(t->int_value() == 42);
  t = f.parse("(- 7)");
  CHECK(t->kind() == TermKind::IntLit);
  CHECK(t->int_value() == -7);
  t = f.parse("x");
  CHECK(t->kind() == TermKind::BoundVar);
  CHECK(t->sort() == Sort::Int);
  t = f.parse("(R (+ x 1))");
  CHECK(t->kind() == TermKind::RelAtom);
  CHECK(t->index() == 0);
  t = f.parse("B");
  CHECK(t->kind() == TermKind::RelAtom);
  CHECK(t->index() == 1);
}

TEST_CASE("big integer literals survive parsing") {
  Fixture f;
  TermPtr t = f.parse("123456789012345678901234567890");
  CHECK(t->kind() == TermKind::IntLit);
  CHECK(t->int_value() == mpz_class("123456789012345678901234567890"));
}

TEST_CASE("operator applications and sorts") {
  Fixture f;
  CHECK(f.parse("(+ x 1 2)")->sort() == Sort::Int);
  CHECK(f.parse("(- x 1)")->op() == Op::Sub);
  CHECK(f.parse("(* 2 x)")->op() == Op::Mul);
  CHECK(f.parse("(<= x 5)")->sort() == Sort::Bool);
  CHECK(f.parse("(=> p p p)")->op() == Op::Implies);
  CHECK(f.parse("(ite p x 0)")->sort() == Sort::Int);
  CHECK(f.parse("(ite p p true)")->sort() == Sort::Bool);
  CHECK(f.parse("(distinct x 1 2)")->op() == Op::Distinct);
  CHECK(f.parse("(= p true)")->sort() == Sort::Bool);
}

TEST_CASE("and/or accept any arity and collapse") {
  Fixture f;
  CHECK(f.parse("(and)")->bool_value());
  CHECK(!f.parse("(or)")->bool_value());
  CHECK(f.parse("(and p)")->kind() == TermKind::BoundVar);
  CHECK(f.parse("(and p p p)")->args().size() == 3);
}

TEST_CASE("term-level error taxonomy") {
  Fixture f;
  CHECK(f.kind_of("y") == ErrKind::UnknownIdentifier);
  CHECK(f.kind_of("(foo x)") == ErrKind::UnknownIdentifier);
  CHECK(f.kind_of("(< x 1 2)") == ErrKind::ArityMismatch);
  CHECK(f.kind_of("(not p p)") == ErrKind::ArityMismatch);
  CHECK(f.kind_of("(=> p)") == ErrKind::ArityMismatch);
  CHECK(f.kind_of("(R x x)") == ErrKind::ArityMismatch);
  CHECK(f.kind_of("(+ p 1)") == ErrKind::SortMismatch);
  CHECK(f.kind_of("(and x p)") == ErrKind::SortMismatch);
  CHECK(f.kind_of("(R p)") == ErrKind::SortMismatch);
  CHECK(f.kind_of("(ite x 1 2)") == ErrKind::SortMismatch);
  CHECK(f.kind_of("(ite p 1 true)") == ErrKind::SortMismatch);
  CHECK(f.kind_of("(= x p)") == ErrKind::SortMismatch);
  CHECK(f.kind_of("(forall ((y Int)) true)") == ErrKind::NestedQuantifier);
  CHECK(f.kind_of("(exists ((y Int)) true)") == ErrKind::NestedQuantifier);
}

TEST_CASE("term errors carry the offending span") {
  Fixture f;
  std::string src = "(and p (< x 1 2))";
  try {
    f.parse(src);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(src.substr(e.span().begin, e.span().end - e.span().begin) ==
          "(< x 1 2)");
  }
}

TEST_CASE("let substitutes eagerly in the outer scope") {
  Fixture f;
  TermPtr t = f.parse("(let ((y (+ x 1))) (< y 5))");
  REQUIRE(t->op() == Op::Lt);
  CHECK(t->args()[0]->op() == Op::Add);
  // parallel let: inner x refers to the outer binding
  t = f.parse("(let ((x 1) (z x)) (+ x z))");
  REQUIRE(t->op() == Op::Add);
  CHECK(t->args()[0]->kind() == TermKind::IntLit);
  CHECK(t->args()[1]->kind() == TermKind::BoundVar);
}

TEST_CASE("annotation nodes unwrap") {
  Fixture f;
  TermPtr t = f.parse("(! (< x 5) :named a1)");
  CHECK(t->op() == Op::Lt);
}
