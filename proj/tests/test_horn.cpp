#include <doctest.h>

#include <fstream>
#include <sstream>

#include "chc2vmt/horn.hpp"

using namespace chc2vmt;

namespace {

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char *kPrelude =
    "(set-logic HORN)"
    "(declare-fun E () Bool)"
    "(declare-fun L (Int) Bool)"
    "(declare-fun M (Int) Bool)";

HornSystem load(const std::string &body) {
  return load_horn_text(std::string(kPrelude) + body + "(check-sat)");
}

ErrKind kind_of(const std::string &body) {
  try {
    load(body);
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("expected a clause error for: ", body);
  return ErrKind::NonlinearClause;
}

}  // namespace

TEST_CASE("clausify accepts every clause shape") {
  HornSystem sys = load(
      "(assert E)"                                                   // bare fact
      "(assert (=> E (L 0)))"                                        // bare rule
      "(assert (forall ((x Int)) (L x)))"                            // forall fact
      "(assert (forall ((x Int)) (=> (and (L x) (< x 5)) (M x))))"   // forall rule
      "(assert (not (exists ((x Int)) (and (M x) (> x 3)))))"        // query
      "(assert (forall ((x Int)) (=> (M x) false)))");               // false head
  REQUIRE(sys.clauses.size() == 6);
  CHECK(!sys.clauses[0].body_atom);
  CHECK(sys.clauses[0].head->index() == 0);
  CHECK(sys.clauses[1].body_atom->index() == 0);
  CHECK(sys.clauses[2].qvars.size() == 1);
  CHECK(!sys.clauses[2].body_atom);
  CHECK(sys.clauses[3].body_atom->index() == 1);
  CHECK(sys.clauses[3].constraint->op() == Op::Lt);
  // the not-exists query becomes body => U, keeping body atom and constraint
  CHECK(sys.clauses[4].body_atom->index() == 2);
  CHECK(sys.clauses[4].constraint->op() == Op::Gt);
  CHECK(sys.clauses[4].head->index() == sys.query_relation);
  CHECK(sys.clauses[5].head->index() == sys.query_relation);
}

TEST_CASE("assert true produces no clause") {
  HornSystem sys = load("(assert true)(assert E)");
  CHECK(sys.clauses.size() == 1);
  CHECK(sys.clauses[0].id == 0);
}

TEST_CASE("body flattening crosses nested and") {
  HornSystem sys = load(
      "(assert (forall ((x Int)) "
      "  (=> (and (and (< x 5) (L x)) (and (> x 0))) (M x))))");
  REQUIRE(sys.clauses.size() == 1);
  const HornClause &cl = sys.clauses[0];
  CHECK(cl.body_atom->index() == 1);
  // both comparisons land in the constraint
  CHECK(conjuncts_of(cl.constraint).size() == 2);
}

TEST_CASE("one body atom is the linearity limit") {
  CHECK(kind_of("(assert (forall ((x Int)) (=> (and (L x) (M x)) E)))") ==
        ErrKind::NonlinearClause);
}

TEST_CASE("relation atoms only at conjunctive positions") {
  CHECK(kind_of("(assert (forall ((x Int)) (=> (or (L x) (< x 5)) E)))") ==
        ErrKind::RelationAtomUnderNonConjunctiveContext);
  CHECK(kind_of("(assert (forall ((x Int)) (=> (not (L x)) E)))") ==
        ErrKind::RelationAtomUnderNonConjunctiveContext);
}

TEST_CASE("head must be an atom or false") {
  CHECK(kind_of("(assert (forall ((x Int)) (=> (L x) (< x 5))))") ==
        ErrKind::HeadNotAtomOrFalse);
  CHECK(kind_of("(assert (forall ((x Int)) (=> (L x) (and E E))))") ==
        ErrKind::HeadNotAtomOrFalse);
}

TEST_CASE("nested quantifiers are rejected") {
  CHECK(kind_of("(assert (forall ((x Int)) "
                "(=> (L x) (forall ((y Int)) E))))") ==
        ErrKind::NestedQuantifier);
}

TEST_CASE("duplicate binders: last sort wins, one binder survives") {
  HornSystem sys =
      load("(assert (forall ((x Int) (x Int)) (=> (L x) (M x))))");
  CHECK(sys.clauses[0].qvars.size() == 1);
  CHECK(validate(sys).empty());
}

TEST_CASE("normalize_query synthesizes a fresh 0-ary relation") {
  HornSystem sys = load("(assert (forall ((x Int)) (=> (M x) false)))");
  REQUIRE(sys.query_relation >= 0);
  const Relation &u = sys.query();
  CHECK(u.name == "q.U");
  CHECK(u.arity() == 0);
  CHECK(sys.clauses[0].head->index() == u.index);
  // idempotent: nothing changes on a second run
  std::size_t nrel = sys.relations.size();
  normalize_query(sys);
  CHECK(sys.relations.size() == nrel);
  CHECK(sys.query().name == "q.U");
}

TEST_CASE("normalize_query avoids name collisions") {
  HornSystem sys = load_horn_text(
      "(set-logic HORN)"
      "(declare-fun q.U (Int) Bool)"
      "(assert (forall ((x Int)) (=> (q.U x) false)))"
      "(check-sat)");
  CHECK(sys.query().name == "q.U.1");
}

TEST_CASE("a designated 0-ary relation can serve as the query") {
  HornSystem sys = load_horn_text(
      "(set-logic HORN)"
      "(declare-fun Bad () Bool)"
      "(declare-fun L (Int) Bool)"
      "(assert (forall ((x Int)) (=> (L x) Bad)))"
      "(check-sat)",
      "Bad");
  CHECK(sys.query().name == "Bad");
  CHECK(sys.relations.size() == 2);

  CHECK_THROWS_AS(load_horn_text("(set-logic HORN)(declare-fun B () Bool)"
                                 "(assert B)(check-sat)",
                                 "Missing"),
                  Error);
  CHECK_THROWS_AS(load_horn_text("(set-logic HORN)(declare-fun L (Int) Bool)"
                                 "(assert (forall ((x Int)) (L x)))(check-sat)",
                                 "L"),
                  Error);
}

TEST_CASE("clause ids are dense and in input order") {
  HornSystem sys = load("(assert E)(assert true)(assert (=> E (L 1)))");
  REQUIRE(sys.clauses.size() == 2);
  CHECK(sys.clauses[0].id == 0);
  CHECK(sys.clauses[1].id == 1);
  CHECK(validate(sys).empty());
}

TEST_CASE("validate flags broken systems") {
  HornSystem sys = load("(assert E)");
  REQUIRE(validate(sys).empty());
  HornSystem bad = sys;
  bad.clauses[0].head = nullptr;
  CHECK(!validate(bad).empty());
  bad = sys;
  bad.clauses[0].constraint =
      Term::mk_app(Op::Add, {Term::mk_int(1), Term::mk_int(1)});
  CHECK(!validate(bad).empty());
  bad = sys;
  bad.clauses[0].qvars = {{"x", Sort::Int}, {"x", Sort::Int}};
  CHECK(!validate(bad).empty());
  bad = sys;
  bad.clauses[0].constraint = Term::mk_app(
      Op::Lt, {Term::mk_bound("free", Sort::Int), Term::mk_int(0)});
  CHECK(!validate(bad).empty());
}

TEST_CASE("the worked example loads with the expected shape") {
  HornSystem sys = load_horn_text(slurp(std::string(TEST_DATA_DIR) +
                                        "/counting.smt2"));
  REQUIRE(sys.relations.size() == 4);  // E, L, M + synthesized query
  REQUIRE(sys.clauses.size() == 5);
  CHECK(sys.relations[0].name == "E");
  CHECK(sys.relations[1].name == "L");
  CHECK(sys.relations[2].name == "M");
  CHECK(sys.query().name == "q.U");
  CHECK(!sys.clauses[0].body_atom);            // E
  CHECK(sys.clauses[1].body_atom->index() == 0);  // E => L(0)
  CHECK(sys.clauses[2].body_atom->index() == 1);  // L => L
  CHECK(sys.clauses[3].body_atom->index() == 1);  // L => M
  CHECK(sys.clauses[4].body_atom->index() == 2);  // M => false
  CHECK(sys.clauses[4].head->index() == sys.query_relation);
  CHECK(validate(sys).empty());
}
