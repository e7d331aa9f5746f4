#include <doctest.h>

#include <set>

#include "chc2vmt/oracle.hpp"
#include "chc2vmt/sysgen.hpp"
#include "chc2vmt/vmt.hpp"

using namespace chc2vmt;

namespace {

constexpr std::uint64_t kSeeds = 40;

void collect_kinds(const TermPtr &t, std::set<int> &current,
                   std::set<int> &primed, std::set<int> &inputs) {
  switch (t->kind()) {
    case TermKind::StateVar: current.insert(t->index()); break;
    case TermKind::PrimedStateVar: primed.insert(t->index()); break;
    case TermKind::InputVar: inputs.insert(t->index()); break;
    default: break;
  }
  for (const TermPtr &a : t->args()) collect_kinds(a, current, primed, inputs);
}

}  // namespace

TEST_CASE("generated systems are normalized fixpoints") {
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    HornSystem sys = random_system(seed);
    REQUIRE(validate(sys).empty());
    std::size_t nrel = sys.relations.size();
    std::size_t nclauses = sys.clauses.size();
    normalize_query(sys);
    CHECK(sys.relations.size() == nrel);
    CHECK(sys.clauses.size() == nclauses);
    CHECK(validate(sys).empty());
  }
}

TEST_CASE("variable counts follow the construction") {
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    HornSystem sys = random_system(seed);
    TransitionSystem ts = translate_system(sys);
    std::size_t arity_sum = 0;
    for (const Relation &r : sys.relations) arity_sum += r.param_sorts.size();
    CHECK(ts.state_vars.size() == sys.relations.size() + arity_sum);
    CHECK(ts.disjuncts.size() == sys.clauses.size());
    std::size_t qvar_sum = 0;
    for (const HornClause &cl : sys.clauses) qvar_sum += cl.qvars.size();
    CHECK(ts.input_vars.size() == qvar_sum);
    // flags precede places, ordinals are dense
    for (std::size_t i = 0; i < ts.state_vars.size(); ++i) {
      CHECK(ts.state_vars[i].ordinal == static_cast<int>(i));
      if (i < sys.relations.size())
        CHECK(ts.state_vars[i].kind == StateVar::Kind::RelFlag);
      else
        CHECK(ts.state_vars[i].kind == StateVar::Kind::Place);
    }
  }
}

TEST_CASE("guards read, updates and frames write, nothing twice") {
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    TransitionSystem ts = translate_system(random_system(seed));
    for (const TransitionDisjunct &d : ts.disjuncts) {
      std::set<int> cur, primed, inp;
      collect_kinds(d.guard, cur, primed, inp);
      CHECK(primed.empty());
      std::set<int> written, frame_written;
      collect_kinds(d.update, cur, written, inp);
      collect_kinds(d.frame, cur, frame_written, inp);
      for (int o : frame_written) CHECK(!written.count(o));
      written.insert(frame_written.begin(), frame_written.end());
      CHECK(written.size() == ts.state_vars.size());
    }
  }
}

TEST_CASE("emission is deterministic and machine-readable") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    TransitionSystem a = translate_system(random_system(seed));
    TransitionSystem b = translate_system(random_system(seed));
    std::string vmt = emit_vmt(a);
    CHECK(vmt == emit_vmt(b));
    CHECK(emit_bmc(a, 3) == emit_bmc(b, 3));
    CHECK(!parse_sexprs(lex(vmt)).empty());
    CHECK(!parse_sexprs(lex(emit_bmc(a, 3))).empty());
  }
}

TEST_CASE("raised flags stay raised along every transition") {
  Domain dom(-4, 4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    HornSystem sys = random_system(seed);
    TransitionSystem ts = translate_system(sys);
    ReachOptions opts;
    opts.record_edges = true;
    ReachResult r = reach(ts, dom, 5, opts);
    for (const auto &[from, to] : r.edges)
      for (std::size_t i = 0; i < sys.relations.size(); ++i)
        if (from.vals[i] == 1) CHECK(to.vals[i] == 1);
  }
}

TEST_CASE("strict mode never trips on translated systems") {
  // guards check the flag before touching places, so Unset is unreachable
  Domain dom(-4, 4);
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    TransitionSystem ts = translate_system(random_system(seed));
    CHECK_NOTHROW(reach(ts, dom, 5));
  }
}

TEST_CASE("inlining changes neither states nor least step counts") {
  Domain dom(-4, 4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    HornSystem sys = random_system(seed);
    TransitionSystem plain = translate_system(sys);
    TransitionSystem inlined = simplify_inline(translate_system(sys));
    ReachResult a = reach(plain, dom, 5);
    ReachResult b = reach(inlined, dom, 5);
    CHECK(a.states == b.states);
  }
}

TEST_CASE("derivability and reachability agree on random systems") {
  Domain dom(-8, 8);
  for (std::uint64_t seed = 100; seed < 100 + kSeeds; ++seed) {
    HornSystem sys = random_system(seed);
    TransitionSystem ts = translate_system(sys);
    EquivalenceReport rep = check_equivalence(sys, ts, dom, 6);
    CHECK(rep.ok());
    bool underivable = true;
    for (const auto &[fact, depth] : rep.derive_result.facts)
      if (fact.first == sys.query_relation) underivable = false;
    CHECK(rep.property_holds == underivable);
  }
}
