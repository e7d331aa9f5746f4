#ifndef CHC2VMT_HORN_HPP_
#define CHC2VMT_HORN_HPP_

#include <optional>
#include <string>
#include <vector>

#include "chc2vmt/script.hpp"
#include "chc2vmt/term.hpp"

namespace chc2vmt {

struct QVar {
  std::string name;
  Sort sort;
};

//! One linear Horn clause: forall qvars. body_atom /\ constraint => head.
//! body_atom is null for fact clauses. Until normalize_query runs, the head
//! may be the query pseudo-head `false` (head == null, is_query false-head);
//! afterwards every head is a RelAtom.
struct HornClause {
  int id = -1;  // dense, 0-based, in input order
  std::vector<QVar> qvars;
  TermPtr body_atom;   // RelAtom or null
  TermPtr constraint;  // Bool term, no RelAtom inside
  TermPtr head;        // RelAtom, or null when the head is `false`
  Span span;           // the originating assert

  bool head_is_false() const { return head == nullptr; }
};

struct HornSystem {
  std::vector<Relation> relations;  // after normalize_query, includes U
  std::vector<HornClause> clauses;
  int query_relation = -1;          // index of U, -1 before normalization

  const Relation &query() const { return relations.at(query_relation); }
};

//! Splits one asserted formula into a clause. Accepts
//!   (forall (vars) (=> body head)), (forall (vars) head),
//!   (=> body head), head,
//!   (not (exists (vars) body))        ; query, rewritten to body => false
//! The body is flattened across nested `and`; relation atoms may sit at
//! any conjunctive position. `true` asserts are dropped (no clause).
std::optional<HornClause> clausify(const SExpr &asserted,
                                   const std::vector<Relation> &relations);

//! Builds the clause list for a whole script, assigning dense ids.
HornSystem clausify_script(const RawScript &raw);

//! Throws NonlinearClause if any clause would need more than one body atom.
//! (clausify itself detects the shape; this re-walks and is callable on
//! programmatically built systems.)
void check_linear(const HornSystem &sys);

//! Ensures exactly one 0-ary query relation U and rewrites all false-heads
//! to U. A fresh relation "q.U" (suffixed .1, .2, ... on collision) is
//! synthesized unless `designated` names a declared 0-ary relation to use
//! directly. Idempotent: a second run changes nothing.
void normalize_query(HornSystem &sys,
                     const std::optional<std::string> &designated = std::nullopt);

//! Re-checks every structural invariant; returns all violations found.
std::vector<Diagnostic> validate(const HornSystem &sys);

//! parse + clausify + check_linear + normalize_query + validate.
//! Throws Error on the first failure; `designated` as in normalize_query.
HornSystem load_horn_text(std::string_view src,
                          const std::optional<std::string> &designated = std::nullopt);

}  // namespace chc2vmt

#endif
