#ifndef CHC2VMT_TRANSLATE_HPP_
#define CHC2VMT_TRANSLATE_HPP_

#include <string>
#include <vector>

#include "chc2vmt/horn.hpp"
#include "chc2vmt/term.hpp"

namespace chc2vmt {

//! State variable of the transition system: one Bool flag per relation
//! ("relation has been derived"), plus one place per relation parameter
//! (holding the argument tuple of the most recent derivation). Flags come
//! first, in relation order; places follow, grouped by relation.
struct StateVar {
  enum class Kind { RelFlag, Place };
  Kind kind;
  int relation;         // owning relation index
  int place_index = 0;  // 1-based among the relation's parameters; 0 for flags
  Sort sort;
  int ordinal;          // dense position in TransitionSystem::state_vars
  std::string name;     // "flag.R" / "place.R.i"
};

//! One input per (clause, quantified variable): the nondeterministic choice
//! of that variable's value when the clause fires.
struct InputVar {
  int clause_id;
  std::string var_name;
  Sort sort;
  int index;         // dense position in TransitionSystem::input_vars
  std::string name;  // "in.<clause>.<var>"
};

//! One disjunct of the transition relation, from one clause.
//! guard mentions current-state and input variables only; update is the
//! primed head image (primed flag conjunct plus primed-place equalities);
//! frame preserves every state variable the head does not own.
struct TransitionDisjunct {
  int source_clause;
  TermPtr guard;
  TermPtr update;
  TermPtr frame;

  TermPtr formula() const;  // guard /\ update /\ frame
};

struct TransitionSystem {
  std::vector<Relation> relations;
  std::vector<StateVar> state_vars;
  std::vector<InputVar> input_vars;
  TermPtr init;      // all flags off
  TermPtr property;  // query flag never raised
  std::vector<TransitionDisjunct> disjuncts;  // one per clause, in clause order
  int query_relation = -1;

  int flag_ordinal(int relation) const;
  int place_ordinal(int relation, int place_index /*1-based*/) const;
  //! Input index for (clause, variable); -1 if absent.
  int input_index(int clause_id, const std::string &var) const;
};

//! Fills state_vars (flags then places) and input_vars ((clause, qvar)
//! order) for a normalized system.
void build_state_vars(const HornSystem &sys, TransitionSystem &ts);

//! The clause-term image: bound variables become the clause's inputs,
//! relation atoms become flag /\ place-equalities, interpreted structure
//! is mapped homomorphically.
TermPtr translate_term(const TransitionSystem &ts, int clause_id,
                       const TermPtr &t);

//! Current-state variables replaced by their primed copies. Pre: t has no
//! primed variables already.
TermPtr prime(const TermPtr &t);

//! /\ x' = x over the given state variables, in ordinal order.
TermPtr preserve(const TransitionSystem &ts, const std::vector<int> &ordinals);

TransitionDisjunct translate_clause(const TransitionSystem &ts,
                                    const HornClause &clause);

//! Whole-system translation. Pre: sys normalized and validated.
TransitionSystem translate_system(const HornSystem &sys);

//! Optional cleanup pass: a guard equality (place = input) lets the input
//! be replaced by the place throughout the disjunct and the equality be
//! dropped. Output keeps the input-variable table (unused entries stay).
TransitionSystem simplify_inline(const TransitionSystem &ts);

}  // namespace chc2vmt

#endif
