#ifndef CHC2VMT_ORACLE_HPP_
#define CHC2VMT_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chc2vmt/horn.hpp"
#include "chc2vmt/translate.hpp"

namespace chc2vmt {

//! Finite value range for Int variables; Bool always ranges over {0,1}.
//! Kept deliberately small: both engines enumerate.
struct Domain {
  std::int64_t lo = -8;
  std::int64_t hi = 8;
  static constexpr std::int64_t kMaxSize = 64;

  Domain() = default;
  Domain(std::int64_t lo, std::int64_t hi);  // asserts lo <= hi, size <= kMaxSize

  std::int64_t size() const { return hi - lo + 1; }
  bool contains_int(std::int64_t v) const { return lo <= v && v <= hi; }
  bool contains(Sort s, std::int64_t v) const {
    return s == Sort::Bool ? (v == 0 || v == 1) : contains_int(v);
  }
};

//! Ground fact R(tuple), first derivable in `depth` steps (>= 1).
//! Bool arguments are stored as 0/1.
struct Fact {
  int relation;
  std::vector<std::int64_t> tuple;
  int depth;
};

//! Value vector indexed by state-variable ordinal. Flags are 0/1, places
//! hold a domain value or kUnset ("never written"; distinguished for state
//! identity, preserved by frames, never readable).
struct ConcreteState {
  static constexpr std::int64_t kUnset = INT64_MIN;
  std::vector<std::int64_t> vals;

  bool operator==(const ConcreteState &o) const { return vals == o.vals; }
};

struct ConcreteStateHash {
  std::size_t operator()(const ConcreteState &s) const;
};

struct OracleLimits {
  std::size_t max_facts = 1u << 20;
  std::size_t max_states = 1u << 21;
};

using FactKey = std::pair<int, std::vector<std::int64_t>>;  // (relation, tuple)

struct DeriveResult {
  //! (relation, tuple) -> least derivation depth.
  std::map<FactKey, int> facts;
  int rounds = 0;
};

//! Ground-evaluation environment: whichever tables the term at hand can
//! mention. Values are int64 with Bool as 0/1.
struct Env {
  const std::vector<std::int64_t> *state = nullptr;   // StateVar, by ordinal
  const std::vector<std::int64_t> *inputs = nullptr;  // InputVar, by index
  const std::unordered_map<std::string, int> *var_slots = nullptr;  // BoundVar name -> slot
  const std::vector<std::int64_t> *slots = nullptr;
};

//! Evaluates a variable-closed term. `and`/`or`/`=>`/`ite` are lazy
//! (untaken branches are not read). Throws UnassignedVariable for a
//! variable with no binding, UnsetRead when a read state variable holds
//! ConcreteState::kUnset, EvalOverflow when a literal or intermediate
//! value exceeds int64.
std::int64_t eval_ground(const TermPtr &t, const Env &env);

//! Bounded-depth least-model computation, semi-naive: depth-1 facts from
//! fact clauses, depth-(d+1) facts from clauses whose body atom matches a
//! depth-d fact. Quantified variables range over `dom`; any instantiation
//! producing an out-of-domain value is pruned. Depth is the least
//! derivation length. Throws BudgetExceeded past limits.max_facts.
DeriveResult derive(const HornSystem &sys, const Domain &dom, int max_depth,
                    const OracleLimits &limits = {});

struct ReachOptions {
  //! Strict mode (default) makes a guard or update that reads an Unset
  //! place an error; permissive mode treats that instantiation as
  //! non-firing and counts it (mutation tests use this).
  bool permissive_unset = false;
  //! Enumerate all concrete initial place values instead of the single
  //! canonical all-Unset initial state (cross-check mode).
  bool enumerate_initial_places = false;
  bool record_edges = false;
};

struct ReachResult {
  std::unordered_map<ConcreteState, int, ConcreteStateHash> states;  // -> least step count
  std::vector<std::pair<ConcreteState, ConcreteState>> edges;  // if recorded
  std::size_t unset_skips = 0;  // permissive mode: instantiations skipped
  int rounds = 0;
};

//! Explicit-state BFS over the translated system: initial state has all
//! flags off and all places Unset; each step tries every disjunct under
//! every input valuation over `dom`. Out-of-domain successor values prune
//! the instantiation; primed variables left unconstrained by a (mutated)
//! disjunct are enumerated. Throws BudgetExceeded past limits.max_states.
ReachResult reach(const TransitionSystem &ts, const Domain &dom, int max_steps,
                  const ReachOptions &opts = {}, const OracleLimits &limits = {});

//! Facts witnessed by a reached state set: state s witnesses R(t) iff
//! s has R's flag on and every place of R equals the tuple component or is
//! Unset (an Unset place witnesses every domain value). Depth is the least
//! witnessing step count.
std::map<FactKey, int> witnessed_facts(const TransitionSystem &ts,
                                       const Domain &dom,
                                       const ReachResult &r);

enum class FactStatus { Ok, DepthMismatch, NotReached, NotDerived };

struct FactReport {
  FactKey fact;
  int derive_depth = -1;  // -1: absent
  int reach_depth = -1;
  FactStatus status;
};

struct EquivalenceReport {
  std::vector<FactReport> facts;  // sorted by (relation, tuple)
  std::size_t discrepancies = 0;
  bool property_holds = true;  // no reached state has the query flag on
  DeriveResult derive_result;
  ReachResult reach_result;

  bool ok() const { return discrepancies == 0; }
};

//! Runs both engines to the same bound and compares: every fact must be
//! derivable iff witnessed, with equal least depths. Discrepancies are
//! report content, not errors.
EquivalenceReport check_equivalence(const HornSystem &sys,
                                    const TransitionSystem &ts,
                                    const Domain &dom, int bound,
                                    const ReachOptions &ropts = {},
                                    const OracleLimits &limits = {});

//! "fact R(t) derive=dD reach=dR status" line, depths rendered `-` when absent.
std::string fact_report_line(const TransitionSystem &ts, const FactReport &fr);

}  // namespace chc2vmt

#endif
