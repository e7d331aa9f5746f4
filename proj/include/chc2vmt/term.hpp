#ifndef CHC2VMT_TERM_HPP_
#define CHC2VMT_TERM_HPP_

#include <gmpxx.h>

#include <cassert>
#include <memory>
#include <string>
#include <vector>

#include "chc2vmt/diag.hpp"

namespace chc2vmt {

enum class Sort { Bool, Int };

const char *sort_name(Sort s);

enum class Op {
  Add, Sub, Neg, Mul,
  Lt, Le, Gt, Ge,
  Eq, Distinct,
  And, Or, Not, Implies, Ite,
};

const char *op_name(Op op);

//! Uninterpreted predicate symbol. `index` is the dense position in the
//! owning system's relation table.
struct Relation {
  std::string name;
  std::vector<Sort> param_sorts;
  int index = -1;

  int arity() const { return static_cast<int>(param_sorts.size()); }
};

enum class TermKind {
  BoolLit,
  IntLit,
  BoundVar,        // clause variable, named
  StateVar,        // transition-system variable, by ordinal
  PrimedStateVar,  // next-state copy of a state variable, by ordinal
  InputVar,        // per-clause input, by index
  App,             // interpreted operator application
  RelAtom,         // relation applied to argument terms
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

//! Immutable, sort-annotated term. Nodes are shared; build through the
//! mk_* helpers, which check operator signatures with asserts (caller
//! code is expected to have done user-facing sort checking already).
class Term {
 public:
  TermKind kind() const { return kind_; }
  Sort sort() const { return sort_; }

  bool bool_value() const { assert(kind_ == TermKind::BoolLit); return bval_; }
  const mpz_class &int_value() const { assert(kind_ == TermKind::IntLit); return ival_; }
  const std::string &var_name() const { assert(kind_ == TermKind::BoundVar); return name_; }
  //! StateVar/PrimedStateVar ordinal, InputVar index, or RelAtom relation index.
  int index() const { return index_; }
  Op op() const { assert(kind_ == TermKind::App); return op_; }
  const std::vector<TermPtr> &args() const { return args_; }

  static TermPtr mk_bool(bool v);
  static TermPtr mk_int(mpz_class v);
  static TermPtr mk_bound(std::string name, Sort sort);
  static TermPtr mk_state(int ordinal, Sort sort);
  static TermPtr mk_primed(int ordinal, Sort sort);
  static TermPtr mk_input(int input_index, Sort sort);
  static TermPtr mk_app(Op op, std::vector<TermPtr> args);
  static TermPtr mk_rel_atom(const Relation &rel, std::vector<TermPtr> args);

 protected:
  Term() = default;

 private:
  TermKind kind_ = TermKind::BoolLit;
  Sort sort_ = Sort::Bool;
  bool bval_ = false;
  mpz_class ival_;
  std::string name_;
  int index_ = -1;
  Op op_ = Op::And;
  std::vector<TermPtr> args_;
};

//! Conjunction normalized per the translation contract: empty -> true,
//! singleton -> the term itself, otherwise an n-ary And.
TermPtr mk_and(std::vector<TermPtr> conjuncts);
TermPtr mk_not(TermPtr t);
TermPtr mk_eq(TermPtr a, TermPtr b);

//! Flattens nested And nodes into a conjunct list (non-And -> singleton;
//! literal true -> empty).
std::vector<TermPtr> conjuncts_of(const TermPtr &t);

bool term_equal(const TermPtr &a, const TermPtr &b);

//! True iff any RelAtom node occurs in t.
bool contains_rel_atom(const TermPtr &t);

//! Collects the distinct BoundVar names in t, in first-occurrence order.
void collect_bound_vars(const TermPtr &t, std::vector<std::string> &out);

}  // namespace chc2vmt

#endif
