#ifndef CHC2VMT_VMT_HPP_
#define CHC2VMT_VMT_HPP_

#include <string>

#include "chc2vmt/translate.hpp"

namespace chc2vmt {

//! Renders the transition system in VMT form: declarations for current,
//! next and input variables, one `.svN` define-fun pairing each state
//! variable with its next copy via :next, then .init/.trans/.prop carrying
//! :init/:trans/:invar-property 0. Deterministic, LF line endings.
std::string emit_vmt(const TransitionSystem &ts);

//! Renders a k-step unrolling as a plain SMT-LIB script: step-indexed
//! copies of the variables, I at step 0, the transition between adjacent
//! steps, the negated property at step k, check-sat. Throws InvalidK for
//! k < 0. Logic is QF_LIA when no Bool place exists and no multiplication
//! occurs, ALL otherwise.
std::string emit_bmc(const TransitionSystem &ts, int k);

//! SMT-LIB rendering of one term (shared by the emitters and tests).
std::string print_term(const TransitionSystem &ts, const TermPtr &t);

}  // namespace chc2vmt

#endif
