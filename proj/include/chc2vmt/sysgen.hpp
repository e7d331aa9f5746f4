#ifndef CHC2VMT_SYSGEN_HPP_
#define CHC2VMT_SYSGEN_HPP_

#include <cstdint>
#include <random>

#include "chc2vmt/horn.hpp"

namespace chc2vmt {

//! Knobs for random linear-system generation. Defaults match the
//! randomized acceptance suite: small systems with small coefficients.
struct GenConfig {
  int max_relations = 4;
  int max_arity = 2;
  int max_clauses = 6;
  int max_total_places = 5;   // keeps explicit-state products tractable
  std::int64_t coeff_lo = -3;
  std::int64_t coeff_hi = 3;
  double bool_place_prob = 0.12;
  double query_clause_prob = 0.5;
};

//! Deterministic for a given (seed, config): returns a normalized,
//! validated linear system ready for translation.
HornSystem random_system(std::uint64_t seed, const GenConfig &cfg = {});

}  // namespace chc2vmt

#endif
