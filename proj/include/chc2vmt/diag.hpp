#ifndef CHC2VMT_DIAG_HPP_
#define CHC2VMT_DIAG_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chc2vmt {

//! Half-open byte range [begin, end) into the source buffer.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct LineCol {
  std::size_t line = 1;  // 1-based
  std::size_t col = 1;   // 1-based, bytes
};

LineCol line_col_at(std::string_view src, std::size_t offset);

enum class ErrKind {
  // lexing / s-expression reading
  UnterminatedString,
  IllegalCharacter,
  UnbalancedParens,
  UnexpectedEOF,
  // script level
  UnsupportedLogic,
  UnsupportedSort,
  UnsupportedCommand,
  DuplicateRelation,
  // term level
  UnknownIdentifier,
  ArityMismatch,
  SortMismatch,
  // clause level
  HeadNotAtomOrFalse,
  NestedQuantifier,
  RelationAtomUnderNonConjunctiveContext,
  NonlinearClause,
  // emission / oracle
  InvalidK,
  UnassignedVariable,
  UnsetRead,
  BudgetExceeded,
  EvalOverflow,
};

const char *err_kind_name(ErrKind k);

//! Error with a source location. `span` may be empty (0,0) for errors that
//! have no meaningful position (budget exhaustion, emission parameters).
class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, Span span, const std::string &msg)
      : std::runtime_error(msg), kind_(kind), span_(span) {}

  ErrKind kind() const { return kind_; }
  Span span() const { return span_; }

 private:
  ErrKind kind_;
  Span span_;
};

//! One entry of an aggregated validation report.
struct Diagnostic {
  ErrKind kind;
  Span span;
  std::string message;
};

//! Renders "file:line:col: message" (or "file: message" when the span is
//! empty) for the given source buffer.
std::string render_diag(std::string_view file, std::string_view src,
                        const Diagnostic &d);

}  // namespace chc2vmt

#endif
