#pragma once

#include <string>
#include <string_view>

#include "binsig/signal.hpp"

namespace binsig {
namespace sigfmt {

// Parses the line-oriented canonical format:
//
//   signal v1
//   width 1
//   init 1
//   at 0 -> 0
//   cycle start 3 period 5
//   at +0 -> 1
//   at +2 -> 0
//
// '#' starts a comment; rationals are written p/q or p; multi-bit values
// are bit strings like 10. Throws SyntaxError (with line/column) for
// malformed input and SemanticError (with line) for well-formed directives
// that violate the format's rules.
UPSignal parse(std::string_view text);

// Canonical document for x; parse(serialize(x)) == x.
std::string serialize(const UPSignal& x);

// Parses a width-1 chi-sum expression such as
//
//   chi(-inf,0) ^ chi[1,2) ^ chi[3,5) ^ chi[6,7) repeat start=3 period=5
//
// The terms xor together; the optional repeat clause declares the tail: the
// function on [start, start+period) repeats from start on. A trailing '...'
// marks an expression that continues past its written terms and requires a
// repeat clause. Throws SyntaxError and MissingRepeatClause.
UPSignal parse_chi_expr(std::string_view text);

}  // namespace sigfmt
}  // namespace binsig
