#pragma once

#include <string_view>

#include "ltg/program.hpp"

namespace ltg {

/// Parses ProbLog-style program text:
///
///     % comment
///     0.3::e(a,b).
///     p(X,Y) :- e(X,Y).
///     0.8::t(X) :- r(X,Y).      (rule probability, desugared into a dummy fact)
///     query(p(a,X)).
///
/// Uppercase-initial terms are variables, lowercase-initial terms are constants.
/// Throws ParseError on syntax errors, arity mismatches, unsafe rules,
/// non-ground or duplicate facts and probabilities outside (0,1].
Program parse_program(std::string_view text);

/// Parses a single atom (e.g. a `--query` argument) against an existing program.
/// Unknown constants are interned; unknown predicates throw ErrorKind::UnknownPredicate.
Atom parse_atom(Program& prog, std::string_view text);

}  // namespace ltg
