#pragma once

#include <string>
#include <string_view>

#include "cohere/formula.hpp"
#include "cohere/term.hpp"

namespace cohere {

/// Formulae: `p`, `I`, `(A * B)`, `E<i> A`, or a strict list `[p, E1[q, r]]`
/// which is read as its right-bracketed embedding. `E` alone means `E1`.
/// A single unparenthesized `*` is accepted at the top level.
Formula parse_formula(std::string_view text);

/// Arrow terms in the shared grammar. `.` groups to the right and binds
/// loosest; `f * g * h` without parentheses is rejected. Positions in errors
/// and in ArrowTerm::source_pos are byte offsets into `text`.
ArrowTerm parse_term(std::string_view text);

std::string to_string(Formula a);
std::string to_string(const ArrowTerm& t);
std::string to_string(const Head& h);

}  // namespace cohere
