#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jacobi/rational_function.hpp"

namespace jacobi {

/// Parses an expression over the declared identifiers.
///
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := base ('^' integer)?
///   base    := identifier | integer ['/' integer] | '(' expr ')'
///
/// A literal "p/q" is read as one rational unless it directly follows a '/'
/// or q is raised to a power, so "1/2/3" stays left-associative and
/// "2/3^2" means 2/9.
///
/// Throws ParseError (with a character offset), Error(UndeclaredIdentifier)
/// and Error(ZeroDenominator).
RationalFunction parse_expression(std::string_view text, const std::vector<std::string>& vars,
                                  const std::vector<std::string>& params);

/// Same grammar with a single list of allowed identifiers.
RationalFunction parse_expression(std::string_view text, const std::vector<std::string>& identifiers);

/// Parses an expression that must be a polynomial; throws ParseError otherwise.
Poly parse_polynomial(std::string_view text, const std::vector<std::string>& identifiers);

}  // namespace jacobi
