#ifndef PF_PARSE_HPP
#define PF_PARSE_HPP

#include <string_view>

#include "pf/bipoly.hpp"
#include "pf/forms.hpp"

namespace pf {

/// Parses an expression in x and y with rational coefficients, + - * ^,
/// parentheses and implicit multiplication ("3/2 x y - y^3"). Throws ParseError.
RatBiPoly parse_polynomial(std::string_view src);

/// "P,Q" -> P dx + Q dy. The split happens at the single top-level comma.
OneForm parse_one_form(std::string_view src);

} // namespace pf

#endif // PF_PARSE_HPP
