#ifndef G2CAL_SEQPARSE_HPP
#define G2CAL_SEQPARSE_HPP

#include <string>
#include <vector>

#include "g2cal/kform.hpp"

namespace g2cal {

/// Parses a form in the structure-equation notation, e.g.
/// "e^{16}+e^{25}+e^{34}" or "2*e^{16}+sqrt(3)*e^{24}". Indices are single
/// digits 1..n. When degree >= 0 the result is coerced/checked to that
/// degree (a literal "0" parses as the zero form of any requested degree);
/// otherwise the degree is inferred from the terms.
KForm<Scalar> parse_form(const std::string& text, int n, int degree = -1);

/// Canonical printer: terms ordered lexicographically by index tuple,
/// "-" absorbed into the separator, rationals as p/q. parse . print = id.
std::string print_form(const KForm<Scalar>& x);

/// Same layout with floating-point coefficients (for reports).
std::string print_form(const KForm<double>& x, int significant_digits = 12);

/// Parses "(expr, ..., expr)" into the n-tuple (d eps^1, ..., d eps^n).
std::vector<KForm<Scalar>> parse_structure_tuple(const std::string& text);

std::string print_structure_tuple(const std::vector<KForm<Scalar>>& eqs);

/// One scalar literal, e.g. "-5/4", "sqrt(3)/12", "1/2+3/2*sqrt(5)".
Scalar parse_scalar_literal(const std::string& text);

}  // namespace g2cal

#endif
