#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "hodge/forms.hpp"

namespace hodge {

/// Basis symbol attached to a term: none (a function), d(x) or D(x).
enum class BasisKind { None = 0, Differential = 1, Derivation = 2 };

/// Normalized expression: a sum of coeff * monomial * basis terms with at most
/// one basis symbol per term and no mixing of d(.) and D(.).
struct ExprAST {
  struct Key {
    BasisKind kind = BasisKind::None;
    std::size_t var = 0;  // basis variable, 0 when kind == None

    friend auto operator<=>(const Key&, const Key&) = default;
  };

  std::size_t nvars = 0;
  std::map<Key, Polynomial> parts;  // zero parts are dropped

  bool is_zero() const { return parts.empty(); }
  BasisKind kind() const;  // None for an empty or pure-function expression

  friend bool operator==(const ExprAST&, const ExprAST&) = default;
};

/// Grammar:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor | factor)*
///   factor := rational | var ['^' int] | 'd(' var ')' | 'D(' var ')' | '(' expr ')'
/// Negative powers are allowed on Laurent variables only. Throws ParseError.
ExprAST parse_expr(std::string_view text, const PolyContext& ctx);

/// Canonical text: functions as a sum in descending graded-lex order, forms and
/// fields as "(f)*d(x) + (g)*d(y)". parse_expr(print_expr(e)) == e.
std::string print_expr(const ExprAST& e, const PolyContext& ctx);

template <class Scalar>
std::string print_polynomial(const SparsePoly<Scalar>& p, const PolyContext& ctx);
extern template std::string print_polynomial(const SparsePoly<Rational>&, const PolyContext&);
extern template std::string print_polynomial(const SparsePoly<Fp>&, const PolyContext&);

template <class Scalar>
std::string print_oneform(const OneForm<Scalar>& w, const PolyContext& ctx);
extern template std::string print_oneform(const OneForm<Rational>&, const PolyContext&);
extern template std::string print_oneform(const OneForm<Fp>&, const PolyContext&);

template <class Scalar>
std::string print_vector_field(const VectorField<Scalar>& v, const PolyContext& ctx);
extern template std::string print_vector_field(const VectorField<Rational>&, const PolyContext&);
extern template std::string print_vector_field(const VectorField<Fp>&, const PolyContext&);

ExprAST to_expr(const Polynomial& p, const PolyContext& ctx);
ExprAST to_expr(const OneForm<Rational>& w, const PolyContext& ctx);
ExprAST to_expr(const VectorField<Rational>& v, const PolyContext& ctx);

/// Conversions; each throws ParseError when the expression has the wrong kind.
Polynomial to_polynomial(const ExprAST& e);
OneForm<Rational> to_oneform(const ExprAST& e);
VectorField<Rational> to_vector_field(const ExprAST& e);

Polynomial parse_polynomial(std::string_view text, const PolyContext& ctx);
OneForm<Rational> parse_oneform(std::string_view text, const PolyContext& ctx);
VectorField<Rational> parse_vector_field(std::string_view text, const PolyContext& ctx);

/// Square matrix of 1-forms from rows of expression strings.
FormMatrix<Rational> parse_form_matrix(const std::vector<std::vector<std::string>>& rows, const PolyContext& ctx);

}  // namespace hodge
