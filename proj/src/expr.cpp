#include "hodge/expr.hpp"

#include <cctype>

#include "hodge/errors.hpp"

namespace hodge {

BasisKind ExprAST::kind() const {
  for (const auto& [k, p] : parts)
    if (k.kind != BasisKind::None) return k.kind;
  return BasisKind::None;
}

namespace {

using Key = ExprAST::Key;

void add_part(ExprAST& e, const Key& k, const Polynomial& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = e.parts.try_emplace(k, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) e.parts.erase(it);
  }
}

class Parser {
public:
  Parser(std::string_view text, const PolyContext& ctx) : s_(text), ctx_(ctx) {}

  ExprAST parse() {
    ExprAST e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  ExprAST empty() const {
    ExprAST e;
    e.nvars = ctx_.size();
    return e;
  }

  ExprAST expr() {
    ExprAST acc = empty();
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    add(acc, term(), negate);
    while (true) {
      if (accept('+')) add(acc, term(), false);
      else if (accept('-')) add(acc, term(), true);
      else break;
    }
    check_kinds(acc);
    return acc;
  }

  static void add(ExprAST& acc, const ExprAST& t, bool negate) {
    for (const auto& [k, p] : t.parts) add_part(acc, k, negate ? Polynomial(-p) : p);
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '(' || std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  ExprAST term() {
    ExprAST acc = factor();
    while (true) {
      if (accept('*')) acc = multiply(acc, factor());
      else if (starts_factor()) acc = multiply(acc, factor());
      else break;
    }
    return acc;
  }

  ExprAST multiply(const ExprAST& a, const ExprAST& b) {
    ExprAST out = empty();
    for (const auto& [ka, pa] : a.parts)
      for (const auto& [kb, pb] : b.parts) {
        if (ka.kind != BasisKind::None && kb.kind != BasisKind::None) {
          if (ka.kind != kb.kind) fail("d(.) and D(.) cannot be mixed");
          fail("at most one basis symbol per term");
        }
        add_part(out, ka.kind != BasisKind::None ? ka : kb, pa * pb);
      }
    check_kinds(out);
    return out;
  }

  void check_kinds(const ExprAST& e) {
    bool dd = false, vv = false;
    for (const auto& [k, p] : e.parts) {
      dd |= k.kind == BasisKind::Differential;
      vv |= k.kind == BasisKind::Derivation;
    }
    if (dd && vv) fail("d(.) and D(.) cannot be mixed");
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    else fail("expected a variable name");
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::size_t variable(const std::string& name, std::size_t at) {
    for (std::size_t i = 0; i < ctx_.size(); ++i)
      if (ctx_.names[i] == name) return i;
    throw ParseError("unknown variable '" + name + "'", at);
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  int integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    const std::string d = digits();
    if (d.size() > 6) fail("exponent too large");
    const int v = std::stoi(d);
    return neg ? -v : v;
  }

  ExprAST factor() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprAST e = expr();
      expect(')');
      check_kinds(e);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text = digits();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        const std::size_t at = pos_;
        const std::string den = digits();
        if (den.find_first_not_of('0') == std::string::npos) throw ParseError("zero denominator", at);
        text += "/" + den;
      }
      ExprAST e = empty();
      add_part(e, Key{}, Polynomial(Rational::parse(text), ctx_.size()));
      return e;
    }
    const std::size_t at = pos_;
    const std::string name = identifier();
    if ((name == "d" || name == "D") && peek('(')) {
      expect('(');
      const std::size_t vat = pos_;
      const std::string v = identifier();
      expect(')');
      ExprAST e = empty();
      add_part(e, Key{name == "d" ? BasisKind::Differential : BasisKind::Derivation, variable(v, vat)},
               Polynomial(Rational(1), ctx_.size()));
      return e;
    }
    const std::size_t i = variable(name, at);
    int power = 1;
    if (accept('^')) {
      const std::size_t pat = pos_;
      power = integer();
      if (power < 0 && !ctx_.is_laurent(i))
        throw ParseError("negative power of non-Laurent variable '" + name + "'", pat);
    }
    ExprAST e = empty();
    Polynomial p = Polynomial::zero(ctx_.size());
    p.add_term(Monomial::variable(i, power), Rational(1));
    add_part(e, Key{}, p);
    return e;
  }

  std::string_view s_;
  const PolyContext& ctx_;
  std::size_t pos_ = 0;
};

template <class Scalar>
std::string coeff_text(const Scalar& c) {
  if constexpr (std::is_same_v<Scalar, Rational>) return c.to_string();
  else return std::to_string(c.value());
}

template <class Scalar>
bool is_one(const Scalar& c) {
  return c == Scalar(1);
}

std::string monomial_text(const Monomial& m, const PolyContext& ctx) {
  std::string s;
  for (std::size_t i = 0; i < m.support_size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += i < ctx.size() ? ctx.names[i] : "x" + std::to_string(i);
    if (m[i] != 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

std::string basis_text(const Key& k, const PolyContext& ctx) {
  const std::string v = k.var < ctx.size() ? ctx.names[k.var] : "x" + std::to_string(k.var);
  return (k.kind == BasisKind::Differential ? "d(" : "D(") + v + ")";
}

}  // namespace

ExprAST parse_expr(std::string_view text, const PolyContext& ctx) { return Parser(text, ctx).parse(); }

template <class Scalar>
std::string print_polynomial(const SparsePoly<Scalar>& p, const PolyContext& ctx) {
  if (p.is_zero()) return "0";
  std::string s;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Scalar mag = c;
    bool neg = false;
    if constexpr (std::is_same_v<Scalar, Rational>) {
      neg = c.sign() < 0;
      if (neg) mag = -c;
    }
    const std::string body = m.is_one()     ? coeff_text(mag)
                             : is_one(mag) ? monomial_text(m, ctx)
                                           : coeff_text(mag) + "*" + monomial_text(m, ctx);
    if (s.empty()) s = neg ? "-" + body : body;
    else s += (neg ? " - " : " + ") + body;
  }
  return s;
}

template std::string print_polynomial(const SparsePoly<Rational>&, const PolyContext&);
template std::string print_polynomial(const SparsePoly<Fp>&, const PolyContext&);

namespace {

template <class Scalar>
std::string print_basis_sum(const PolyVector<Scalar>& coeffs, BasisKind kind, const PolyContext& ctx) {
  std::string s;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    if (coeffs(i).is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + print_polynomial(coeffs(i), ctx) + ")*" + basis_text(Key{kind, static_cast<std::size_t>(i)}, ctx);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

template <class Scalar>
std::string print_oneform(const OneForm<Scalar>& w, const PolyContext& ctx) {
  return print_basis_sum(w.coeffs, BasisKind::Differential, ctx);
}
template std::string print_oneform(const OneForm<Rational>&, const PolyContext&);
template std::string print_oneform(const OneForm<Fp>&, const PolyContext&);

template <class Scalar>
std::string print_vector_field(const VectorField<Scalar>& v, const PolyContext& ctx) {
  return print_basis_sum(v.coeffs, BasisKind::Derivation, ctx);
}
template std::string print_vector_field(const VectorField<Rational>&, const PolyContext&);
template std::string print_vector_field(const VectorField<Fp>&, const PolyContext&);

std::string print_expr(const ExprAST& e, const PolyContext& ctx) {
  if (e.is_zero()) return "0";
  std::string s;
  for (const auto& [k, p] : e.parts) {
    if (!s.empty()) s += " + ";
    if (k.kind == BasisKind::None) s += "(" + print_polynomial(p, ctx) + ")";
    else s += "(" + print_polynomial(p, ctx) + ")*" + basis_text(k, ctx);
  }
  return s;
}

ExprAST to_expr(const Polynomial& p, const PolyContext& ctx) {
  ctx.validate(p);
  ExprAST e;
  e.nvars = ctx.size();
  Polynomial q = p.as_polynomial();
  q.set_nvars(ctx.size());
  add_part(e, Key{}, q);
  return e;
}

namespace {

ExprAST vector_expr(const PolyVector<Rational>& coeffs, BasisKind kind, const PolyContext& ctx) {
  if (static_cast<std::size_t>(coeffs.size()) != ctx.size()) throw ContextMismatch("object arity differs from context");
  ExprAST e;
  e.nvars = ctx.size();
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    ctx.validate(coeffs(i));
    Polynomial q = coeffs(i).as_polynomial();
    q.set_nvars(ctx.size());
    add_part(e, Key{kind, static_cast<std::size_t>(i)}, q);
  }
  return e;
}

PolyVector<Rational> basis_coeffs(const ExprAST& e, BasisKind kind, const char* what) {
  PolyVector<Rational> out = PolyVector<Rational>::Constant(static_cast<Eigen::Index>(e.nvars), Polynomial::zero(e.nvars));
  for (const auto& [k, p] : e.parts) {
    if (k.kind != kind) throw ParseError(std::string("expression is not a ") + what, 0);
    out(static_cast<Eigen::Index>(k.var)) = p;
  }
  return out;
}

}  // namespace

ExprAST to_expr(const OneForm<Rational>& w, const PolyContext& ctx) {
  return vector_expr(w.coeffs, BasisKind::Differential, ctx);
}

ExprAST to_expr(const VectorField<Rational>& v, const PolyContext& ctx) {
  return vector_expr(v.coeffs, BasisKind::Derivation, ctx);
}

Polynomial to_polynomial(const ExprAST& e) {
  Polynomial out = Polynomial::zero(e.nvars);
  for (const auto& [k, p] : e.parts) {
    if (k.kind != BasisKind::None) throw ParseError("expression is not a function", 0);
    out += p;
  }
  return out;
}

OneForm<Rational> to_oneform(const ExprAST& e) { return OneForm<Rational>(basis_coeffs(e, BasisKind::Differential, "1-form")); }

VectorField<Rational> to_vector_field(const ExprAST& e) {
  return VectorField<Rational>(basis_coeffs(e, BasisKind::Derivation, "vector field"));
}

Polynomial parse_polynomial(std::string_view text, const PolyContext& ctx) { return to_polynomial(parse_expr(text, ctx)); }
OneForm<Rational> parse_oneform(std::string_view text, const PolyContext& ctx) { return to_oneform(parse_expr(text, ctx)); }
VectorField<Rational> parse_vector_field(std::string_view text, const PolyContext& ctx) {
  return to_vector_field(parse_expr(text, ctx));
}

FormMatrix<Rational> parse_form_matrix(const std::vector<std::vector<std::string>>& rows, const PolyContext& ctx) {
  const auto h = static_cast<Eigen::Index>(rows.size());
  FormMatrix<Rational> b(h, h, ctx.size());
  for (auto& part : b.parts) part.setConstant(Polynomial::zero(ctx.size()));
  for (Eigen::Index i = 0; i < h; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != h)
      throw InvalidInput("connection matrix must be square");
    for (Eigen::Index j = 0; j < h; ++j) {
      const ExprAST e = parse_expr(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], ctx);
      if (e.is_zero()) continue;
      b.set_entry(i, j, to_oneform(e));
    }
  }
  return b;
}

}  // namespace hodge
