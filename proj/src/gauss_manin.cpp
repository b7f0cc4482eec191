#include "hodge/gauss_manin.hpp"

#include <numeric>

#include "hodge/errors.hpp"

namespace hodge {

HodgeBlocks::HodgeBlocks(std::vector<int> s) : sizes(std::move(s)) {
  if (sizes.empty()) throw BlockSizeError("at least one Hodge block is required");
  if (sizes.size() % 2 == 0) throw BlockSizeError("the weight m must be even");
  for (int v : sizes)
    if (v < 1) throw BlockSizeError("Hodge blocks must be positive");
  for (std::size_t i = 0; i < sizes.size(); ++i)
    if (sizes[i] != sizes[sizes.size() - 1 - i]) throw BlockSizeError("Hodge numbers must be symmetric");
}

int HodgeBlocks::total() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }

int HodgeBlocks::offset(std::size_t i) const {
  return std::accumulate(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(i), 0);
}

FormMatrix<Rational> extend_ring(const FormMatrix<Rational>& b, std::size_t extra) {
  const std::size_t n = b.nvars() + extra;
  FormMatrix<Rational> out(b.rows(), b.cols(), n);
  for (std::size_t k = 0; k < b.nvars(); ++k)
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        Polynomial p = b.parts[k](i, j);
        p.set_nvars(n);
        out.parts[k](i, j) = std::move(p);
      }
  for (auto& part : out.parts)
    for (Eigen::Index i = 0; i < part.rows(); ++i)
      for (Eigen::Index j = 0; j < part.cols(); ++j) part(i, j).set_nvars(n);
  return out;
}

namespace {

void require_shape(const FormMatrix<Rational>& b, const HodgeBlocks& blocks) {
  const int h = blocks.total();
  if (b.nvars() == 0) throw InvalidInput("the connection has no differentials");
  if (b.rows() != h || b.cols() != h)
    throw BlockSizeError("connection is " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                         " but the Hodge blocks sum to " + std::to_string(h));
}

}  // namespace

void check_transversality(const FormMatrix<Rational>& b, const HodgeBlocks& blocks) {
  require_shape(b, blocks);
  const std::size_t nb = blocks.sizes.size();
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = i + 2; j < nb; ++j) {
      const FormMatrix<Rational> blk =
          b.block(blocks.offset(i), blocks.offset(j), blocks.sizes[i], blocks.sizes[j]);
      if (!blk.is_zero()) throw TransversalityViolation(static_cast<int>(i), static_cast<int>(j));
    }
}

FormMatrix<Rational> ivhs_block(const FormMatrix<Rational>& b, const HodgeBlocks& blocks) {
  require_shape(b, blocks);
  const std::size_t mid = blocks.sizes.size() / 2;
  if (mid == 0) throw BlockSizeError("weight 0 has no infinitesimal variation block");
  return b.block(blocks.offset(mid - 1), blocks.offset(mid), blocks.sizes[mid - 1], blocks.sizes[mid]);
}

GaussManinAssembly gm_assemble(const FormMatrix<Rational>& b, const PolyContext& base, const HodgeBlocks& blocks) {
  require_shape(b, blocks);
  if (base.size() != b.nvars()) throw ContextMismatch("connection and base context differ in variable count");
  for (const auto& part : b.parts)
    for (Eigen::Index i = 0; i < part.rows(); ++i)
      for (Eigen::Index j = 0; j < part.cols(); ++j) base.validate(part(i, j));

  const int h = blocks.total();
  const int k = blocks.x_count();
  const int c0 = blocks.x1_row();
  const std::size_t nb = base.size();
  const std::size_t n = nb + static_cast<std::size_t>(k);

  std::vector<std::string> names = base.names;
  std::vector<std::string> laurent;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (base.is_laurent(i)) laurent.push_back(base.names[i]);
  for (int i = 1; i <= k; ++i) {
    const std::string name = "x" + std::to_string(i);
    for (const auto& nm : base.names)
      if (nm == name) throw InvalidInput("base variable '" + name + "' clashes with an adjoined unknown");
    names.push_back(name);
  }
  laurent.push_back("x1");

  GaussManinAssembly gm{PolyContext(std::move(names), laurent), nb, blocks, {}, {}, {}, {}, {}, {}};
  const Polynomial zero = Polynomial::zero(n);
  const Polynomial one(Rational(1), n);

  gm.x = PolyMatrix<Rational>::Constant(h, 1, zero);
  for (int i = 0; i < k; ++i) gm.x(c0 + i, 0) = Polynomial::variable(nb + static_cast<std::size_t>(i), n);

  gm.s = PolyMatrix<Rational>::Constant(h, h, zero);
  for (int i = 0; i < h; ++i) gm.s(i, i) = one;
  gm.s.col(c0) = gm.x;

  Polynomial inv_x1 = Polynomial::zero(n);
  inv_x1.add_term(Monomial::variable(nb, -1), Rational(1));
  gm.s_inv = PolyMatrix<Rational>::Constant(h, h, zero);
  for (int i = 0; i < h; ++i) gm.s_inv(i, i) = one;
  for (int i = 0; i < h; ++i) gm.s_inv(i, c0) = i == c0 ? inv_x1 : Polynomial(-gm.x(i, 0) * inv_x1);

  gm.c = PolyMatrix<Rational>::Constant(h, 1, zero);
  gm.c(c0, 0) = one;

  const FormMatrix<Rational> bx = extend_ring(b, static_cast<std::size_t>(k));
  gm.a = -(gm.s_inv * d_matrix<Rational>(gm.s, n)) + gm.s_inv * bx * gm.s;
  const FormMatrix<Rational> ac = gm.a * gm.c;
  for (int i = 0; i < h; ++i) gm.foliation.push_back(ac.entry(i, 0));
  return gm;
}

FoliationEquations foliation_equations(const FormMatrix<Rational>& b, const GaussManinAssembly& gm) {
  check_transversality(b, gm.blocks);
  const std::size_t n = gm.context.size();
  const FormMatrix<Rational> bx = extend_ring(b, n - b.nvars());
  const FormMatrix<Rational> f = d_matrix<Rational>(gm.x, n) - bx * gm.x;

  FoliationEquations out;
  const std::size_t mid = gm.blocks.sizes.size() / 2;
  for (std::size_t blk = 0; blk < gm.blocks.sizes.size(); ++blk) {
    const int r0 = gm.blocks.offset(blk);
    for (int r = r0; r < r0 + gm.blocks.sizes[blk]; ++r) {
      OneForm<Rational> w = f.entry(r, 0);
      if (mid >= 1 && blk == mid - 1) out.ivhs.push_back(std::move(w));
      else if (blk == mid) out.middle.push_back(std::move(w));
      else if (blk > mid) out.lower.push_back(std::move(w));
      else if (!w.is_zero()) throw std::logic_error("dx - Bx has a nonzero row above the variation block");
    }
  }
  const FormMatrix<Rational> ac = gm.a * gm.c;
  out.spans_agree = ac == -(gm.s_inv * f) && f == -(gm.s * ac);
  return out;
}

}  // namespace hodge
