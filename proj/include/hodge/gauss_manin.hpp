#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hodge/forms.hpp"

namespace hodge {

/// Hodge numbers h^{m,0}, h^{m-1,1}, ..., h^{0,m} of a weight-m variation.
/// Block position i holds h^{m-i,i}.
struct HodgeBlocks {
  std::vector<int> sizes;

  /// Throws BlockSizeError unless m is even, the list is palindromic, every
  /// block is positive and the middle block is nonempty.
  explicit HodgeBlocks(std::vector<int> s);

  int weight() const { return static_cast<int>(sizes.size()) - 1; }
  int total() const;
  /// First row of block position i.
  int offset(std::size_t i) const;
  /// Number of unknowns x: sizes of blocks m/2..m.
  int x_count() const { return total() - offset(sizes.size() / 2); }
  /// Row of x1 (the first entry of the middle block).
  int x1_row() const { return offset(sizes.size() / 2); }
};

/// Connection matrix with the unknowns adjoined.
struct GaussManinAssembly {
  PolyContext context;     // base variables t followed by x1..xk (x1 Laurent)
  std::size_t base_vars = 0;
  HodgeBlocks blocks;
  PolyMatrix<Rational> x;  // h x 1: zeros above the middle block, then x1..xk
  PolyMatrix<Rational> s;  // identity with column x1_row replaced by x
  PolyMatrix<Rational> s_inv;
  PolyMatrix<Rational> c;  // h x 1 standard basis vector at x1_row
  FormMatrix<Rational> a;  // -S^{-1} dS + S^{-1} B S
  std::vector<OneForm<Rational>> foliation;  // entries of A C
};

/// Builds S, A and A C for a connection B on the base ring `base`.
/// B must be h x h with h = blocks.total() and B.nvars() == base.size().
GaussManinAssembly gm_assemble(const FormMatrix<Rational>& b, const PolyContext& base, const HodgeBlocks& blocks);

/// Throws TransversalityViolation(i, j) for the first nonzero block at
/// positions (i, j) with j - i >= 2.
void check_transversality(const FormMatrix<Rational>& b, const HodgeBlocks& blocks);

/// The block of B from position m/2 - 1 (rows) to m/2 (columns).
FormMatrix<Rational> ivhs_block(const FormMatrix<Rational>& b, const HodgeBlocks& blocks);

/// Entries of dx - B x split by block row, in the extended ring.
struct FoliationEquations {
  std::vector<OneForm<Rational>> ivhs;    // block m/2 - 1: -B^{m/2-1,m/2} x^{m/2}
  std::vector<OneForm<Rational>> middle;  // block m/2
  std::vector<OneForm<Rational>> lower;   // blocks m/2+1..m
  bool spans_agree = false;               // A C and dx - B x differ by the invertible S^{-1}
};

FoliationEquations foliation_equations(const FormMatrix<Rational>& b, const GaussManinAssembly& gm);

/// Lifts B to the ring with `extra` further variables.
FormMatrix<Rational> extend_ring(const FormMatrix<Rational>& b, std::size_t extra);

}  // namespace hodge
