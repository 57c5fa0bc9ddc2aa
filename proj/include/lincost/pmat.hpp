#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lincost/basis.hpp"
#include "lincost/scalar.hpp"

namespace lincost {

// Potential-transformation matrix, sparse over annotation indices. A PMat
// denotes the infinite matrix M (+) I: for a column j in `cols` it maps e_j
// to the stored column (zero on rows outside `rows`); for j outside `cols`
// it is the identity. Dimensions are index-set driven, so composing
// matrices over mismatched index sets needs no padding.
struct PMat {
  IndexSet rows, cols;
  std::map<std::pair<Index, Index>, Scalar> entries;  // missing entry = 0

  const Scalar& at(const Index& r, const Index& c) const;
  void set(const Index& r, const Index& c, Scalar v);

  // Entry of the extended matrix M (+) I.
  Scalar ext(const Index& r, const Index& c) const;

  bool operator==(const PMat& o) const;  // extensional over the support union

  std::string str() const;
};

// Sparse column vector with havoc marks, the result of apply().
struct AnnVecH {
  std::map<Index, Scalar> entries;  // rationals or havoc

  Rat get(const Index& i) const;
  bool is_havoc(const Index& i) const;
  AnnVec rationals() const;  // drops havoc entries
};

// Matrix product of the extended matrices, restricted to the union of the
// operands' index supports. Products of two unknown-bearing entries raise
// NonlinearTerm.
PMat compose(const PMat& a, const PMat& b);

// Matrix-vector product with havoc algebra. Requires entries free of
// affine forms.
AnnVecH apply(const PMat& a, const AnnVec& p);

// One scalar inequality lhs <= rhs at a (row, col) position.
struct ScalarIneq {
  Index row, col;
  Scalar lhs, rhs;
  std::string tag;  // provenance for diagnostics
};

struct LeqResult {
  std::vector<ScalarIneq> ineqs;        // havoc-filtered, trivial pairs dropped
  std::vector<ScalarIneq> havoc_left;   // havoc on the left of a non-havoc right
};

// Entrywise A[i,j] <= B[i,j] over rows x cols (defaults to the support
// union). Pairs whose right side is havoc are filtered: an arbitrary choice
// satisfies them. Pairs that hold trivially (identical sides) are dropped.
LeqResult leq_constraints(const PMat& a, const PMat& b,
                          const std::optional<IndexSet>& rows = std::nullopt,
                          const std::optional<IndexSet>& cols = std::nullopt,
                          const std::string& tag = "");

// --- primitive maps -------------------------------------------------------

PMat identity();

// Moves every index rooted at x to the same index rooted at y; x rows zero.
PMat move(const std::string& x, const std::string& y, const IndexSet& x_indices);

// List destruction: transfers x's annotations to the tail name y using
// Pascal's identity (polynomial) or the Stirling recurrence (exponential),
// feeding the spilled lowest level into the constant.
PMat shift(const std::string& x, const std::string& y, const Basis& basis);

// Block inverse of shift(y, x): adjusts annotations when consing onto y.
PMat unshift(const std::string& x, const std::string& y, const Basis& basis);

// Havoc across every row rooted at x (empty-list annotations are arbitrary),
// identity on the rest of `ambient`. The havoc rows span every ambient
// column, so anything feeding into x is absorbed.
PMat nil_map(const std::string& x, const IndexSet& x_indices, const IndexSet& ambient);

// Zero map on the given rows; identity elsewhere.
PMat zero_map(const IndexSet& idxs);

// Projection onto `keep` within `ambient`: rows of ambient \ keep are
// zeroed. The complement projection is zero_map of the unwanted indices.
PMat proj(const IndexSet& keep, const IndexSet& ambient);
inline PMat proj_neg(const IndexSet& away) { return zero_map(away); }

}  // namespace lincost
