#pragma once

#include "duocat/dblcat.hpp"

namespace duocat {

/// Bisimplicial set truncated to levels (m, n) with m, n <= 2, with explicit
/// face and degeneracy maps in both directions. Ingestion-side model only:
/// strict double categories remain the single source of truth.
struct BisimTrunc {
  int size[3][3] = {};
  // hface[m][n][i]: level (m,n) -> (m-1,n), defined for m >= 1, i <= m
  std::vector<Id> hface[3][3][3];
  // vface[m][n][j]: level (m,n) -> (m,n-1), defined for n >= 1, j <= n
  std::vector<Id> vface[3][3][3];
  // hdeg[m][n][i]: level (m,n) -> (m+1,n), defined for m <= 1, i <= m
  std::vector<Id> hdeg[3][3][2];
  // vdeg[m][n][j]: level (m,n) -> (m,n+1), defined for n <= 1, j <= n
  std::vector<Id> vdeg[3][3][2];
};

/// Grids of a double category as a truncated bisimplicial set.
BisimTrunc truncate_double(const DoubleCategory& d, Budget& budget);

/// Simplicial identities on the truncation, both directions and their
/// commutation.
Report check_bisim(const BisimTrunc& b);

/// Checks the Segal bijections at (2,0), (0,2), (2,1), (1,2) and (2,2), then
/// extracts strict composition tables. Throws ValidationError with code
/// SegalFailure when a bijection fails, or NonAssociativeExtraction when the
/// extracted tables fail the double category axioms.
DblPtr bisim_to_double(const BisimTrunc& b);

}  // namespace duocat
