#pragma once

#include <map>
#include <utility>

#include "duocat/dblcat.hpp"
#include "duocat/ofs.hpp"

namespace duocat {

/// The double category of a factorization system: objects of the base,
/// horizontal = egressive, vertical = ingressive, squares = commuting
/// boundaries. Keeps the reindexing against the base morphisms.
struct DclrDouble {
  DblPtr dbl;
  OfsPtr base;
  std::vector<Id> hmor_mor, vmor_mor;  // edge id -> base morphism id
  std::vector<Id> mor_hmor, mor_vmor;  // base morphism id -> edge id or kNone
};

DclrDouble dclr(const OfsPtr& fs);

/// The induced double functor dclr(a) -> dclr(b) of a map of factorization
/// systems.
DblFunctor dclr_map(const OfsMap& f, const DclrDouble& source, const DclrDouble& target);

/// Category of corners of a factorization double category: morphisms are
/// (horizontal leg, then vertical leg) pairs composed through unique square
/// fillers; egressive = (h, id), ingressive = (id, v).
struct CornersCategory {
  OfsPtr ofs;
  DblPtr source;
  std::vector<std::pair<Id, Id>> pair_of_mor;
  std::map<std::pair<Id, Id>, Id> mor_of_pair;
};

/// Throws ValidationError with code NotFactorizationDouble when the corner
/// filler is missing or not unique.
CornersCategory corners(const DblPtr& d);

/// Double arrow category ArDC(c) = dclr of the arrow system on c. Verifies
/// the join count law |grid(m, n)| = #(n+m+1)-chains of c for m, n <= 2.
DclrDouble ardc(const CatPtr& c, Budget& budget);

/// The join count law as a standalone report, for arbitrary grid ranges.
Report join_formula_report(const CatPtr& c, const DclrDouble& ar, int max_m, int max_n,
                           Budget& budget);

/// The comparison d -> dclr(corners(d)): identity on objects, h -> (h, id),
/// v -> (id, v), squares by boundary. Succeeds iff it is a strict isomorphism
/// of double categories.
struct CounitIso {
  DblFunctor comparison;
  Report report;
};
CounitIso counit_iso(const DblPtr& d);

/// The comparison corners(dclr(fs)) -> base: (e, i) -> compose(i, e).
/// The projection is a bijective-on-objects full functor whose hom fibers
/// are single middle-iso orbits; quotienting by the middle isos gives a
/// strict isomorphism of factorization systems.
struct UnitIso {
  Functor projection;      // corners base -> fs base
  CatPtr quotient;         // corners category modulo connecting isos
  Functor quotient_iso;    // quotient -> fs base (strict isomorphism)
  MorClass quotient_eg, quotient_in;
  bool quotient_trivial = false;  // every fiber a singleton
  Report report;
};
UnitIso unit_iso(const OfsPtr& fs);

/// |double functors ArDC([n]) -> d| against the composable n-chain count of
/// corners(d); the two sides are computed independently.
struct SegalChainReport {
  long long functor_count = -1;
  long long chain_count = -1;
  bool ok = false;
  std::string witness;
};
SegalChainReport segal_chain_check(const DblPtr& d, int n, Budget& budget);

/// Corner invertibility: (h, v) is invertible in corners(d) iff h and v are
/// invertible. Checked exhaustively.
Report corner_invertibility_report(const CornersCategory& cr);

}  // namespace duocat
