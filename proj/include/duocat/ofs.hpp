#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "duocat/fincat.hpp"

namespace duocat {

class FactorizationSystem;
using OfsPtr = std::shared_ptr<const FactorizationSystem>;

using MorClass = std::vector<char>;  // mask over morphism ids

/// A category with egressive/ingressive classes satisfying unique lifting and
/// unique factorization (strict 1-categorical reading: fillers are strictly
/// unique, factorizations are unique up to a strictly unique connecting iso).
class FactorizationSystem {
 public:
  FactorizationSystem(CatPtr base, MorClass egressive, MorClass ingressive)
      : base_(std::move(base)), eg_(std::move(egressive)), in_(std::move(ingressive)) {}

  const FinCategory& base() const { return *base_; }
  const CatPtr& base_ptr() const { return base_; }
  bool egressive(Id f) const { return eg_[f] != 0; }
  bool ingressive(Id f) const { return in_[f] != 0; }
  const MorClass& egressive_class() const { return eg_; }
  const MorClass& ingressive_class() const { return in_; }

  long long egressive_count() const;
  long long ingressive_count() const;

 private:
  CatPtr base_;
  MorClass eg_, in_;
};

/// Lifting criterion: both classes are wide subcategories, every morphism
/// admits an (egressive, ingressive) factorization, and every mixed square
/// has exactly one diagonal filler.
Report check_ofs_lifting(const FinCategory& c, const MorClass& eg, const MorClass& in);

/// Factorization criterion: both classes are wide subcategories, every
/// morphism factors, and any ordered pair of factorizations of the same
/// morphism is connected by exactly one middle iso commuting with both legs.
Report check_ofs_factorization(const FinCategory& c, const MorClass& eg, const MorClass& in);

struct OfsValidation {
  Report lifting;
  Report factorization;
  bool agree = false;  // the two verdicts coincide (they must)
  bool ok() const { return lifting.ok() && factorization.ok(); }
};

OfsValidation check_ofs(const FinCategory& c, const MorClass& eg, const MorClass& in);

/// Runs both criteria; succeeds iff both pass. Throws ValidationError with
/// the merged report otherwise.
OfsPtr validate_ofs(const CatPtr& c, const MorClass& eg, const MorClass& in);

/// Every morphism has strictly unique (egressive, ingressive) factorization.
/// Holds for all poset-based systems; the corners/DCLR comparisons are exact
/// isomorphisms precisely in this regime.
bool has_strict_factorizations(const FactorizationSystem& fs);

/// Lexicographically least pair (e, i) with compose(i, e) == f.
std::pair<Id, Id> factor(const FactorizationSystem& fs, Id f);

/// All pairs (e, i) with compose(i, e) == f, lexicographic.
std::vector<std::pair<Id, Id>> factorizations(const FactorizationSystem& fs, Id f);

/// The factorization system (any, iso) / (iso, any) on product(c, d).
OfsPtr product_ofs(const CatPtr& c, const CatPtr& d);

struct ArrowOfs {
  OfsPtr ofs;
  ArrowCategory arrow;  // objects of arrow.cat are morphisms of the base
};
/// Arrow category with egressive = squares invertible on the source,
/// ingressive = squares invertible on the target.
ArrowOfs arrow_ofs(const CatPtr& c);

/// (egressive, ingressive) = (isos, all) or (all, isos).
OfsPtr iso_all_ofs(const CatPtr& c);
OfsPtr all_iso_ofs(const CatPtr& c);

struct OfsMap {
  Functor fun;
  OfsPtr source_fs, target_fs;
};

Report check_ofs_map(const OfsMap& f);
OfsMap make_ofs_map(Functor fun, OfsPtr source_fs, OfsPtr target_fs);

/// All functors between the bases that preserve both classes, lexicographic.
std::vector<OfsMap> enumerate_ofs_maps(const OfsPtr& a, const OfsPtr& b, Budget& budget);

/// All wide subcategories (as masks) of c, in lexicographic mask order.
/// Every mask contains the identities and all isos and is composition-closed.
std::vector<MorClass> enumerate_wide_subcategories(const FinCategory& c, Budget& budget);

}  // namespace duocat
