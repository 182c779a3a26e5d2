#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "duocat/common.hpp"

namespace duocat {

class FinCategory;
using CatPtr = std::shared_ptr<const FinCategory>;

/// Untyped category tables as they appear on disk or in hand-written tests.
/// Composition must be listed explicitly for every composable pair.
struct RawCategory {
  struct RawMor {
    std::string name;
    Id src = kNone;
    Id tgt = kNone;
  };
  std::vector<std::string> objects;
  std::vector<RawMor> morphisms;
  std::vector<Id> identities;                    // per object
  std::vector<std::array<Id, 3>> composition;    // (g, f, g∘f)
};

/// A finite category with dense integer ids and a full composition table.
/// Immutable after validation; all enumeration orders are lexicographic in
/// ids, so every derived construction is deterministic.
class FinCategory {
 public:
  int object_count() const { return static_cast<int>(identity_.size()); }
  int morphism_count() const { return static_cast<int>(src_.size()); }

  Id src(Id f) const { return src_[f]; }
  Id tgt(Id f) const { return tgt_[f]; }
  Id identity(Id x) const { return identity_[x]; }
  bool is_identity(Id f) const { return identity_[src_[f]] == f && src_[f] == tgt_[f]; }

  bool composable(Id g, Id f) const { return src_[g] == tgt_[f]; }
  Id compose(Id g, Id f) const { return comp_[static_cast<size_t>(g) * src_.size() + f]; }

  bool is_iso(Id f) const { return inverse_[f] != kNone; }
  Id inverse(Id f) const { return inverse_[f]; }

  /// Morphisms x -> y in ascending id order.
  const std::vector<Id>& hom(Id x, Id y) const {
    return hom_[static_cast<size_t>(x) * identity_.size() + y];
  }
  /// Morphisms out of x, ascending.
  const std::vector<Id>& out(Id x) const { return out_[x]; }
  /// Morphisms into y, ascending.
  const std::vector<Id>& in(Id y) const { return in_[y]; }

  const std::string& object_name(Id x) const { return obj_names_[x]; }
  const std::string& morphism_name(Id f) const { return mor_names_[f]; }

  bool same_tables(const FinCategory& other) const;

  /// Builds without checking axioms; use validate_category for checked input.
  static CatPtr from_raw_unchecked(const RawCategory& raw);

 private:
  friend Report check_category(const RawCategory& raw);

  std::vector<Id> src_, tgt_;
  std::vector<Id> identity_;
  std::vector<Id> comp_;      // g*nmor + f, kNone when not composable
  std::vector<Id> inverse_;   // kNone when not invertible
  std::vector<std::vector<Id>> hom_, out_, in_;
  std::vector<std::string> obj_names_, mor_names_;

  void finish();
};

/// Checks the category axioms on raw tables, reporting every failure with a
/// witness. Codes: MissingIdentity, DanglingId, NonComposablePairInTable,
/// MissingComposite, UnitFailure, AssociativityFailure.
Report check_category(const RawCategory& raw);

/// Returns the category iff all axioms hold, otherwise throws ValidationError
/// carrying the full report.
CatPtr validate_category(const RawCategory& raw);

RawCategory serialize(const FinCategory& cat);

// ---------------------------------------------------------------------------
// Standard constructors

/// The linear order [n] = {0 < 1 < ... < n}.
CatPtr poset_category(int n);

/// Poset from a reflexive-transitive order relation, leq[x][y] meaning x <= y.
CatPtr poset_from_relation(const std::vector<std::vector<char>>& leq,
                           const std::vector<std::string>& names = {});

CatPtr product(const CatPtr& c, const CatPtr& d);
CatPtr opposite(const CatPtr& c);

struct ArrowCategory {
  CatPtr cat;                           // objects = morphisms of the base, same ids
  CatPtr base;
  std::vector<std::array<Id, 2>> legs;  // per morphism: (source leg, target leg)
};
ArrowCategory arrow_category(const CatPtr& c);

struct Subcategory {
  CatPtr cat;
  CatPtr parent;
  std::vector<Id> mor_embed;   // new morphism id -> parent morphism id
  std::vector<Id> mor_restrict;  // parent morphism id -> new id or kNone
};
/// Wide subcategory on the given morphism mask (must contain identities and
/// be closed under composition).
Subcategory wide_subcategory(const CatPtr& c, const std::vector<char>& mask);

Subcategory core(const CatPtr& c);

// ---------------------------------------------------------------------------
// Functors and natural transformations

struct Functor {
  CatPtr source, target;
  std::vector<Id> obj_map;
  std::vector<Id> mor_map;

  Id on_obj(Id x) const { return obj_map[x]; }
  Id on_mor(Id f) const { return mor_map[f]; }
};

Report check_functor(const Functor& fun);
Functor make_functor(CatPtr source, CatPtr target, std::vector<Id> obj_map,
                     std::vector<Id> mor_map);
Functor identity_functor(const CatPtr& c);
Functor compose_functors(const Functor& g, const Functor& f);

struct NatTrans {
  Functor source, target;       // parallel functors
  std::vector<Id> components;   // per object of source category
};

Report check_nat_trans(const NatTrans& eta);

/// All functors c -> d in lexicographic (obj_map, mor_map) order.
std::vector<Functor> enumerate_functors(const CatPtr& c, const CatPtr& d, Budget& budget);

/// Composable n-tuples (f_1, ..., f_n) with tgt(f_i) = src(f_{i+1}); n = 0
/// gives the objects. Lexicographic order.
std::vector<std::vector<Id>> nerve_chains(const FinCategory& c, int n);
long long nerve_chain_count(const FinCategory& c, int n);

struct EquivalenceReport {
  bool verdict = false;
  std::string witness;  // empty when verdict holds
};

/// Fully faithful + essentially surjective, checked exhaustively.
EquivalenceReport is_equivalence(const Functor& fun);

}  // namespace duocat
