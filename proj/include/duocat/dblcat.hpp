#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "duocat/fincat.hpp"

namespace duocat {

class DoubleCategory;
using DblPtr = std::shared_ptr<const DoubleCategory>;

/// On-disk / hand-written double category tables.
struct RawDouble {
  struct RawSquare {
    std::string name;
    Id top = kNone, bottom = kNone, left = kNone, right = kNone;
  };
  std::vector<std::string> objects;
  std::vector<RawCategory::RawMor> hmors, vmors;
  std::vector<Id> h_identities, v_identities;  // per object
  std::vector<RawSquare> squares;
  std::vector<Id> vid_squares;  // per hmor: the vertically trivial square on it
  std::vector<Id> hid_squares;  // per vmor
  std::vector<std::array<Id, 3>> hcomp_hmors, vcomp_vmors, hcomp_squares, vcomp_squares;
};

/// Strict finite double category. Squares are drawn with horizontal top and
/// bottom and vertical left and right; vertical morphisms run from vsrc (top)
/// to vtgt (bottom). A "bottom-left corner" is a pair (left vmor, bottom
/// hmor); fillers produce the top hmor and right vmor.
class DoubleCategory {
 public:
  int object_count() const { return hcat_->object_count(); }
  int hmor_count() const { return hcat_->morphism_count(); }
  int vmor_count() const { return vcat_->morphism_count(); }
  int square_count() const { return static_cast<int>(sq_.size()); }

  const FinCategory& hcat() const { return *hcat_; }
  const FinCategory& vcat() const { return *vcat_; }
  const CatPtr& hcat_ptr() const { return hcat_; }
  const CatPtr& vcat_ptr() const { return vcat_; }

  Id hsrc(Id h) const { return hcat_->src(h); }
  Id htgt(Id h) const { return hcat_->tgt(h); }
  Id vsrc(Id v) const { return vcat_->src(v); }
  Id vtgt(Id v) const { return vcat_->tgt(v); }
  Id h_identity(Id x) const { return hcat_->identity(x); }
  Id v_identity(Id x) const { return vcat_->identity(x); }
  Id hcomp_h(Id g, Id f) const { return hcat_->compose(g, f); }
  Id vcomp_v(Id g, Id f) const { return vcat_->compose(g, f); }

  Id top(Id s) const { return sq_[s][0]; }
  Id bottom(Id s) const { return sq_[s][1]; }
  Id left(Id s) const { return sq_[s][2]; }
  Id right(Id s) const { return sq_[s][3]; }
  const std::array<Id, 4>& boundary(Id s) const { return sq_[s]; }

  Id vid_square(Id h) const { return vid_sq_[h]; }
  Id hid_square(Id v) const { return hid_sq_[v]; }

  bool hcomposable_sq(Id later, Id first) const { return left(later) == right(first); }
  bool vcomposable_sq(Id below, Id above) const { return top(below) == bottom(above); }
  Id hcomp_sq(Id later, Id first) const {
    return hcomp_sq_[static_cast<size_t>(later) * sq_.size() + first];
  }
  Id vcomp_sq(Id below, Id above) const {
    return vcomp_sq_[static_cast<size_t>(below) * sq_.size() + above];
  }

  /// Squares with the given left and bottom edges, ascending.
  const std::vector<Id>& fillers(Id left_v, Id bottom_h) const;
  /// Squares with the given full boundary, ascending.
  const std::vector<Id>& squares_with_boundary(Id t, Id b, Id l, Id r) const;
  const std::vector<Id>& squares_with_top(Id t) const { return by_top_[t]; }
  const std::vector<Id>& squares_with_left(Id l) const { return by_left_[l]; }

  const std::string& square_name(Id s) const { return sq_names_[s]; }

  bool same_tables(const DoubleCategory& other) const;

  static DblPtr from_raw_unchecked(const RawDouble& raw);

 private:
  CatPtr hcat_, vcat_;
  std::vector<std::array<Id, 4>> sq_;  // top, bottom, left, right
  std::vector<Id> vid_sq_, hid_sq_;
  std::vector<Id> hcomp_sq_, vcomp_sq_;
  std::vector<std::string> sq_names_;
  std::map<std::pair<Id, Id>, std::vector<Id>> by_left_bottom_;
  std::map<std::array<Id, 4>, std::vector<Id>> by_boundary_;
  std::vector<std::vector<Id>> by_top_, by_left_;

  void finish();
};

/// Checks all double category axioms exhaustively: both edge categories,
/// square boundary compatibility, unit and associativity laws for both square
/// compositions, identity-square coherence, and interchange.
Report check_double(const RawDouble& raw);
DblPtr validate_double(const RawDouble& raw);
RawDouble serialize_double(const DoubleCategory& d);

// ---------------------------------------------------------------------------
// Constructions

/// External product: objects Ob C x Ob D, hmors Mor C x Ob D, vmors
/// Ob C x Mor D, squares Mor C x Mor D, everything componentwise.
DblPtr boxtimes(const CatPtr& c, const CatPtr& d);

DblPtr horop(const DblPtr& d);   // reverse horizontal morphisms
DblPtr verop(const DblPtr& d);   // reverse vertical morphisms
DblPtr swapop(const DblPtr& d);  // exchange the two directions
DblPtr fullop(const DblPtr& d);  // horop then verop

// ---------------------------------------------------------------------------
// Grids

/// Number of m x n arrays of squares with matching shared edges; (m,0) counts
/// horizontal m-chains, (0,n) vertical n-chains, (0,0) objects.
long long grid_count(const DoubleCategory& d, int m, int n, Budget& budget);

/// The m x n grids themselves (m, n >= 1), row-major square ids, lexicographic.
std::vector<std::vector<Id>> grids(const DoubleCategory& d, int m, int n, Budget& budget);

struct ChainCategory {
  CatPtr cat;  // objects = horizontal n-chains, morphisms = n x 1 grids
  std::vector<std::vector<Id>> chain_of_obj;
  std::vector<std::vector<Id>> grid_of_mor;
};
/// The category of horizontal n-chains and n x 1 grids (vertical stacking);
/// n = 0 gives the vertical category.
ChainCategory chain_category(const DblPtr& d, int n, Budget& budget);

// ---------------------------------------------------------------------------
// Predicates

struct CornerReport {
  bool verdict = true;
  Id corner_left = kNone, corner_bottom = kNone;  // witness corner
  int filler_count = 1;
  std::string witness;
};

/// True iff every (left vmor, bottom hmor) corner has exactly one filling
/// square.
CornerReport is_factorization_double(const DoubleCategory& d);

/// True iff every vertical morphism is an identity.
bool is_2category(const DoubleCategory& d);

// ---------------------------------------------------------------------------
// Double functors

struct DblFunctor {
  DblPtr source, target;
  std::vector<Id> obj_map, hmor_map, vmor_map, sq_map;
};

Report check_dbl_functor(const DblFunctor& fun);
DblFunctor make_dbl_functor(DblPtr source, DblPtr target, std::vector<Id> obj_map,
                            std::vector<Id> hmor_map, std::vector<Id> vmor_map,
                            std::vector<Id> sq_map);
DblFunctor identity_dbl_functor(const DblPtr& d);
DblFunctor compose_dbl_functors(const DblFunctor& g, const DblFunctor& f);

/// True iff bijective on objects, hmors, vmors and squares (and valid).
bool is_dbl_isomorphism(const DblFunctor& fun);

/// All double functors a -> b, deterministic lexicographic order.
std::vector<DblFunctor> enumerate_dbl_functors(const DblPtr& a, const DblPtr& b, Budget& budget);

/// Completes edge-level data to a full double functor when the target has at
/// most one square per boundary; reports the offending square otherwise.
struct EdgeMaps {
  std::vector<Id> obj_map, hmor_map, vmor_map;
};
DblFunctor complete_dbl_functor(const DblPtr& a, const DblPtr& b, const EdgeMaps& edges);

}  // namespace duocat
