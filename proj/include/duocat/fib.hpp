#pragma once

#include "duocat/bridge.hpp"

namespace duocat {

struct FibReport {
  bool verdict = true;
  std::vector<Issue> witnesses;

  void fail(std::string code, std::string detail) {
    verdict = false;
    witnesses.push_back({std::move(code), std::move(detail)});
  }
};

// ---------------------------------------------------------------------------
// Fibration predicates on plain functors

/// Unique lifts along targets: (F(g), tgt(g)) is a bijection onto the pairs
/// (f, d) with tgt(f) = F(d).
FibReport is_right_fibration(const Functor& fun);
FibReport is_left_fibration(const Functor& fun);

/// The same bijection one level up, on composable pairs; implied by the
/// single-morphism version.
FibReport is_right_fibration_level2(const Functor& fun);

bool is_cocartesian_edge(const Functor& fun, Id g);
bool is_cartesian_edge(const Functor& fun, Id g);
FibReport is_cocartesian_fibration(const Functor& fun);
FibReport is_cartesian_fibration(const Functor& fun);

// ---------------------------------------------------------------------------
// Fibrations of factorization systems

/// Ingressive morphisms admit cartesian lifts, and the cartesian lifts of
/// ingressives are exactly the ingressive morphisms upstairs.
FibReport is_ingressive_cartesian(const OfsMap& f);

/// Ingressive cartesian + egressive restriction a cocartesian fibration.
FibReport is_curved_orthofibration(const OfsMap& f);
/// Ingressive cartesian + egressive restriction a cartesian fibration.
FibReport is_opgray(const OfsMap& f);

/// Restriction of the functor to the egressive (resp. ingressive) wide
/// subcategories.
Functor egressive_restriction(const OfsMap& f);
Functor ingressive_restriction(const OfsMap& f);

// ---------------------------------------------------------------------------
// Fibrations of double categories

/// Horizontal functor cocartesian, and the induced functor on horizontal
/// n-chain categories a right fibration for n <= 2.
FibReport is_cocart_right(const DblFunctor& fun, Budget& budget);
FibReport is_cart_right(const DblFunctor& fun, Budget& budget);
/// Defined through the full reversal: fullop(fun) must be (cocart, right).
FibReport is_left_cart(const DblFunctor& fun, Budget& budget);

DblFunctor fullop_functor(const DblFunctor& fun);

/// is_curved_orthofibration(f) must equal is_cocart_right(dclr f), and
/// is_opgray(f) must equal is_cart_right(dclr f); the ingressive-cartesian
/// reformulation is checked independently.
Report compare_fibrations(const OfsMap& f, Budget& budget);

/// For F with F(0,-) a right fibration into a factorization double category:
/// F(n,-) is a right fibration for n in {1,2} iff the source is a
/// factorization double category.
Report source_lemma_check(const DblFunctor& fun, Budget& budget);

// ---------------------------------------------------------------------------
// Indexed data over a double category and (un)straightening

/// Straightening data: a category per object, covariant functors along
/// horizontal morphisms, contravariant functors along vertical morphisms,
/// and a transformation X(top) . X(left) => X(right) . X(bottom) per square,
/// strictly functorial and compatible with pasting.
struct DblIndexing {
  DblPtr base;
  std::vector<CatPtr> fibers;                    // per object
  std::vector<Functor> hmor_functors;            // h: c -> d gives X(c) -> X(d)
  std::vector<Functor> vmor_functors;            // v: c -> c' gives X(c') -> X(c)
  std::vector<std::vector<Id>> square_trans;     // per square: component per
                                                 // object of X(vtgt(left))
};

Report check_indexing(const DblIndexing& x);

/// Total double category of an indexing, with its projection. Objects are
/// (c, a); horizontal morphisms carry a fiber morphism X(h)(a) -> b;
/// vertical morphisms are strict transport equalities a = X(v)(a').
struct Unstraightened {
  DblPtr total;
  DblFunctor projection;
  std::vector<std::pair<Id, Id>> obj_decode;    // (base object, fiber object)
  std::vector<std::array<Id, 3>> hmor_decode;   // (base hmor, source fiber object, fiber morphism)
  std::vector<std::pair<Id, Id>> vmor_decode;   // (base vmor, target fiber object)
  std::vector<std::array<Id, 3>> sq_decode;     // (base square, bottom-left fiber object,
                                                //  bottom fiber morphism)
};
Unstraightened unstraighten(const DblIndexing& x);

/// Inverse construction on a (cocart, right) fibration: fibers over
/// identities, transports along least cocartesian lifts, strictly unique
/// vertical lifts, and square data from the unique fillers.
DblIndexing straighten(const DblFunctor& fun, Budget& budget);

/// Round trips close via explicitly constructed isomorphisms.
Report straighten_roundtrip(const DblIndexing& x, Budget& budget);
Report unstraighten_roundtrip(const DblFunctor& fun, Budget& budget);

}  // namespace duocat
