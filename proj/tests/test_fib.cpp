#include <doctest.h>

#include <numeric>

#include "duocat/fib.hpp"

using namespace duocat;

namespace {

CatPtr z2_category() {
  RawCategory raw;
  raw.objects = {"*"};
  raw.morphisms = {{"1", 0, 0}, {"s", 0, 0}};
  raw.identities = {0};
  raw.composition = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  return validate_category(raw);
}

CatPtr idempotent_monoid_category() {
  RawCategory raw;
  raw.objects = {"*"};
  raw.morphisms = {{"1", 0, 0}, {"e", 0, 0}};
  raw.identities = {0};
  raw.composition = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  return validate_category(raw);
}

// source and target projections of the arrow category of [1]
struct ArrowProjections {
  ArrowOfs arrow;
  Functor source_proj, target_proj;
};
ArrowProjections arrow_projections() {
  ArrowProjections out;
  auto p1 = poset_category(1);
  out.arrow = arrow_ofs(p1);
  const auto& ar = *out.arrow.arrow.cat;
  std::vector<Id> src_obj(ar.object_count()), tgt_obj(ar.object_count());
  for (Id f = 0; f < ar.object_count(); ++f) {
    src_obj[f] = p1->src(f);  // objects of the arrow category are morphisms of [1]
    tgt_obj[f] = p1->tgt(f);
  }
  std::vector<Id> src_mor(ar.morphism_count()), tgt_mor(ar.morphism_count());
  for (Id m = 0; m < ar.morphism_count(); ++m) {
    src_mor[m] = out.arrow.arrow.legs[m][0];
    tgt_mor[m] = out.arrow.arrow.legs[m][1];
  }
  out.source_proj = make_functor(out.arrow.arrow.cat, p1, src_obj, src_mor);
  out.target_proj = make_functor(out.arrow.arrow.cat, p1, tgt_obj, tgt_mor);
  return out;
}

DblIndexing constant_indexing(const DblPtr& base, const CatPtr& k) {
  DblIndexing x;
  x.base = base;
  std::vector<Id> obj(k->object_count()), mor(k->morphism_count());
  std::iota(obj.begin(), obj.end(), 0);
  std::iota(mor.begin(), mor.end(), 0);
  Functor idk{k, k, obj, mor};
  for (Id c = 0; c < base->object_count(); ++c) x.fibers.push_back(k);
  for (Id h = 0; h < base->hmor_count(); ++h) x.hmor_functors.push_back(idk);
  for (Id v = 0; v < base->vmor_count(); ++v) x.vmor_functors.push_back(idk);
  for (Id s = 0; s < base->square_count(); ++s) {
    std::vector<Id> components(k->object_count());
    for (Id a = 0; a < k->object_count(); ++a) components[a] = k->identity(a);
    x.square_trans.push_back(components);
  }
  return x;
}

// the classical construction over the walking horizontal arrow:
// X(0) terminal, X(1) = [1], transport = inclusion at 0
DblIndexing walking_arrow_indexing() {
  DblIndexing x;
  auto base = boxtimes(poset_category(1), poset_category(0));
  x.base = base;
  auto pt = poset_category(0);
  auto p1 = poset_category(1);
  x.fibers = {pt, p1};
  auto id_pt = identity_functor(pt);
  auto id_p1 = identity_functor(p1);
  Functor incl{pt, p1, {0}, {p1->identity(0)}};
  // hmors are (f, 0) with f in Mor([1]) listed as (0,0), (0,1), (1,1)
  x.hmor_functors = {id_pt, incl, id_p1};
  x.vmor_functors = {id_pt, id_p1};
  for (Id s = 0; s < base->square_count(); ++s) {
    const auto& fiber = *x.fibers[base->vtgt(base->left(s))];
    const auto& target = *x.fibers[base->htgt(base->top(s))];
    std::vector<Id> components(fiber.object_count());
    for (Id a = 0; a < fiber.object_count(); ++a)
      components[a] = target.identity(x.hmor_functors[base->top(s)].obj_map[a]);
    x.square_trans.push_back(components);
  }
  return x;
}

// fibers Z/2 over the idempotent-monoid double category; the nondegenerate
// square composes with itself, which pins its transformation to the unit
DblIndexing idempotent_base_indexing(Id eta_component) {
  DblIndexing x;
  auto base = dclr(all_iso_ofs(idempotent_monoid_category())).dbl;
  auto z2 = z2_category();
  x = constant_indexing(base, z2);
  REQUIRE(base->square_count() == 2);
  x.square_trans[1] = {eta_component};  // square (e, e)
  return x;
}

// fibers Z/2 over boxtimes([1],[1]) with a twisted transformation on the
// unique nondegenerate square
DblIndexing twist_indexing() {
  auto base = boxtimes(poset_category(1), poset_category(1));
  DblIndexing x = constant_indexing(base, z2_category());
  x.square_trans[4] = {1};  // square (a, a); component s
  return x;
}

}  // namespace

// ============================================================================
// right and left fibrations
// ============================================================================

TEST_CASE("identity functors are right fibrations") {
  auto c = product(poset_category(1), poset_category(1));
  CHECK(is_right_fibration(identity_functor(c)).verdict);
  CHECK(is_left_fibration(identity_functor(c)).verdict);
}

TEST_CASE("collapse to the terminal category is not a right fibration") {
  auto p1 = poset_category(1);
  auto pt = poset_category(0);
  auto fun = make_functor(p1, pt, {0, 0}, {0, 0, 0});
  auto report = is_right_fibration(fun);
  CHECK_FALSE(report.verdict);
  CHECK(report.witnesses[0].detail.find("2 lifts") != std::string::npos);
}

TEST_CASE("a fold of two disjoint copies is a right fibration") {
  auto p1 = poset_category(1);
  // [1] + [1] as one category
  RawCategory raw;
  raw.objects = {"0a", "1a", "0b", "1b"};
  raw.morphisms = {{"ida0", 0, 0}, {"fa", 0, 1}, {"ida1", 1, 1},
                   {"idb0", 2, 2}, {"fb", 2, 3}, {"idb1", 3, 3}};
  raw.identities = {0, 2, 3, 5};
  raw.composition = {{0, 0, 0}, {1, 0, 1}, {2, 1, 1}, {2, 2, 2},
                     {3, 3, 3}, {4, 3, 4}, {5, 4, 4}, {5, 5, 5}};
  auto two = validate_category(raw);
  auto fold = make_functor(two, p1, {0, 1, 0, 1}, {0, 1, 2, 0, 1, 2});
  CHECK(is_right_fibration(fold).verdict);
  CHECK(is_left_fibration(fold).verdict);
}

TEST_CASE("the target projection of Ar([1]) is not a right fibration") {
  // two ingressive-style squares share the image and target over id_1
  auto proj = arrow_projections();
  auto report = is_right_fibration(proj.target_proj);
  CHECK_FALSE(report.verdict);
}

TEST_CASE("the single-morphism bijection implies the chain-level one") {
  Budget budget;
  std::vector<CatPtr> cats = {poset_category(0), poset_category(1), poset_category(2),
                              arrow_category(poset_category(1)).cat, z2_category()};
  int right_fibrations = 0;
  for (const auto& a : cats)
    for (const auto& b : cats)
      for (const auto& fun : enumerate_functors(a, b, budget)) {
        bool n1 = is_right_fibration(fun).verdict;
        bool n2 = is_right_fibration_level2(fun).verdict;
        CHECK(n1 == n2);
        if (n1) ++right_fibrations;
      }
  CHECK(right_fibrations > 5);
}

// ============================================================================
// cocartesian and cartesian fibrations
// ============================================================================

TEST_CASE("the source projection of Ar([1]) is a cocartesian fibration") {
  auto proj = arrow_projections();
  CHECK(is_cocartesian_fibration(proj.source_proj).verdict);
  // the target projection is a cartesian fibration instead
  CHECK(is_cartesian_fibration(proj.target_proj).verdict);
}

TEST_CASE("the endpoint inclusion [0] -> [1] has no lift out of the fiber") {
  auto p0 = poset_category(0);
  auto p1 = poset_category(1);
  auto incl = make_functor(p0, p1, {0}, {p1->identity(0)});
  auto report = is_cocartesian_fibration(incl);
  CHECK_FALSE(report.verdict);
  CHECK(report.witnesses[0].code == "NoCocartesianLift");
}

TEST_CASE("every right fibration is a cartesian fibration with rigid edges") {
  Budget budget;
  std::vector<CatPtr> cats = {poset_category(1), poset_category(2),
                              arrow_category(poset_category(1)).cat};
  int hits = 0;
  for (const auto& a : cats)
    for (const auto& b : cats)
      for (const auto& fun : enumerate_functors(a, b, budget)) {
        if (!is_right_fibration(fun).verdict) continue;
        ++hits;
        CHECK(is_cartesian_fibration(fun).verdict);
        // unique lifts make every edge both cartesian and cocartesian
        for (Id g = 0; g < a->morphism_count(); ++g) {
          CHECK(is_cartesian_edge(fun, g));
          CHECK(is_cocartesian_edge(fun, g));
        }
      }
  CHECK(hits > 3);
}

// ============================================================================
// fibrations of factorization systems
// ============================================================================

TEST_CASE("identity maps are curved orthofibrations and op-Gray fibrations") {
  auto fs = product_ofs(poset_category(1), poset_category(1));
  auto idm = make_ofs_map(identity_functor(fs->base_ptr()), fs, fs);
  CHECK(is_curved_orthofibration(idm).verdict);
  CHECK(is_opgray(idm).verdict);
}

TEST_CASE("the source projection of the arrow system is a curved orthofibration") {
  auto proj = arrow_projections();
  auto tgt = iso_all_ofs(poset_category(1));
  auto f = make_ofs_map(proj.source_proj, proj.arrow.ofs, tgt);
  CHECK(is_ingressive_cartesian(f).verdict);
  CHECK(is_right_fibration(ingressive_restriction(f)).verdict);
  CHECK(is_curved_orthofibration(f).verdict);
}

TEST_CASE("the target projection fails on a non-unique ingressive lift") {
  auto proj = arrow_projections();
  auto tgt = all_iso_ofs(poset_category(1));
  auto f = make_ofs_map(proj.target_proj, proj.arrow.ofs, tgt);
  auto report = is_curved_orthofibration(f);
  CHECK_FALSE(report.verdict);
  CHECK_FALSE(is_right_fibration(ingressive_restriction(f)).verdict);
}

// ============================================================================
// fibrations of double categories
// ============================================================================

TEST_CASE("identity double functors are (cocart, right) fibrations") {
  Budget budget;
  auto d = dclr(product_ofs(poset_category(1), poset_category(1))).dbl;
  CHECK(is_cocart_right(identity_dbl_functor(d), budget).verdict);
}

TEST_CASE("dclr of the curved orthofibration example is (cocart, right)") {
  Budget budget;
  auto proj = arrow_projections();
  auto tgt = iso_all_ofs(poset_category(1));
  auto f = make_ofs_map(proj.source_proj, proj.arrow.ofs, tgt);
  auto src_d = dclr(f.source_fs);
  auto tgt_d = dclr(f.target_fs);
  CHECK(is_cocart_right(dclr_map(f, src_d, tgt_d), budget).verdict);
}

TEST_CASE("the product projection is (cocart, right) only over a discrete fibre") {
  Budget budget;
  auto c = poset_category(1);
  for (int n : {0, 1}) {
    auto d = poset_category(n);
    auto total = boxtimes(c, d);
    auto base = boxtimes(c, poset_category(0));
    const Id dob = d->object_count(), dmor = d->morphism_count();
    std::vector<Id> obj(total->object_count()), hmor(total->hmor_count()),
        vmor(total->vmor_count()), sq(total->square_count());
    for (Id x = 0; x < 2; ++x)
      for (Id y = 0; y < dob; ++y) obj[x * dob + y] = x;
    for (Id f = 0; f < 3; ++f)
      for (Id y = 0; y < dob; ++y) hmor[f * dob + y] = f;
    for (Id x = 0; x < 2; ++x)
      for (Id g = 0; g < dmor; ++g) vmor[x * dmor + g] = x;
    for (Id f = 0; f < 3; ++f)
      for (Id g = 0; g < dmor; ++g) sq[f * dmor + g] = f;
    auto proj = make_dbl_functor(total, base, obj, hmor, vmor, sq);
    CHECK(is_cocart_right(proj, budget).verdict == (n == 0));
  }
}

TEST_CASE("(left, cart) is by definition (cocart, right) after full reversal") {
  Budget budget;
  auto d = dclr(product_ofs(poset_category(1), poset_category(1))).dbl;
  auto idd = identity_dbl_functor(d);
  CHECK(is_left_cart(idd, budget).verdict == is_cocart_right(fullop_functor(idd), budget).verdict);
  CHECK(is_left_cart(fullop_functor(idd), budget).verdict ==
        is_cocart_right(fullop_functor(fullop_functor(idd)), budget).verdict);
}

// ============================================================================
// the comparison and source lemmas
// ============================================================================

TEST_CASE("fibration notions agree under dclr over a sweep of maps") {
  Budget budget(500'000'000);
  std::vector<OfsPtr> systems = {all_iso_ofs(poset_category(1)), iso_all_ofs(poset_category(1)),
                                 arrow_ofs(poset_category(1)).ofs,
                                 all_iso_ofs(poset_category(0))};
  long long maps = 0;
  for (const auto& a : systems)
    for (const auto& b : systems)
      for (const auto& f : enumerate_ofs_maps(a, b, budget)) {
        CHECK(compare_fibrations(f, budget).ok());
        ++maps;
      }
  CHECK(maps > 20);
}

TEST_CASE("source lemma: both sides true over dclr images") {
  Budget budget;
  auto d = dclr(product_ofs(poset_category(1), poset_category(1))).dbl;
  auto report = source_lemma_check(identity_dbl_functor(d), budget);
  CHECK(report.ok());
}

TEST_CASE("source lemma: both sides false for the Z/2 delooping over the point") {
  Budget budget;
  RawDouble raw;
  raw.objects = {"*"};
  raw.hmors = {{"id", 0, 0}};
  raw.vmors = {{"id", 0, 0}};
  raw.h_identities = {0};
  raw.v_identities = {0};
  raw.squares = {{"1", 0, 0, 0, 0}, {"s", 0, 0, 0, 0}};
  raw.vid_squares = {0};
  raw.hid_squares = {0};
  raw.hcomp_hmors = {{0, 0, 0}};
  raw.vcomp_vmors = {{0, 0, 0}};
  raw.hcomp_squares = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  raw.vcomp_squares = raw.hcomp_squares;
  auto delooping = validate_double(raw);
  auto terminal = boxtimes(poset_category(0), poset_category(0));
  auto fun = make_dbl_functor(delooping, terminal, {0}, {0}, {0}, {0, 0});
  auto report = source_lemma_check(fun, budget);
  CHECK(report.ok());  // biconditional holds: both sides false
  CHECK_FALSE(is_factorization_double(*delooping).verdict);
}

TEST_CASE("source lemma reports unmet preconditions") {
  Budget budget;
  auto p1 = poset_category(1);
  auto total = boxtimes(poset_category(0), p1);
  auto base = boxtimes(poset_category(0), poset_category(0));
  std::vector<Id> sq(total->square_count(), 0);
  auto fun = make_dbl_functor(total, base, {0, 0}, {0, 0}, {0, 0, 0}, {0, 0, 0});
  auto report = source_lemma_check(fun, budget);
  CHECK_FALSE(report.ok());
  CHECK(report.issues[0].code == "PreconditionNotMet");
}

// ============================================================================
// indexings
// ============================================================================

TEST_CASE("constant indexings validate") {
  auto base = dclr(product_ofs(poset_category(1), poset_category(1))).dbl;
  CHECK(check_indexing(constant_indexing(base, poset_category(1))).ok());
  CHECK(check_indexing(constant_indexing(base, z2_category())).ok());
}

TEST_CASE("the walking-arrow indexing validates") {
  CHECK(check_indexing(walking_arrow_indexing()).ok());
}

TEST_CASE("a twisted transformation is valid when no pasting constrains it") {
  CHECK(check_indexing(twist_indexing()).ok());
}

TEST_CASE("self-composable squares pin their transformation") {
  CHECK(check_indexing(idempotent_base_indexing(0)).ok());
  auto report = check_indexing(idempotent_base_indexing(1));
  CHECK_FALSE(report.ok());
  bool pasting = false;
  for (const auto& issue : report.issues)
    if (issue.code == "PastingFailure") pasting = true;
  CHECK(pasting);
}

TEST_CASE("a component with wrong endpoints is caught") {
  auto x = walking_arrow_indexing();
  // the vid square of the non-identity hmor has a single component; replace
  // it with the non-identity arrow of the fibre, which has the wrong source
  auto base = x.base;
  Id bad_square = base->vid_square(1);
  x.square_trans[bad_square] = {1};
  auto report = check_indexing(x);
  CHECK_FALSE(report.ok());
}

// ============================================================================
// unstraighten / straighten
// ============================================================================

TEST_CASE("the walking-arrow indexing unstraightens to three objects") {
  auto total = unstraighten(walking_arrow_indexing());
  CHECK(total.total->object_count() == 3);
  CHECK(check_dbl_functor(total.projection).ok());
  Budget budget;
  CHECK(is_cocart_right(total.projection, budget).verdict);
}

TEST_CASE("unstraightening over the terminal base returns the fibre") {
  auto base = boxtimes(poset_category(0), poset_category(0));
  auto k = poset_category(2);
  auto total = unstraighten(constant_indexing(base, k));
  CHECK(total.total->object_count() == k->object_count());
  CHECK(total.total->hmor_count() == k->morphism_count());
  CHECK(total.total->vmor_count() == k->object_count());
  CHECK(is_2category(*total.total));
}

TEST_CASE("unstraightened projections are (cocart, right) fibrations") {
  Budget budget;
  std::vector<DblIndexing> indexings = {
      constant_indexing(dclr(product_ofs(poset_category(1), poset_category(1))).dbl,
                        poset_category(1)),
      walking_arrow_indexing(), twist_indexing(), idempotent_base_indexing(0)};
  for (const auto& x : indexings) {
    auto total = unstraighten(x);
    CHECK(is_cocart_right(total.projection, budget).verdict);
  }
}

TEST_CASE("straighten recovers the indexing after unstraightening") {
  Budget budget(100'000'000);
  std::vector<DblIndexing> indexings = {
      constant_indexing(dclr(product_ofs(poset_category(1), poset_category(1))).dbl,
                        poset_category(1)),
      walking_arrow_indexing(), twist_indexing(), idempotent_base_indexing(0)};
  for (const auto& x : indexings) CHECK(straighten_roundtrip(x, budget).ok());
}

TEST_CASE("unstraighten recovers the fibration after straightening") {
  Budget budget(100'000'000);
  std::vector<DblIndexing> indexings = {walking_arrow_indexing(), twist_indexing(),
                                        idempotent_base_indexing(0)};
  for (const auto& x : indexings) {
    auto total = unstraighten(x);
    CHECK(unstraighten_roundtrip(total.projection, budget).ok());
  }
  // and on a fibration that was not built by unstraightening
  auto proj = arrow_projections();
  auto tgt = iso_all_ofs(poset_category(1));
  auto f = make_ofs_map(proj.source_proj, proj.arrow.ofs, tgt);
  auto fd = dclr_map(f, dclr(f.source_fs), dclr(f.target_fs));
  CHECK(unstraighten_roundtrip(fd, budget).ok());
}

TEST_CASE("straightening a constant fibration gives a constant indexing") {
  Budget budget;
  auto base = dclr(product_ofs(poset_category(1), poset_category(1))).dbl;
  auto k = poset_category(1);
  auto total = unstraighten(constant_indexing(base, k));
  auto x = straighten(total.projection, budget);
  for (const auto& fiber : x.fibers) CHECK(fiber->morphism_count() == k->morphism_count());
  for (Id h = 0; h < base->hmor_count(); ++h) {
    for (size_t a = 0; a < x.hmor_functors[h].obj_map.size(); ++a)
      CHECK(x.hmor_functors[h].obj_map[a] == static_cast<Id>(a));
  }
}
