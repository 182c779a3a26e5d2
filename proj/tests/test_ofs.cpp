#include <doctest.h>

#include "duocat/ofs.hpp"

using namespace duocat;

namespace {

// Small categories the class-pair sweep runs over.
std::vector<CatPtr> sweep_categories() {
  std::vector<CatPtr> cats;
  cats.push_back(poset_category(0));
  cats.push_back(poset_category(1));
  cats.push_back(poset_category(2));
  cats.push_back(arrow_category(poset_category(1)).cat);
  // no-meet poset {a, b} < c
  cats.push_back(poset_from_relation({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}}, {"a", "b", "c"}));
  // delooping of Z/2
  {
    RawCategory raw;
    raw.objects = {"*"};
    raw.morphisms = {{"1", 0, 0}, {"s", 0, 0}};
    raw.identities = {0};
    raw.composition = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    cats.push_back(validate_category(raw));
  }
  // delooping of the idempotent monoid {1, e}
  {
    RawCategory raw;
    raw.objects = {"*"};
    raw.morphisms = {{"1", 0, 0}, {"e", 0, 0}};
    raw.identities = {0};
    raw.composition = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
    cats.push_back(validate_category(raw));
  }
  return cats;
}

}  // namespace

// ============================================================================
// validate_ofs
// ============================================================================

TEST_CASE("the product system on [1]x[1] is valid") {
  auto fs = product_ofs(poset_category(1), poset_category(1));
  CHECK(fs->egressive_count() == 6);
  CHECK(fs->ingressive_count() == 6);
}

TEST_CASE("(isos, all) is a factorization system on every sweep category") {
  for (const auto& c : sweep_categories()) {
    CHECK_NOTHROW(iso_all_ofs(c));
    CHECK_NOTHROW(all_iso_ofs(c));
  }
}

TEST_CASE("E = I = all fails on [1] with the expected witness") {
  auto p1 = poset_category(1);
  MorClass all(p1->morphism_count(), 1);
  auto v = check_ofs(*p1, all, all);
  CHECK_FALSE(v.ok());
  CHECK(v.agree);  // both criteria reject
  bool fact_failure = false;
  for (const auto& issue : v.factorization.issues)
    if (issue.code == "FactorizationFailure") fact_failure = true;
  CHECK(fact_failure);
}

TEST_CASE("class masks missing an iso are rejected") {
  // codiscrete groupoid on 2 objects; drop a non-identity iso from E
  RawCategory raw;
  raw.objects = {"u", "w"};
  std::vector<std::vector<Id>> mor(2, std::vector<Id>(2));
  for (Id x = 0; x < 2; ++x)
    for (Id y = 0; y < 2; ++y) {
      mor[x][y] = static_cast<Id>(raw.morphisms.size());
      raw.morphisms.push_back({"m", x, y});
    }
  raw.identities = {mor[0][0], mor[1][1]};
  for (Id x = 0; x < 2; ++x)
    for (Id y = 0; y < 2; ++y)
      for (Id z = 0; z < 2; ++z) raw.composition.push_back({mor[y][z], mor[x][y], mor[x][z]});
  auto codisc = validate_category(raw);

  MorClass eg(codisc->morphism_count(), 1), in(codisc->morphism_count(), 1);
  eg[mor[0][1]] = 0;
  auto v = check_ofs(*codisc, eg, in);
  CHECK_FALSE(v.ok());
  bool missing_iso = false;
  for (const auto& issue : v.lifting.issues)
    if (issue.code == "MissingIso") missing_iso = true;
  CHECK(missing_iso);
}

// ============================================================================
// factor
// ============================================================================

TEST_CASE("the diagonal of [1]x[1] factors through the corner (1,0)") {
  auto p1 = poset_category(1);
  auto fs = product_ofs(p1, p1);
  const auto& c = fs->base();
  // objects are (i,j) with id 2i + j; find the diagonal morphism
  Id diag = kNone;
  for (Id f = 0; f < c.morphism_count(); ++f)
    if (c.src(f) == 0 && c.tgt(f) == 3) diag = f;
  REQUIRE(diag != kNone);
  auto [e, i] = factor(*fs, diag);
  CHECK(c.src(e) == 0);
  CHECK(c.tgt(e) == 2);  // (1,0)
  CHECK(c.src(i) == 2);
  CHECK(c.tgt(i) == 3);
  CHECK(fs->egressive(e));
  CHECK(fs->ingressive(i));
}

TEST_CASE("identities factor as (id, id)") {
  auto fs = product_ofs(poset_category(1), poset_category(1));
  const auto& c = fs->base();
  for (Id x = 0; x < c.object_count(); ++x) {
    auto [e, i] = factor(*fs, c.identity(x));
    CHECK(e == c.identity(x));
    CHECK(i == c.identity(x));
  }
}

TEST_CASE("factor recomposes to the original morphism") {
  auto systems = {product_ofs(poset_category(1), poset_category(1)),
                  arrow_ofs(poset_category(2)).ofs, iso_all_ofs(poset_category(3))};
  for (const auto& fs : systems) {
    const auto& c = fs->base();
    for (Id f = 0; f < c.morphism_count(); ++f) {
      auto [e, i] = factor(*fs, f);
      CHECK(c.compose(i, e) == f);
      CHECK(fs->egressive(e));
      CHECK(fs->ingressive(i));
    }
  }
}

TEST_CASE("an already egressive morphism factors as (f, id) when least") {
  auto fs = all_iso_ofs(poset_category(1));
  const auto& c = fs->base();
  for (Id f = 0; f < c.morphism_count(); ++f) {
    auto [e, i] = factor(*fs, f);
    CHECK(e == f);
    CHECK(i == c.identity(c.tgt(f)));
  }
}

// ============================================================================
// product_ofs / arrow_ofs
// ============================================================================

TEST_CASE("product with the terminal category degenerates to (all, isos)") {
  auto p2 = poset_category(2);
  auto fs = product_ofs(p2, poset_category(0));
  CHECK(fs->egressive_count() == fs->base().morphism_count());
  for (Id f = 0; f < fs->base().morphism_count(); ++f)
    CHECK(fs->ingressive(f) == fs->base().is_iso(f));

  auto fs2 = product_ofs(poset_category(0), p2);
  CHECK(fs2->ingressive_count() == fs2->base().morphism_count());
  for (Id f = 0; f < fs2->base().morphism_count(); ++f)
    CHECK(fs2->egressive(f) == fs2->base().is_iso(f));
}

TEST_CASE("arrow system of [1]: class sizes 4/4 meeting in the identities") {
  auto a = arrow_ofs(poset_category(1));
  CHECK(a.ofs->egressive_count() == 4);
  CHECK(a.ofs->ingressive_count() == 4);
  int both = 0;
  for (Id f = 0; f < a.ofs->base().morphism_count(); ++f)
    if (a.ofs->egressive(f) && a.ofs->ingressive(f)) {
      ++both;
      CHECK(a.ofs->base().is_identity(f));
    }
  CHECK(both == 3);
}

TEST_CASE("arrow system of [2] passes both validation criteria") {
  CHECK_NOTHROW(arrow_ofs(poset_category(2)));
}

// ============================================================================
// maps of factorization systems
// ============================================================================

TEST_CASE("identity is a map of factorization systems") {
  auto fs = product_ofs(poset_category(1), poset_category(1));
  CHECK_NOTHROW(make_ofs_map(identity_functor(fs->base_ptr()), fs, fs));
}

TEST_CASE("first projection lands in (all, isos)") {
  auto p1 = poset_category(1);
  auto fs = product_ofs(p1, p1);
  auto tgt = all_iso_ofs(p1);
  std::vector<Id> obj(4), mor(9);
  for (Id x = 0; x < 4; ++x) obj[x] = x / 2;
  for (Id f = 0; f < 9; ++f) mor[f] = f / 3;
  auto proj = make_functor(fs->base_ptr(), tgt->base_ptr(), obj, mor);
  CHECK(check_ofs_map({proj, fs, tgt}).ok());
}

TEST_CASE("the swap functor on [1]x[1] violates the class structure") {
  auto p1 = poset_category(1);
  auto fs = product_ofs(p1, p1);
  // swap coordinates: object 2i+j -> 2j+i, morphism 3f+g -> 3g+f
  std::vector<Id> obj(4), mor(9);
  for (Id i = 0; i < 2; ++i)
    for (Id j = 0; j < 2; ++j) obj[2 * i + j] = 2 * j + i;
  for (Id f = 0; f < 3; ++f)
    for (Id g = 0; g < 3; ++g) mor[3 * f + g] = 3 * g + f;
  auto swap_fun = make_functor(fs->base_ptr(), fs->base_ptr(), obj, mor);
  Report report = check_ofs_map({swap_fun, fs, fs});
  CHECK_FALSE(report.ok());
  CHECK(report.issues[0].code == "ClassViolation");
}

// ============================================================================
// the class-pair sweep: both criteria agree on every triple
// ============================================================================

TEST_CASE("lifting and factorization criteria agree over the generated sweep") {
  Budget budget(50'000'000);
  long long triples = 0, accepted = 0;
  for (const auto& c : sweep_categories()) {
    REQUIRE(c->object_count() <= 3);
    REQUIRE(c->morphism_count() <= 12);
    auto wides = enumerate_wide_subcategories(*c, budget);
    for (const auto& eg : wides)
      for (const auto& in : wides) {
        auto v = check_ofs(*c, eg, in);
        ++triples;
        CHECK(v.agree);
        if (v.ok()) ++accepted;
      }
  }
  CHECK(triples > 100);   // the sweep is not vacuous
  CHECK(accepted >= 10);  // and accepts a healthy set of systems
}

TEST_CASE("E intersect I is exactly the invertible morphisms on accepted triples") {
  Budget budget(50'000'000);
  for (const auto& c : sweep_categories()) {
    auto wides = enumerate_wide_subcategories(*c, budget);
    for (const auto& eg : wides)
      for (const auto& in : wides) {
        if (!check_ofs(*c, eg, in).ok()) continue;
        for (Id f = 0; f < c->morphism_count(); ++f)
          CHECK((eg[f] && in[f]) == c->is_iso(f));
      }
  }
}
