#include <doctest.h>

#include "duocat/bisim.hpp"
#include "duocat/dblcat.hpp"

using namespace duocat;

namespace {

long long count_monotone(int n, int m, int floor = 0) {
  if (n < 0) return 1;
  long long total = 0;
  for (int v = floor; v <= m; ++v) total += count_monotone(n - 1, m, v);
  return total;
}

// Delooping double category of a monoid given by its multiplication table:
// one object, trivial edges, squares composing via the table both ways.
RawDouble delooping_raw(const std::vector<std::vector<Id>>& mult) {
  RawDouble raw;
  const Id n = static_cast<Id>(mult.size());
  raw.objects = {"*"};
  raw.hmors = {{"id", 0, 0}};
  raw.vmors = {{"id", 0, 0}};
  raw.h_identities = {0};
  raw.v_identities = {0};
  for (Id g = 0; g < n; ++g) raw.squares.push_back({"g" + std::to_string(g), 0, 0, 0, 0});
  raw.vid_squares = {0};
  raw.hid_squares = {0};
  raw.hcomp_hmors = {{0, 0, 0}};
  raw.vcomp_vmors = {{0, 0, 0}};
  for (Id g = 0; g < n; ++g)
    for (Id f = 0; f < n; ++f) {
      raw.hcomp_squares.push_back({g, f, mult[g][f]});
      raw.vcomp_squares.push_back({g, f, mult[g][f]});
    }
  return raw;
}

std::vector<std::vector<Id>> z2_table() { return {{0, 1}, {1, 0}}; }

std::vector<std::vector<Id>> s3_table() {
  // permutations of {0,1,2} listed as 012, 120, 201, 021, 102, 210
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                           {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
  auto find = [&](const std::array<int, 3>& p) {
    for (size_t k = 0; k < perms.size(); ++k)
      if (perms[k] == p) return static_cast<Id>(k);
    return kNone;
  };
  std::vector<std::vector<Id>> table(6, std::vector<Id>(6));
  for (size_t g = 0; g < 6; ++g)
    for (size_t f = 0; f < 6; ++f) {
      std::array<int, 3> comp;
      for (int i = 0; i < 3; ++i) comp[i] = perms[g][perms[f][i]];
      table[g][f] = find(comp);
    }
  return table;
}

// Fully naive double functor count: cartesian product over per-slot candidate
// lists, final filter through check_dbl_functor. Independent of the
// backtracking enumerator.
long long naive_dbl_functor_count(const DblPtr& a, const DblPtr& b) {
  long long count = 0;
  std::vector<Id> obj(a->object_count()), hmor(a->hmor_count()), vmor(a->vmor_count()),
      sq(a->square_count());
  auto squares_rec = [&](auto&& self, Id s) -> void {
    if (s == a->square_count()) {
      if (check_dbl_functor({a, b, obj, hmor, vmor, sq}).ok()) ++count;
      return;
    }
    for (Id t : b->squares_with_boundary(hmor[a->top(s)], hmor[a->bottom(s)], vmor[a->left(s)],
                                         vmor[a->right(s)])) {
      sq[s] = t;
      self(self, s + 1);
    }
  };
  auto vmors_rec = [&](auto&& self, Id v) -> void {
    if (v == a->vmor_count()) {
      squares_rec(squares_rec, 0);
      return;
    }
    for (Id w : b->vcat().hom(obj[a->vsrc(v)], obj[a->vtgt(v)])) {
      vmor[v] = w;
      self(self, v + 1);
    }
  };
  auto hmors_rec = [&](auto&& self, Id h) -> void {
    if (h == a->hmor_count()) {
      vmors_rec(vmors_rec, 0);
      return;
    }
    for (Id g : b->hcat().hom(obj[a->hsrc(h)], obj[a->htgt(h)])) {
      hmor[h] = g;
      self(self, h + 1);
    }
  };
  auto objs_rec = [&](auto&& self, Id x) -> void {
    if (x == a->object_count()) {
      hmors_rec(hmors_rec, 0);
      return;
    }
    for (Id y = 0; y < b->object_count(); ++y) {
      obj[x] = y;
      self(self, x + 1);
    }
  };
  objs_rec(objs_rec, 0);
  return count;
}

}  // namespace

// ============================================================================
// validate_double
// ============================================================================

TEST_CASE("boxtimes([1],[1]) validates with the expected element counts") {
  auto d = boxtimes(poset_category(1), poset_category(1));
  CHECK(d->object_count() == 4);
  CHECK(d->hmor_count() == 6);
  CHECK(d->vmor_count() == 6);
  CHECK(d->square_count() == 9);
  CHECK(check_double(serialize_double(*d)).ok());
}

TEST_CASE("the Z/2 delooping is a valid double category") {
  auto d = validate_double(delooping_raw(z2_table()));
  CHECK(d->square_count() == 2);
}

TEST_CASE("the S3 delooping fails interchange") {
  Report report = check_double(delooping_raw(s3_table()));
  REQUIRE_FALSE(report.ok());
  bool interchange = false;
  for (const auto& issue : report.issues)
    if (issue.code == "InterchangeFailure") interchange = true;
  CHECK(interchange);
}

TEST_CASE("square boundary mismatches are caught") {
  auto raw = serialize_double(*boxtimes(poset_category(1), poset_category(1)));
  std::swap(raw.squares[4].left, raw.squares[4].right);
  // swapping verticals of an off-diagonal square breaks its endpoints
  Report report = check_double(raw);
  CHECK_FALSE(report.ok());
}

// ============================================================================
// grids
// ============================================================================

TEST_CASE("grid counts of boxtimes split as products of chain counts") {
  Budget budget;
  auto p1 = poset_category(1);
  auto d = boxtimes(p1, p1);
  CHECK(grid_count(*d, 0, 0, budget) == 4);
  CHECK(grid_count(*d, 1, 1, budget) == 9);
  CHECK(grid_count(*d, 2, 1, budget) == 12);  // map([2],[1]) * map([1],[1]) = 4 * 3
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n)
      CHECK(grid_count(*d, m, n, budget) == count_monotone(m, 1) * count_monotone(n, 1));

  auto d12 = boxtimes(p1, poset_category(2));
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n)
      CHECK(grid_count(*d12, m, n, budget) == count_monotone(m, 1) * count_monotone(n, 2));
}

TEST_CASE("grid counts satisfy the iterated fibre-product decomposition") {
  Budget budget;
  std::vector<DblPtr> doubles = {boxtimes(poset_category(1), poset_category(1)),
                                 boxtimes(poset_category(2), poset_category(1)),
                                 validate_double(delooping_raw(z2_table()))};
  for (const auto& d : doubles)
    for (int m = 0; m <= 2; ++m) {
      auto col = chain_category(d, m, budget);
      for (int n = 0; n <= 3; ++n)
        CHECK(grid_count(*d, m, n, budget) == nerve_chain_count(*col.cat, n));
    }
}

// ============================================================================
// duality operators
// ============================================================================

TEST_CASE("all four duality operators are involutions and validate") {
  std::vector<DblPtr> doubles = {boxtimes(poset_category(1), poset_category(2)),
                                 validate_double(delooping_raw(z2_table()))};
  for (const auto& d : doubles) {
    CHECK(horop(horop(d))->same_tables(*d));
    CHECK(verop(verop(d))->same_tables(*d));
    CHECK(swapop(swapop(d))->same_tables(*d));
    CHECK(fullop(fullop(d))->same_tables(*d));
    CHECK(fullop(d)->same_tables(*verop(horop(d))));
  }
}

TEST_CASE("verop of boxtimes is boxtimes of the opposite") {
  auto c = poset_category(1);
  auto d = poset_category(2);
  CHECK(verop(boxtimes(c, d))->same_tables(*boxtimes(c, opposite(d))));
  CHECK(horop(boxtimes(c, d))->same_tables(*boxtimes(opposite(c), d)));
}

TEST_CASE("swap of boxtimes exchanges the factors up to the reindexing iso") {
  auto c = poset_category(1);
  auto d = poset_category(2);
  auto lhs = swapop(boxtimes(c, d));
  auto rhs = boxtimes(d, c);
  const Id cob = c->object_count(), dob = d->object_count();
  const Id cmor = c->morphism_count(), dmor = d->morphism_count();
  std::vector<Id> obj(lhs->object_count()), hmor(lhs->hmor_count()), vmor(lhs->vmor_count()),
      sq(lhs->square_count());
  for (Id x = 0; x < cob; ++x)
    for (Id y = 0; y < dob; ++y) obj[x * dob + y] = y * cob + x;
  // hmors of lhs are the vmors of c x d, i.e. pairs (x, g: y -> y')
  for (Id x = 0; x < cob; ++x)
    for (Id g = 0; g < dmor; ++g) hmor[x * dmor + g] = g * cob + x;
  for (Id f = 0; f < cmor; ++f)
    for (Id y = 0; y < dob; ++y) vmor[f * dob + y] = y * cmor + f;
  for (Id f = 0; f < cmor; ++f)
    for (Id g = 0; g < dmor; ++g) sq[f * dmor + g] = g * cmor + f;
  auto iso = make_dbl_functor(lhs, rhs, obj, hmor, vmor, sq);
  CHECK(is_dbl_isomorphism(iso));
}

// ============================================================================
// is_factorization_double / is_2category
// ============================================================================

TEST_CASE("boxtimes([1],[1]) is a factorization double category") {
  CHECK(is_factorization_double(*boxtimes(poset_category(1), poset_category(1))).verdict);
}

TEST_CASE("the Z/2 delooping has two fillers on the identity corner") {
  auto d = validate_double(delooping_raw(z2_table()));
  auto report = is_factorization_double(*d);
  CHECK_FALSE(report.verdict);
  CHECK(report.filler_count == 2);
}

TEST_CASE("is_2category detects constant vertical direction") {
  CHECK(is_2category(*boxtimes(poset_category(2), poset_category(0))));
  CHECK_FALSE(is_2category(*boxtimes(poset_category(0), poset_category(1))));
}

// ============================================================================
// double functors
// ============================================================================

TEST_CASE("double functors out of boxtimes([0],[0]) are the objects") {
  Budget budget;
  auto pt = boxtimes(poset_category(0), poset_category(0));
  auto d = boxtimes(poset_category(1), poset_category(1));
  auto functors = enumerate_dbl_functors(pt, d, budget);
  CHECK(static_cast<int>(functors.size()) == d->object_count());
  for (const auto& fun : functors) CHECK(check_dbl_functor(fun).ok());
}

TEST_CASE("double functors out of boxtimes([1],[0]) are the hmors") {
  Budget budget;
  auto walking_h = boxtimes(poset_category(1), poset_category(0));
  auto d = boxtimes(poset_category(1), poset_category(1));
  CHECK(static_cast<int>(enumerate_dbl_functors(walking_h, d, budget).size()) == d->hmor_count());
  auto walking_v = boxtimes(poset_category(0), poset_category(1));
  CHECK(static_cast<int>(enumerate_dbl_functors(walking_v, d, budget).size()) == d->vmor_count());
}

TEST_CASE("double functors out of boxtimes([1],[1]) are the squares") {
  Budget budget;
  auto walking_sq = boxtimes(poset_category(1), poset_category(1));
  std::vector<DblPtr> targets = {walking_sq, boxtimes(poset_category(2), poset_category(1)),
                                 validate_double(delooping_raw(z2_table()))};
  for (const auto& d : targets) {
    auto functors = enumerate_dbl_functors(walking_sq, d, budget);
    CHECK(static_cast<int>(functors.size()) == d->square_count());
    CHECK(naive_dbl_functor_count(walking_sq, d) == d->square_count());
  }
}

TEST_CASE("backtracking enumeration agrees with the naive product oracle") {
  Budget budget;
  auto a = boxtimes(poset_category(1), poset_category(1));
  auto b = boxtimes(poset_category(1), poset_category(2));
  CHECK(static_cast<long long>(enumerate_dbl_functors(a, b, budget).size()) ==
        naive_dbl_functor_count(a, b));
}

TEST_CASE("identity and composition of double functors validate") {
  auto d = boxtimes(poset_category(1), poset_category(1));
  auto idf = identity_dbl_functor(d);
  CHECK(check_dbl_functor(idf).ok());
  CHECK(is_dbl_isomorphism(idf));
  CHECK(check_dbl_functor(compose_dbl_functors(idf, idf)).ok());
}

// ============================================================================
// bisimplicial truncation
// ============================================================================

TEST_CASE("grids of a double category round-trip through the truncation") {
  Budget budget;
  std::vector<DblPtr> doubles = {boxtimes(poset_category(1), poset_category(2)),
                                 validate_double(delooping_raw(z2_table()))};
  for (const auto& d : doubles) {
    auto b = truncate_double(*d, budget);
    CHECK(check_bisim(b).ok());
    auto back = bisim_to_double(b);
    CHECK(back->same_tables(*d));
  }
}

TEST_CASE("a padded level (2,0) triggers a Segal failure") {
  Budget budget;
  auto d = boxtimes(poset_category(1), poset_category(0));
  auto b = truncate_double(*d, budget);
  // duplicate an existing 2-chain: the Segal map is no longer injective
  Id victim = 0;
  b.size[2][0] += 1;
  for (int i = 0; i <= 2; ++i) b.hface[2][0][i].push_back(b.hface[2][0][i][victim]);
  b.vdeg[2][0][0].push_back(b.vdeg[2][0][0][victim]);
  bool segal_failure = false;
  try {
    bisim_to_double(b);
  } catch (const ValidationError& err) {
    for (const auto& issue : err.report().issues)
      if (issue.code == "SegalFailure") segal_failure = true;
  }
  CHECK(segal_failure);
}
