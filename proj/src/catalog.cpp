#include "duocat/catalog.hpp"

#include <fstream>
#include <json.hpp>
#include <numeric>

#include "duocat/io.hpp"

namespace duocat {

CatPtr cyclic2_category() {
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

CatPtr codiscrete_groupoid(int nobj) {
  RawCategory raw;
  std::vector<std::vector<Id>> mor(nobj, std::vector<Id>(nobj));
  for (Id x = 0; x < nobj; ++x) raw.objects.push_back("o" + std::to_string(x));
  for (Id x = 0; x < nobj; ++x)
    for (Id y = 0; y < nobj; ++y) {
      mor[x][y] = static_cast<Id>(raw.morphisms.size());
      raw.morphisms.push_back({"m" + std::to_string(x) + std::to_string(y), x, y});
    }
  for (Id x = 0; x < nobj; ++x) raw.identities.push_back(mor[x][x]);
  for (Id x = 0; x < nobj; ++x)
    for (Id y = 0; y < nobj; ++y)
      for (Id z = 0; z < nobj; ++z) raw.composition.push_back({mor[y][z], mor[x][y], mor[x][z]});
  return validate_category(raw);
}

CatPtr no_meet_poset() {
  return poset_from_relation({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}}, {"a", "b", "c"});
}

CatPtr vee_poset() {
  return poset_from_relation({{1, 1, 1}, {0, 1, 0}, {0, 0, 1}}, {"a", "b", "c"});
}

OfsPtr cospan_ofs() {
  auto c = poset_from_relation({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}}, {"x", "y", "z"});
  MorClass eg(c->morphism_count(), 0), in(c->morphism_count(), 0);
  for (Id f = 0; f < c->morphism_count(); ++f) {
    if (c->is_identity(f)) {
      eg[f] = in[f] = 1;
    } else if (c->src(f) == 0) {
      eg[f] = 1;
    } else {
      in[f] = 1;
    }
  }
  return validate_ofs(c, eg, in);
}

OfsPtr double_wedge_ofs() {
  // p, q < x, y < z; E = {p->y, q->y, x->z}, I = {p->x, q->x, y->z}
  std::vector<std::vector<char>> leq(5, std::vector<char>(5, 0));
  for (int i = 0; i < 5; ++i) leq[i][i] = 1;
  for (int i : {0, 1}) leq[i][2] = leq[i][3] = leq[i][4] = 1;
  leq[2][4] = leq[3][4] = 1;
  auto c = poset_from_relation(leq, {"p", "q", "x", "y", "z"});
  MorClass eg(c->morphism_count(), 0), in(c->morphism_count(), 0);
  for (Id f = 0; f < c->morphism_count(); ++f) {
    Id s = c->src(f), t = c->tgt(f);
    if (c->is_identity(f)) {
      eg[f] = in[f] = 1;
    } else if ((s <= 1 && t == 3) || (s == 2 && t == 4)) {
      eg[f] = 1;
    } else if ((s <= 1 && t == 2) || (s == 3 && t == 4)) {
      in[f] = 1;
    }
  }
  return validate_ofs(c, eg, in);
}

RawDouble delooping_double_raw(const std::vector<std::vector<Id>>& mult) {
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

std::vector<std::vector<Id>> z2_multiplication() { return {{0, 1}, {1, 0}}; }

std::vector<std::vector<Id>> s3_multiplication() {
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

CatPtr symmetric3_table_category() {
  RawCategory raw;
  raw.objects = {"*"};
  auto table = s3_multiplication();
  for (Id g = 0; g < 6; ++g) raw.morphisms.push_back({"g" + std::to_string(g), 0, 0});
  raw.identities = {0};
  for (Id g = 0; g < 6; ++g)
    for (Id f = 0; f < 6; ++f) raw.composition.push_back({g, f, table[g][f]});
  return validate_category(raw);
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

namespace {

DblIndexing walking_arrow_indexing() {
  DblIndexing x;
  auto base = boxtimes(poset_category(1), poset_category(0));
  x.base = base;
  auto pt = poset_category(0);
  auto p1 = poset_category(1);
  x.fibers = {pt, p1};
  Functor incl{pt, p1, {0}, {p1->identity(0)}};
  x.hmor_functors = {identity_functor(pt), incl, identity_functor(p1)};
  x.vmor_functors = {identity_functor(pt), identity_functor(p1)};
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

DblIndexing twist_indexing() {
  auto base = boxtimes(poset_category(1), poset_category(1));
  DblIndexing x = constant_indexing(base, cyclic2_category());
  x.square_trans[4] = {1};  // the nondegenerate square (a, a) carries s
  return x;
}

DblIndexing idempotent_base_indexing(Id eta) {
  auto base = dclr(all_iso_ofs(idempotent_monoid_category())).dbl;
  DblIndexing x = constant_indexing(base, cyclic2_category());
  x.square_trans[1] = {eta};  // square (e, e); pinned to 0 by pasting
  return x;
}

DblIndexing broken_component_indexing() {
  DblIndexing x = walking_arrow_indexing();
  x.square_trans[x.base->vid_square(1)] = {1};  // wrong endpoints in the fibre
  return x;
}

}  // namespace

Catalog builtin_catalog() {
  Catalog cat;

  auto p = [&](int n) { return poset_category(n); };

  for (int n = 0; n <= 4; ++n)
    cat.categories.push_back({"poset[" + std::to_string(n) + "]", p(n), n <= 2});
  cat.categories.push_back({"product[1]x[1]", product(p(1), p(1)), false});
  cat.categories.push_back({"arrow[1]", arrow_category(p(1)).cat, true});
  cat.categories.push_back({"no-meet", no_meet_poset(), true});
  cat.categories.push_back({"vee", vee_poset(), true});
  cat.categories.push_back({"codiscrete2", codiscrete_groupoid(2), true});
  cat.categories.push_back({"BZ2", cyclic2_category(), true});
  cat.categories.push_back({"BM2", idempotent_monoid_category(), true});

  auto add_ofs = [&](std::string name, OfsPtr fs, bool poset_based, bool adequate, bool strict) {
    cat.ofs.push_back({std::move(name), std::move(fs), poset_based, adequate, strict});
  };
  add_ofs("product-ofs[1][1]", product_ofs(p(1), p(1)), true, true, true);
  add_ofs("product-ofs[1][2]", product_ofs(p(1), p(2)), true, true, true);
  add_ofs("product-ofs[2][1]", product_ofs(p(2), p(1)), true, true, true);
  add_ofs("product-ofs[2][2]", product_ofs(p(2), p(2)), true, true, true);
  add_ofs("arrow-ofs[0]", arrow_ofs(p(0)).ofs, true, true, true);
  add_ofs("arrow-ofs[1]", arrow_ofs(p(1)).ofs, true, true, true);
  add_ofs("arrow-ofs[2]", arrow_ofs(p(2)).ofs, true, true, true);
  for (int n = 1; n <= 3; ++n) {
    add_ofs("isos-all[" + std::to_string(n) + "]", iso_all_ofs(p(n)), true, true, true);
    add_ofs("all-isos[" + std::to_string(n) + "]", all_iso_ofs(p(n)), true, true, true);
  }
  add_ofs("all-isos[vee]", all_iso_ofs(vee_poset()), true, true, true);
  add_ofs("all-isos[no-meet]", all_iso_ofs(no_meet_poset()), true, true, true);
  add_ofs("isos-all[no-meet]", iso_all_ofs(no_meet_poset()), true, true, true);
  add_ofs("all-isos[BM2]", all_iso_ofs(idempotent_monoid_category()), false, true, true);
  add_ofs("cospan", cospan_ofs(), true, false, true);
  add_ofs("double-wedge", double_wedge_ofs(), true, false, true);

  {
    auto lattice = product(p(1), p(1));
    MorClass all(lattice->morphism_count(), 1);
    cat.triples.push_back({"all-all[1]x[1]", lattice, all, all, "LiftingFailure", false});
  }

  auto add_double = [&](std::string name, DblPtr d, bool fact, bool adequate) {
    cat.doubles.push_back({std::move(name), std::move(d), fact, adequate});
  };
  add_double("box[0][0]", boxtimes(p(0), p(0)), true, true);
  add_double("box[1][0]", boxtimes(p(1), p(0)), true, true);
  add_double("box[0][1]", boxtimes(p(0), p(1)), true, true);
  add_double("box[1][1]", boxtimes(p(1), p(1)), true, true);
  add_double("box[2][1]", boxtimes(p(2), p(1)), true, true);
  add_double("box[1][2]", boxtimes(p(1), p(2)), true, true);
  add_double("box[2][2]", boxtimes(p(2), p(2)), true, true);
  {
    Budget budget;
    add_double("ardc[0]", ardc(p(0), budget).dbl, true, true);
    add_double("ardc[1]", ardc(p(1), budget).dbl, true, true);
    add_double("ardc[2]", ardc(p(2), budget).dbl, true, true);
  }
  for (const auto& entry : cat.ofs)
    add_double("dclr(" + entry.name + ")", dclr(entry.fs).dbl, true, entry.expect_adequate);
  add_double("delooping-Z2", validate_double(delooping_double_raw(z2_multiplication())), false,
             false);

  cat.raw_doubles.push_back(
      {"delooping-S3", delooping_double_raw(s3_multiplication()), "InterchangeFailure"});

  auto dclr_prod = dclr(product_ofs(p(1), p(1))).dbl;
  cat.indexings.push_back({"constant[1]-over-dclr-product", constant_indexing(dclr_prod, p(1)), ""});
  cat.indexings.push_back(
      {"constant-Z2-over-box11", constant_indexing(boxtimes(p(1), p(1)), cyclic2_category()), ""});
  cat.indexings.push_back({"walking-arrow", walking_arrow_indexing(), ""});
  cat.indexings.push_back({"twist-Z2", twist_indexing(), ""});
  cat.indexings.push_back({"idempotent-pinned", idempotent_base_indexing(0), ""});
  cat.indexings.push_back({"idempotent-broken", idempotent_base_indexing(1), "PastingFailure"});
  cat.indexings.push_back({"component-broken", broken_component_indexing(), "ComponentMismatch"});

  return cat;
}

Catalog empty_catalog() { return {}; }

Catalog load_catalog(const std::filesystem::path& manifest) {
  using nlohmann::json;
  std::ifstream in(manifest);
  if (!in) throw ParseError("cannot open catalog manifest " + manifest.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& err) {
    throw ParseError(manifest.string() + ": " + err.what());
  }
  Catalog cat;
  auto dir = manifest.parent_path();
  if (j.contains("categories"))
    for (const auto& e : j["categories"]) {
      CatalogCategory entry;
      entry.name = e.at("name").get<std::string>();
      entry.cat = load_category(dir / e.at("path").get<std::string>());
      entry.sweepable = e.value("sweepable", false);
      cat.categories.push_back(std::move(entry));
    }
  if (j.contains("ofs"))
    for (const auto& e : j["ofs"]) {
      CatalogOfs entry;
      entry.name = e.at("name").get<std::string>();
      entry.fs = load_ofs(dir / e.at("path").get<std::string>());
      entry.poset_based = e.value("poset_based", false);
      entry.expect_adequate = e.value("adequate", false);
      entry.expect_strict = e.value("strict", true);
      cat.ofs.push_back(std::move(entry));
    }
  if (j.contains("doubles"))
    for (const auto& e : j["doubles"]) {
      CatalogDouble entry;
      entry.name = e.at("name").get<std::string>();
      entry.dbl = load_double(dir / e.at("path").get<std::string>());
      entry.expect_factorization = e.value("factorization", false);
      entry.expect_adequate_double = e.value("adequate", false);
      cat.doubles.push_back(std::move(entry));
    }
  if (j.contains("indexings"))
    for (const auto& e : j["indexings"]) {
      CatalogIndexing entry;
      entry.name = e.at("name").get<std::string>();
      entry.indexing = load_indexing(dir / e.at("path").get<std::string>());
      entry.expected_error = e.value("expected_error", std::string{});
      cat.indexings.push_back(std::move(entry));
    }
  return cat;
}

}  // namespace duocat
