#include "duocat/fib.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace duocat {

namespace {

std::string mor_str(Id f) { return std::to_string(f); }

}  // namespace

// ---------------------------------------------------------------------------
// plain fibration predicates

FibReport is_right_fibration(const Functor& fun) {
  FibReport report;
  const auto& c = *fun.target;
  const auto& d = *fun.source;
  std::map<std::pair<Id, Id>, int> hits;  // (image morphism, target object) -> count
  for (Id g = 0; g < d.morphism_count(); ++g) ++hits[{fun.mor_map[g], d.tgt(g)}];
  for (Id f = 0; f < c.morphism_count(); ++f)
    for (Id a = 0; a < d.object_count(); ++a) {
      if (fun.obj_map[a] != c.tgt(f)) continue;
      auto it = hits.find({f, a});
      int count = it == hits.end() ? 0 : it->second;
      if (count != 1)
        report.fail("NonUniqueLift", "pair (f=" + mor_str(f) + ", d=" + mor_str(a) + ") has " +
                                         std::to_string(count) + " lifts");
    }
  return report;
}

FibReport is_left_fibration(const Functor& fun) {
  FibReport report;
  const auto& c = *fun.target;
  const auto& d = *fun.source;
  std::map<std::pair<Id, Id>, int> hits;
  for (Id g = 0; g < d.morphism_count(); ++g) ++hits[{fun.mor_map[g], d.src(g)}];
  for (Id f = 0; f < c.morphism_count(); ++f)
    for (Id a = 0; a < d.object_count(); ++a) {
      if (fun.obj_map[a] != c.src(f)) continue;
      auto it = hits.find({f, a});
      int count = it == hits.end() ? 0 : it->second;
      if (count != 1)
        report.fail("NonUniqueLift", "pair (f=" + mor_str(f) + ", d=" + mor_str(a) + ") has " +
                                         std::to_string(count) + " lifts");
    }
  return report;
}

FibReport is_right_fibration_level2(const Functor& fun) {
  FibReport report;
  const auto& c = *fun.target;
  const auto& d = *fun.source;
  std::map<std::array<Id, 3>, int> hits;  // (image f1, image f2, target object)
  for (Id g1 = 0; g1 < d.morphism_count(); ++g1)
    for (Id g2 = 0; g2 < d.morphism_count(); ++g2)
      if (d.composable(g2, g1)) ++hits[{fun.mor_map[g1], fun.mor_map[g2], d.tgt(g2)}];
  for (Id f1 = 0; f1 < c.morphism_count(); ++f1)
    for (Id f2 = 0; f2 < c.morphism_count(); ++f2) {
      if (!c.composable(f2, f1)) continue;
      for (Id a = 0; a < d.object_count(); ++a) {
        if (fun.obj_map[a] != c.tgt(f2)) continue;
        auto it = hits.find({f1, f2, a});
        int count = it == hits.end() ? 0 : it->second;
        if (count != 1)
          report.fail("NonUniqueLift", "chain (" + mor_str(f1) + "," + mor_str(f2) + ") over " +
                                           mor_str(a) + " has " + std::to_string(count) + " lifts");
      }
    }
  return report;
}

bool is_cocartesian_edge(const Functor& fun, Id g) {
  const auto& c = *fun.target;
  const auto& d = *fun.source;
  const Id d0 = d.src(g), d1 = d.tgt(g);
  for (Id h : d.out(d0))
    for (Id k : c.hom(fun.obj_map[d1], fun.obj_map[d.tgt(h)])) {
      if (c.compose(k, fun.mor_map[g]) != fun.mor_map[h]) continue;
      int fillers = 0;
      for (Id l : d.hom(d1, d.tgt(h)))
        if (fun.mor_map[l] == k && d.compose(l, g) == h) ++fillers;
      if (fillers != 1) return false;
    }
  return true;
}

bool is_cartesian_edge(const Functor& fun, Id g) {
  const auto& c = *fun.target;
  const auto& d = *fun.source;
  const Id d0 = d.src(g), d1 = d.tgt(g);
  for (Id h : d.in(d1))
    for (Id k : c.hom(fun.obj_map[d.src(h)], fun.obj_map[d0])) {
      if (c.compose(fun.mor_map[g], k) != fun.mor_map[h]) continue;
      int fillers = 0;
      for (Id l : d.hom(d.src(h), d0))
        if (fun.mor_map[l] == k && d.compose(g, l) == h) ++fillers;
      if (fillers != 1) return false;
    }
  return true;
}

FibReport is_cocartesian_fibration(const Functor& fun) {
  FibReport report;
  const auto& c = *fun.target;
  const auto& d = *fun.source;
  std::vector<char> cocart(d.morphism_count());
  for (Id g = 0; g < d.morphism_count(); ++g) cocart[g] = is_cocartesian_edge(fun, g) ? 1 : 0;
  for (Id a = 0; a < d.object_count(); ++a)
    for (Id f : c.out(fun.obj_map[a])) {
      bool found = false;
      for (Id g : d.out(a))
        if (fun.mor_map[g] == f && cocart[g]) found = true;
      if (!found)
        report.fail("NoCocartesianLift", "object " + mor_str(a) + " along " + mor_str(f));
    }
  return report;
}

FibReport is_cartesian_fibration(const Functor& fun) {
  FibReport report;
  const auto& c = *fun.target;
  const auto& d = *fun.source;
  std::vector<char> cart(d.morphism_count());
  for (Id g = 0; g < d.morphism_count(); ++g) cart[g] = is_cartesian_edge(fun, g) ? 1 : 0;
  for (Id a = 0; a < d.object_count(); ++a)
    for (Id f : c.in(fun.obj_map[a])) {
      bool found = false;
      for (Id g : d.in(a))
        if (fun.mor_map[g] == f && cart[g]) found = true;
      if (!found) report.fail("NoCartesianLift", "object " + mor_str(a) + " along " + mor_str(f));
    }
  return report;
}

// ---------------------------------------------------------------------------
// fibrations of factorization systems

Functor egressive_restriction(const OfsMap& f) {
  Subcategory src = wide_subcategory(f.source_fs->base_ptr(), f.source_fs->egressive_class());
  Subcategory tgt = wide_subcategory(f.target_fs->base_ptr(), f.target_fs->egressive_class());
  std::vector<Id> mor(src.mor_embed.size());
  for (size_t m = 0; m < src.mor_embed.size(); ++m)
    mor[m] = tgt.mor_restrict[f.fun.mor_map[src.mor_embed[m]]];
  return Functor{src.cat, tgt.cat, f.fun.obj_map, std::move(mor)};
}

Functor ingressive_restriction(const OfsMap& f) {
  Subcategory src = wide_subcategory(f.source_fs->base_ptr(), f.source_fs->ingressive_class());
  Subcategory tgt = wide_subcategory(f.target_fs->base_ptr(), f.target_fs->ingressive_class());
  std::vector<Id> mor(src.mor_embed.size());
  for (size_t m = 0; m < src.mor_embed.size(); ++m)
    mor[m] = tgt.mor_restrict[f.fun.mor_map[src.mor_embed[m]]];
  return Functor{src.cat, tgt.cat, f.fun.obj_map, std::move(mor)};
}

FibReport is_ingressive_cartesian(const OfsMap& f) {
  FibReport report;
  const auto& d = f.source_fs->base();
  const auto& c = f.target_fs->base();
  std::vector<char> cart(d.morphism_count());
  for (Id g = 0; g < d.morphism_count(); ++g) cart[g] = is_cartesian_edge(f.fun, g) ? 1 : 0;

  for (Id g = 0; g < d.morphism_count(); ++g) {
    if (f.source_fs->ingressive(g) && !cart[g])
      report.fail("IngressiveNotCartesian", "morphism " + mor_str(g));
    if (cart[g] && f.target_fs->ingressive(f.fun.mor_map[g]) && !f.source_fs->ingressive(g))
      report.fail("CartesianLiftNotIngressive", "morphism " + mor_str(g));
  }
  for (Id a = 0; a < d.object_count(); ++a)
    for (Id i : c.in(f.fun.obj_map[a])) {
      if (!f.target_fs->ingressive(i)) continue;
      bool found = false;
      for (Id g : d.in(a))
        if (f.fun.mor_map[g] == i && cart[g]) found = true;
      if (!found) report.fail("NoCartesianLift", "object " + mor_str(a) + " along " + mor_str(i));
    }
  return report;
}

FibReport is_curved_orthofibration(const OfsMap& f) {
  FibReport report = is_ingressive_cartesian(f);
  FibReport eg = is_cocartesian_fibration(egressive_restriction(f));
  if (!eg.verdict) {
    report.verdict = false;
    for (auto& w : eg.witnesses) report.witnesses.push_back({"egressive:" + w.code, w.detail});
  }
  return report;
}

FibReport is_opgray(const OfsMap& f) {
  FibReport report = is_ingressive_cartesian(f);
  FibReport eg = is_cartesian_fibration(egressive_restriction(f));
  if (!eg.verdict) {
    report.verdict = false;
    for (auto& w : eg.witnesses) report.witnesses.push_back({"egressive:" + w.code, w.detail});
  }
  return report;
}

// ---------------------------------------------------------------------------
// fibrations of double categories

namespace {

Functor horizontal_functor(const DblFunctor& fun) {
  return Functor{fun.source->hcat_ptr(), fun.target->hcat_ptr(), fun.obj_map, fun.hmor_map};
}

// induced functor on the categories of horizontal n-chains and n x 1 grids
Functor chain_functor(const DblFunctor& fun, const ChainCategory& src, const ChainCategory& tgt,
                      int n) {
  std::map<std::vector<Id>, Id> tgt_obj, tgt_mor;
  for (Id k = 0; k < static_cast<Id>(tgt.chain_of_obj.size()); ++k)
    tgt_obj[tgt.chain_of_obj[k]] = k;
  for (Id k = 0; k < static_cast<Id>(tgt.grid_of_mor.size()); ++k)
    tgt_mor[tgt.grid_of_mor[k]] = k;
  std::vector<Id> obj(src.chain_of_obj.size()), mor(src.grid_of_mor.size());
  for (size_t k = 0; k < src.chain_of_obj.size(); ++k) {
    std::vector<Id> image;
    for (Id h : src.chain_of_obj[k])
      image.push_back(n == 0 ? fun.obj_map[h] : fun.hmor_map[h]);
    obj[k] = tgt_obj.at(image);
  }
  for (size_t k = 0; k < src.grid_of_mor.size(); ++k) {
    std::vector<Id> image;
    for (Id s : src.grid_of_mor[k]) image.push_back(n == 0 ? fun.vmor_map[s] : fun.sq_map[s]);
    mor[k] = tgt_mor.at(image);
  }
  return Functor{src.cat, tgt.cat, std::move(obj), std::move(mor)};
}

}  // namespace

FibReport is_cocart_right(const DblFunctor& fun, Budget& budget) {
  FibReport report;
  FibReport horizontal = is_cocartesian_fibration(horizontal_functor(fun));
  if (!horizontal.verdict) {
    report.verdict = false;
    for (auto& w : horizontal.witnesses)
      report.witnesses.push_back({"horizontal:" + w.code, w.detail});
  }
  for (int n = 0; n <= 2; ++n) {
    ChainCategory src = chain_category(fun.source, n, budget);
    ChainCategory tgt = chain_category(fun.target, n, budget);
    FibReport vertical = is_right_fibration(chain_functor(fun, src, tgt, n));
    if (!vertical.verdict) {
      report.verdict = false;
      for (auto& w : vertical.witnesses)
        report.witnesses.push_back({"chains(" + std::to_string(n) + "):" + w.code, w.detail});
    }
  }
  return report;
}

FibReport is_cart_right(const DblFunctor& fun, Budget& budget) {
  FibReport report;
  FibReport horizontal = is_cartesian_fibration(horizontal_functor(fun));
  if (!horizontal.verdict) {
    report.verdict = false;
    for (auto& w : horizontal.witnesses)
      report.witnesses.push_back({"horizontal:" + w.code, w.detail});
  }
  for (int n = 0; n <= 2; ++n) {
    ChainCategory src = chain_category(fun.source, n, budget);
    ChainCategory tgt = chain_category(fun.target, n, budget);
    FibReport vertical = is_right_fibration(chain_functor(fun, src, tgt, n));
    if (!vertical.verdict) {
      report.verdict = false;
      for (auto& w : vertical.witnesses)
        report.witnesses.push_back({"chains(" + std::to_string(n) + "):" + w.code, w.detail});
    }
  }
  return report;
}

DblFunctor fullop_functor(const DblFunctor& fun) {
  // fullop keeps every id in place, so the maps carry over verbatim
  return DblFunctor{fullop(fun.source), fullop(fun.target), fun.obj_map, fun.hmor_map,
                    fun.vmor_map, fun.sq_map};
}

FibReport is_left_cart(const DblFunctor& fun, Budget& budget) {
  return is_cocart_right(fullop_functor(fun), budget);
}

Report compare_fibrations(const OfsMap& f, Budget& budget) {
  Report report;
  report.subject = "fibration comparison";
  DclrDouble src = dclr(f.source_fs);
  DclrDouble tgt = dclr(f.target_fs);
  DblFunctor lifted = dclr_map(f, src, tgt);

  bool curved = is_curved_orthofibration(f).verdict;
  bool cocart_right = is_cocart_right(lifted, budget).verdict;
  if (curved != cocart_right)
    report.add("Disagreement", "curved orthofibration = " + std::to_string(curved) +
                                   " but (cocart,right) = " + std::to_string(cocart_right));

  bool opgray = is_opgray(f).verdict;
  bool cart_right = is_cart_right(lifted, budget).verdict;
  if (opgray != cart_right)
    report.add("Disagreement", "op-Gray = " + std::to_string(opgray) + " but (cart,right) = " +
                                   std::to_string(cart_right));

  bool ing_cart = is_ingressive_cartesian(f).verdict;
  bool in_right = is_right_fibration(ingressive_restriction(f)).verdict;
  if (ing_cart != in_right)
    report.add("Disagreement", "ingressive cartesian = " + std::to_string(ing_cart) +
                                   " but ingressive right fibration = " + std::to_string(in_right));
  return report;
}

Report source_lemma_check(const DblFunctor& fun, Budget& budget) {
  Report report;
  report.subject = "source lemma";
  ChainCategory src0 = chain_category(fun.source, 0, budget);
  ChainCategory tgt0 = chain_category(fun.target, 0, budget);
  if (!is_right_fibration(chain_functor(fun, src0, tgt0, 0)).verdict ||
      !is_factorization_double(*fun.target).verdict) {
    report.add("PreconditionNotMet",
               "needs F(0,-) a right fibration into a factorization double category");
    return report;
  }
  bool chains_right = true;
  for (int n = 1; n <= 2; ++n) {
    ChainCategory src = chain_category(fun.source, n, budget);
    ChainCategory tgt = chain_category(fun.target, n, budget);
    if (!is_right_fibration(chain_functor(fun, src, tgt, n)).verdict) chains_right = false;
  }
  bool source_fact = is_factorization_double(*fun.source).verdict;
  if (chains_right != source_fact)
    report.add("Disagreement", "chain right fibrations = " + std::to_string(chains_right) +
                                   " but factorization source = " + std::to_string(source_fact));
  return report;
}

// ---------------------------------------------------------------------------
// indexings

Report check_indexing(const DblIndexing& x) {
  Report report;
  report.subject = "indexing";
  const DoubleCategory& b = *x.base;
  if (static_cast<int>(x.fibers.size()) != b.object_count() ||
      static_cast<int>(x.hmor_functors.size()) != b.hmor_count() ||
      static_cast<int>(x.vmor_functors.size()) != b.vmor_count() ||
      static_cast<int>(x.square_trans.size()) != b.square_count()) {
    report.add("DanglingId", "component tables have wrong sizes");
    return report;
  }

  for (Id h = 0; h < b.hmor_count(); ++h) {
    const Functor& fun = x.hmor_functors[h];
    if (fun.source.get() != x.fibers[b.hsrc(h)].get() ||
        fun.target.get() != x.fibers[b.htgt(h)].get()) {
      report.add("EndpointMismatch", "functor of hmor " + mor_str(h));
      return report;
    }
    Report ok = check_functor(fun);
    if (!ok.ok()) report.add("InvalidFunctor", "hmor " + mor_str(h) + ": " + ok.summary());
  }
  for (Id v = 0; v < b.vmor_count(); ++v) {
    const Functor& fun = x.vmor_functors[v];
    if (fun.source.get() != x.fibers[b.vtgt(v)].get() ||
        fun.target.get() != x.fibers[b.vsrc(v)].get()) {
      report.add("EndpointMismatch", "functor of vmor " + mor_str(v));
      return report;
    }
    Report ok = check_functor(fun);
    if (!ok.ok()) report.add("InvalidFunctor", "vmor " + mor_str(v) + ": " + ok.summary());
  }
  if (!report.ok()) return report;

  auto is_identity_functor = [](const Functor& fun) {
    for (size_t k = 0; k < fun.obj_map.size(); ++k)
      if (fun.obj_map[k] != static_cast<Id>(k)) return false;
    for (size_t k = 0; k < fun.mor_map.size(); ++k)
      if (fun.mor_map[k] != static_cast<Id>(k)) return false;
    return true;
  };
  for (Id c = 0; c < b.object_count(); ++c) {
    if (!is_identity_functor(x.hmor_functors[b.h_identity(c)]))
      report.add("IdentityNotPreserved", "h identity of object " + mor_str(c));
    if (!is_identity_functor(x.vmor_functors[b.v_identity(c)]))
      report.add("IdentityNotPreserved", "v identity of object " + mor_str(c));
  }
  for (Id g = 0; g < b.hmor_count(); ++g)
    for (Id f = 0; f < b.hmor_count(); ++f) {
      if (!b.hcat().composable(g, f)) continue;
      Functor composite = compose_functors(x.hmor_functors[g], x.hmor_functors[f]);
      const Functor& table = x.hmor_functors[b.hcomp_h(g, f)];
      if (composite.obj_map != table.obj_map || composite.mor_map != table.mor_map)
        report.add("CompositionNotPreserved", "hmors (" + mor_str(g) + "," + mor_str(f) + ")");
    }
  for (Id g = 0; g < b.vmor_count(); ++g)
    for (Id f = 0; f < b.vmor_count(); ++f) {
      if (!b.vcat().composable(g, f)) continue;
      Functor composite = compose_functors(x.vmor_functors[f], x.vmor_functors[g]);
      const Functor& table = x.vmor_functors[b.vcomp_v(g, f)];
      if (composite.obj_map != table.obj_map || composite.mor_map != table.mor_map)
        report.add("CompositionNotPreserved", "vmors (" + mor_str(g) + "," + mor_str(f) + ")");
    }
  if (!report.ok()) return report;

  // square transformations: typing, naturality, identity normalization
  auto composite_source = [&](Id s) {
    return compose_functors(x.hmor_functors[b.top(s)], x.vmor_functors[b.left(s)]);
  };
  auto composite_target = [&](Id s) {
    return compose_functors(x.vmor_functors[b.right(s)], x.hmor_functors[b.bottom(s)]);
  };
  for (Id s = 0; s < b.square_count(); ++s) {
    const FinCategory& domain = *x.fibers[b.vtgt(b.left(s))];
    const FinCategory& codomain = *x.fibers[b.htgt(b.top(s))];
    Functor lhs = composite_source(s);
    Functor rhs = composite_target(s);
    if (static_cast<int>(x.square_trans[s].size()) != domain.object_count()) {
      report.add("DanglingId", "component table of square " + mor_str(s));
      continue;
    }
    NatTrans eta{lhs, rhs, x.square_trans[s]};
    Report ok = check_nat_trans(eta);
    if (!ok.ok()) {
      report.add("ComponentMismatch", "square " + mor_str(s) + ": " + ok.summary());
      continue;
    }
    (void)codomain;
  }
  if (!report.ok()) return report;

  for (Id h = 0; h < b.hmor_count(); ++h) {
    Id s = b.vid_square(h);
    const FinCategory& domain = *x.fibers[b.hsrc(h)];
    for (Id a = 0; a < domain.object_count(); ++a)
      if (x.square_trans[s][a] !=
          x.fibers[b.htgt(h)]->identity(x.hmor_functors[h].obj_map[a]))
        report.add("IdentityNotPreserved", "transformation of vid square of hmor " + mor_str(h));
  }
  for (Id v = 0; v < b.vmor_count(); ++v) {
    Id s = b.hid_square(v);
    const FinCategory& domain = *x.fibers[b.vtgt(v)];
    for (Id a = 0; a < domain.object_count(); ++a)
      if (x.square_trans[s][a] !=
          x.fibers[b.vsrc(v)]->identity(x.vmor_functors[v].obj_map[a]))
        report.add("IdentityNotPreserved", "transformation of hid square of vmor " + mor_str(v));
  }

  // pasting compatibility with both square compositions
  for (Id s2 = 0; s2 < b.square_count(); ++s2)
    for (Id s1 = 0; s1 < b.square_count(); ++s1) {
      if (b.hcomposable_sq(s2, s1)) {
        Id s = b.hcomp_sq(s2, s1);
        const FinCategory& domain = *x.fibers[b.vtgt(b.left(s1))];
        const FinCategory& fiber = *x.fibers[b.htgt(b.top(s2))];
        const Functor& bottom1 = x.hmor_functors[b.bottom(s1)];
        const Functor& top2 = x.hmor_functors[b.top(s2)];
        for (Id a = 0; a < domain.object_count(); ++a) {
          Id expected = fiber.compose(x.square_trans[s2][bottom1.obj_map[a]],
                                      top2.mor_map[x.square_trans[s1][a]]);
          if (x.square_trans[s][a] != expected) {
            report.add("PastingFailure", "hcomp of squares (" + mor_str(s2) + "," + mor_str(s1) +
                                             ") at fiber object " + mor_str(a));
            break;
          }
        }
      }
      if (b.vcomposable_sq(s2, s1)) {
        Id s = b.vcomp_sq(s2, s1);
        const FinCategory& domain = *x.fibers[b.vtgt(b.left(s2))];
        const FinCategory& fiber = *x.fibers[b.htgt(b.top(s1))];
        const Functor& left2 = x.vmor_functors[b.left(s2)];
        const Functor& right1 = x.vmor_functors[b.right(s1)];
        for (Id a = 0; a < domain.object_count(); ++a) {
          Id expected = fiber.compose(right1.mor_map[x.square_trans[s2][a]],
                                      x.square_trans[s1][left2.obj_map[a]]);
          if (x.square_trans[s][a] != expected) {
            report.add("PastingFailure", "vcomp of squares (" + mor_str(s2) + "," + mor_str(s1) +
                                             ") at fiber object " + mor_str(a));
            break;
          }
        }
      }
    }
  return report;
}

// ---------------------------------------------------------------------------
// unstraightening

Unstraightened unstraighten(const DblIndexing& x) {
  {
    Report pre = check_indexing(x);
    if (!pre.ok()) throw ValidationError(std::move(pre));
  }
  const DoubleCategory& b = *x.base;
  Unstraightened out;

  RawDouble raw;
  std::map<std::pair<Id, Id>, Id> obj_index;
  for (Id c = 0; c < b.object_count(); ++c)
    for (Id a = 0; a < x.fibers[c]->object_count(); ++a) {
      obj_index[{c, a}] = static_cast<Id>(raw.objects.size());
      raw.objects.push_back(b.hcat().object_name(c) + "." + x.fibers[c]->object_name(a));
      out.obj_decode.push_back({c, a});
    }

  std::map<std::array<Id, 3>, Id> hmor_index;
  for (Id h = 0; h < b.hmor_count(); ++h) {
    const FinCategory& tgt_fiber = *x.fibers[b.htgt(h)];
    for (Id a = 0; a < x.fibers[b.hsrc(h)]->object_count(); ++a) {
      Id ta = x.hmor_functors[h].obj_map[a];
      for (Id phi = 0; phi < tgt_fiber.morphism_count(); ++phi) {
        if (tgt_fiber.src(phi) != ta) continue;
        hmor_index[{h, a, phi}] = static_cast<Id>(raw.hmors.size());
        raw.hmors.push_back({"", obj_index.at({b.hsrc(h), a}),
                             obj_index.at({b.htgt(h), tgt_fiber.tgt(phi)})});
        out.hmor_decode.push_back({h, a, phi});
      }
    }
  }

  std::map<std::pair<Id, Id>, Id> vmor_index;
  for (Id v = 0; v < b.vmor_count(); ++v)
    for (Id a2 = 0; a2 < x.fibers[b.vtgt(v)]->object_count(); ++a2) {
      Id a1 = x.vmor_functors[v].obj_map[a2];
      vmor_index[{v, a2}] = static_cast<Id>(raw.vmors.size());
      raw.vmors.push_back(
          {"", obj_index.at({b.vsrc(v), a1}), obj_index.at({b.vtgt(v), a2})});
      out.vmor_decode.push_back({v, a2});
    }

  for (const auto& [key, idx] : obj_index) {
    (void)idx;
  }
  for (Id o = 0; o < static_cast<Id>(out.obj_decode.size()); ++o) {
    auto [c, a] = out.obj_decode[o];
    raw.h_identities.push_back(hmor_index.at({b.h_identity(c), a, x.fibers[c]->identity(a)}));
    raw.v_identities.push_back(vmor_index.at({b.v_identity(c), a}));
  }

  // squares over sigma are determined by the bottom edge lift
  std::map<std::array<Id, 3>, Id> sq_index;
  auto top_of = [&](Id sigma, Id a2, Id phi_b) {
    // apex object of the left edge, then the pasted top component
    Id ax = x.vmor_functors[b.left(sigma)].obj_map[a2];
    const FinCategory& fiber_y = *x.fibers[b.htgt(b.top(sigma))];
    Id phi_t = fiber_y.compose(x.vmor_functors[b.right(sigma)].mor_map[phi_b],
                               x.square_trans[sigma][a2]);
    return std::array<Id, 3>{b.top(sigma), ax, phi_t};
  };
  for (Id sigma = 0; sigma < b.square_count(); ++sigma) {
    const FinCategory& fiber_yp = *x.fibers[b.htgt(b.bottom(sigma))];
    for (Id a2 = 0; a2 < x.fibers[b.vtgt(b.left(sigma))]->object_count(); ++a2) {
      Id ba = x.hmor_functors[b.bottom(sigma)].obj_map[a2];
      for (Id phi_b = 0; phi_b < fiber_yp.morphism_count(); ++phi_b) {
        if (fiber_yp.src(phi_b) != ba) continue;
        auto top = top_of(sigma, a2, phi_b);
        Id top_h = hmor_index.at(top);
        Id bottom_h = hmor_index.at({b.bottom(sigma), a2, phi_b});
        Id left_v = vmor_index.at({b.left(sigma), a2});
        Id right_v = vmor_index.at({b.right(sigma), fiber_yp.tgt(phi_b)});
        sq_index[{sigma, a2, phi_b}] = static_cast<Id>(raw.squares.size());
        raw.squares.push_back({"", top_h, bottom_h, left_v, right_v});
        out.sq_decode.push_back({sigma, a2, phi_b});
      }
    }
  }

  for (Id k = 0; k < static_cast<Id>(out.hmor_decode.size()); ++k) {
    auto [h, a, phi] = out.hmor_decode[k];
    // vertically trivial square on (h, a, phi): bottom-left object is a
    raw.vid_squares.push_back(sq_index.at({b.vid_square(h), a, phi}));
  }
  for (Id k = 0; k < static_cast<Id>(out.vmor_decode.size()); ++k) {
    auto [v, a2] = out.vmor_decode[k];
    raw.hid_squares.push_back(
        sq_index.at({b.hid_square(v), a2, x.fibers[b.vtgt(v)]->identity(a2)}));
  }

  // compositions
  for (Id k2 = 0; k2 < static_cast<Id>(out.hmor_decode.size()); ++k2)
    for (Id k1 = 0; k1 < static_cast<Id>(out.hmor_decode.size()); ++k1) {
      auto [h2, a2, phi2] = out.hmor_decode[k2];
      auto [h1, a1, phi1] = out.hmor_decode[k1];
      if (!b.hcat().composable(h2, h1)) continue;
      const FinCategory& f1 = *x.fibers[b.htgt(h1)];
      if (a2 != f1.tgt(phi1)) continue;
      const FinCategory& f2 = *x.fibers[b.htgt(h2)];
      Id phi = f2.compose(phi2, x.hmor_functors[h2].mor_map[phi1]);
      raw.hcomp_hmors.push_back({k2, k1, hmor_index.at({b.hcomp_h(h2, h1), a1, phi})});
    }
  for (Id k2 = 0; k2 < static_cast<Id>(out.vmor_decode.size()); ++k2)
    for (Id k1 = 0; k1 < static_cast<Id>(out.vmor_decode.size()); ++k1) {
      auto [v2, a2] = out.vmor_decode[k2];
      auto [v1, a1] = out.vmor_decode[k1];
      if (!b.vcat().composable(v2, v1)) continue;
      if (x.vmor_functors[v2].obj_map[a2] != a1) continue;
      raw.vcomp_vmors.push_back({k2, k1, vmor_index.at({b.vcomp_v(v2, v1), a2})});
    }
  for (Id k2 = 0; k2 < static_cast<Id>(out.sq_decode.size()); ++k2)
    for (Id k1 = 0; k1 < static_cast<Id>(out.sq_decode.size()); ++k1) {
      auto [s2, a2, phi2] = out.sq_decode[k2];
      auto [s1, a1, phi1] = out.sq_decode[k1];
      if (b.hcomposable_sq(s2, s1)) {
        const FinCategory& f1 = *x.fibers[b.htgt(b.bottom(s1))];
        if (a2 == f1.tgt(phi1)) {
          const FinCategory& f2 = *x.fibers[b.htgt(b.bottom(s2))];
          Id phi = f2.compose(phi2, x.hmor_functors[b.bottom(s2)].mor_map[phi1]);
          raw.hcomp_squares.push_back({k2, k1, sq_index.at({b.hcomp_sq(s2, s1), a1, phi})});
        }
      }
      if (b.vcomposable_sq(s2, s1)) {
        // the top lift of the lower square must equal the bottom lift of the
        // upper one
        auto top2 = top_of(s2, a2, phi2);
        if (top2 == std::array<Id, 3>{b.bottom(s1), a1, phi1})
          raw.vcomp_squares.push_back({k2, k1, sq_index.at({b.vcomp_sq(s2, s1), a2, phi2})});
      }
    }

  out.total = validate_double(raw);

  std::vector<Id> proj_obj(out.obj_decode.size()), proj_h(out.hmor_decode.size()),
      proj_v(out.vmor_decode.size()), proj_s(out.sq_decode.size());
  for (size_t k = 0; k < out.obj_decode.size(); ++k) proj_obj[k] = out.obj_decode[k].first;
  for (size_t k = 0; k < out.hmor_decode.size(); ++k) proj_h[k] = out.hmor_decode[k][0];
  for (size_t k = 0; k < out.vmor_decode.size(); ++k) proj_v[k] = out.vmor_decode[k].first;
  for (size_t k = 0; k < out.sq_decode.size(); ++k) proj_s[k] = out.sq_decode[k][0];
  out.projection = make_dbl_functor(out.total, x.base, std::move(proj_obj), std::move(proj_h),
                                    std::move(proj_v), std::move(proj_s));
  return out;
}

// ---------------------------------------------------------------------------
// straightening

namespace {

struct StraightenData {
  DblIndexing x;
  std::vector<std::vector<Id>> fiber_objects;  // base object -> list of source objects
  std::vector<std::vector<Id>> fiber_mors;     // base object -> list of source hmors
  std::vector<std::vector<Id>> chosen_lift;    // base hmor -> per fiber object, source hmor
};

StraightenData straighten_full(const DblFunctor& fun, Budget& budget) {
  {
    FibReport pre = is_cocart_right(fun, budget);
    if (!pre.verdict) {
      Report report;
      report.subject = "straighten";
      report.add("NotCocartRight", pre.witnesses.empty() ? "" : pre.witnesses[0].detail);
      throw ValidationError(std::move(report));
    }
  }
  const DoubleCategory& d = *fun.source;
  const DoubleCategory& c = *fun.target;
  Functor hor = horizontal_functor(fun);

  StraightenData out;
  out.x.base = fun.target;
  out.fiber_objects.resize(c.object_count());
  out.fiber_mors.resize(c.object_count());

  std::vector<Id> obj_pos(d.object_count(), kNone), mor_pos(d.hmor_count(), kNone);
  for (Id cc = 0; cc < c.object_count(); ++cc) {
    RawCategory raw;
    for (Id a = 0; a < d.object_count(); ++a)
      if (fun.obj_map[a] == cc) {
        obj_pos[a] = static_cast<Id>(raw.objects.size());
        raw.objects.push_back(d.hcat().object_name(a));
        out.fiber_objects[cc].push_back(a);
      }
    for (Id g = 0; g < d.hmor_count(); ++g)
      if (fun.hmor_map[g] == c.h_identity(cc)) {
        mor_pos[g] = static_cast<Id>(raw.morphisms.size());
        raw.morphisms.push_back(
            {d.hcat().morphism_name(g), obj_pos[d.hsrc(g)], obj_pos[d.htgt(g)]});
        out.fiber_mors[cc].push_back(g);
      }
    for (Id a : out.fiber_objects[cc]) raw.identities.push_back(mor_pos[d.h_identity(a)]);
    for (Id g2 : out.fiber_mors[cc])
      for (Id g1 : out.fiber_mors[cc])
        if (d.hcat().composable(g2, g1))
          raw.composition.push_back({mor_pos[g2], mor_pos[g1], mor_pos[d.hcomp_h(g2, g1)]});
    out.x.fibers.push_back(validate_category(raw));
  }

  // covariant transports along chosen least cocartesian lifts
  out.chosen_lift.assign(c.hmor_count(), {});
  for (Id h = 0; h < c.hmor_count(); ++h) {
    const Id hs = c.hsrc(h), ht = c.htgt(h);
    std::vector<Id> lift(out.fiber_objects[hs].size(), kNone);
    for (size_t k = 0; k < out.fiber_objects[hs].size(); ++k) {
      Id a = out.fiber_objects[hs][k];
      for (Id g : d.hcat().out(a)) {
        budget.charge();
        if (fun.hmor_map[g] == h && is_cocartesian_edge(hor, g)) {
          lift[k] = g;
          break;
        }
      }
    }
    out.chosen_lift[h] = lift;

    std::vector<Id> obj_map(out.fiber_objects[hs].size());
    for (size_t k = 0; k < lift.size(); ++k) obj_map[k] = obj_pos[d.htgt(lift[k])];
    std::vector<Id> mor_map(out.fiber_mors[hs].size(), kNone);
    for (size_t k = 0; k < out.fiber_mors[hs].size(); ++k) {
      Id mu = out.fiber_mors[hs][k];
      Id ga = lift[obj_pos[d.hsrc(mu)]];
      Id gb = lift[obj_pos[d.htgt(mu)]];
      Id rhs = d.hcomp_h(gb, mu);
      for (Id l : d.hcat().hom(d.htgt(ga), d.htgt(gb))) {
        budget.charge();
        if (fun.hmor_map[l] == c.h_identity(ht) && d.hcomp_h(l, ga) == rhs) {
          mor_map[k] = mor_pos[l];
          break;
        }
      }
    }
    out.x.hmor_functors.push_back(
        Functor{out.x.fibers[hs], out.x.fibers[ht], std::move(obj_map), std::move(mor_map)});
  }

  // contravariant transports along the strictly unique vertical lifts
  std::map<std::pair<Id, Id>, Id> vlift;  // (base vmor, source object over its target) -> vmor
  for (Id w = 0; w < d.vmor_count(); ++w) vlift[{fun.vmor_map[w], d.vtgt(w)}] = w;
  std::map<std::pair<Id, Id>, Id> sq_over_bottom;  // (base square, bottom hmor) -> square
  for (Id s = 0; s < d.square_count(); ++s) sq_over_bottom[{fun.sq_map[s], d.bottom(s)}] = s;

  for (Id v = 0; v < c.vmor_count(); ++v) {
    const Id vs = c.vsrc(v), vt = c.vtgt(v);
    std::vector<Id> obj_map(out.fiber_objects[vt].size());
    for (size_t k = 0; k < out.fiber_objects[vt].size(); ++k)
      obj_map[k] = obj_pos[d.vsrc(vlift.at({v, out.fiber_objects[vt][k]}))];
    std::vector<Id> mor_map(out.fiber_mors[vt].size());
    for (size_t k = 0; k < out.fiber_mors[vt].size(); ++k) {
      Id mu = out.fiber_mors[vt][k];
      Id s = sq_over_bottom.at({c.hid_square(v), mu});
      mor_map[k] = mor_pos[d.top(s)];
    }
    out.x.vmor_functors.push_back(
        Functor{out.x.fibers[vt], out.x.fibers[vs], std::move(obj_map), std::move(mor_map)});
  }

  // square transformations from the unique fillers
  for (Id sigma = 0; sigma < c.square_count(); ++sigma) {
    const Id xp = c.vtgt(c.left(sigma));
    const Id y = c.htgt(c.top(sigma));
    std::vector<Id> components(out.fiber_objects[xp].size());
    for (size_t k = 0; k < out.fiber_objects[xp].size(); ++k) {
      Id da = out.fiber_objects[xp][k];
      Id g2 = out.chosen_lift[c.bottom(sigma)][obj_pos[da]];
      Id s = sq_over_bottom.at({sigma, g2});
      Id t = d.top(s);
      Id b1 = d.hsrc(t);
      Id g1 = out.chosen_lift[c.top(sigma)][obj_pos[b1]];
      Id component = kNone;
      for (Id l : d.hcat().hom(d.htgt(g1), d.htgt(t))) {
        budget.charge();
        if (fun.hmor_map[l] == c.h_identity(y) && d.hcomp_h(l, g1) == t) {
          component = mor_pos[l];
          break;
        }
      }
      components[k] = component;
    }
    out.x.square_trans.push_back(std::move(components));
  }

  Report post = check_indexing(out.x);
  if (!post.ok()) {
    Report wrapped;
    wrapped.subject = "straighten";
    wrapped.add("StraighteningNotStrict", post.summary());
    throw ValidationError(std::move(wrapped));
  }
  return out;
}

}  // namespace

DblIndexing straighten(const DblFunctor& fun, Budget& budget) {
  return straighten_full(fun, budget).x;
}

// ---------------------------------------------------------------------------
// round trips

Report straighten_roundtrip(const DblIndexing& x, Budget& budget) {
  Report report;
  report.subject = "straighten after unstraighten";
  Unstraightened total = unstraighten(x);
  StraightenData again = straighten_full(total.projection, budget);
  const DoubleCategory& b = *x.base;

  // fiberwise comparison functors: a -> (c, a)
  std::vector<Functor> iota;
  for (Id c = 0; c < b.object_count(); ++c) {
    const FinCategory& fiber = *x.fibers[c];
    std::vector<Id> obj_map(fiber.object_count(), kNone), mor_map(fiber.morphism_count(), kNone);
    for (size_t k = 0; k < again.fiber_objects[c].size(); ++k) {
      auto [cc, a] = total.obj_decode[again.fiber_objects[c][k]];
      (void)cc;
      obj_map[a] = static_cast<Id>(k);
    }
    for (size_t k = 0; k < again.fiber_mors[c].size(); ++k) {
      auto [h, a, phi] = total.hmor_decode[again.fiber_mors[c][k]];
      (void)h;
      (void)a;
      mor_map[phi] = static_cast<Id>(k);
    }
    Functor fun{x.fibers[c], again.x.fibers[c], std::move(obj_map), std::move(mor_map)};
    Report ok = check_functor(fun);
    if (!ok.ok() || !is_equivalence(fun).verdict ||
        again.x.fibers[c]->morphism_count() != fiber.morphism_count())
      report.add("Mismatch", "fiber over " + std::to_string(c) + " does not match");
    iota.push_back(std::move(fun));
  }
  if (!report.ok()) return report;

  for (Id h = 0; h < b.hmor_count(); ++h) {
    Functor lhs = compose_functors(again.x.hmor_functors[h], iota[b.hsrc(h)]);
    Functor rhs = compose_functors(iota[b.htgt(h)], x.hmor_functors[h]);
    if (lhs.obj_map != rhs.obj_map || lhs.mor_map != rhs.mor_map)
      report.add("Mismatch", "transport along hmor " + std::to_string(h) +
                                 " differs from the original up to the fiber identification");
  }
  for (Id v = 0; v < b.vmor_count(); ++v) {
    Functor lhs = compose_functors(again.x.vmor_functors[v], iota[b.vtgt(v)]);
    Functor rhs = compose_functors(iota[b.vsrc(v)], x.vmor_functors[v]);
    if (lhs.obj_map != rhs.obj_map || lhs.mor_map != rhs.mor_map)
      report.add("Mismatch", "transport along vmor " + std::to_string(v) + " differs");
  }
  for (Id s = 0; s < b.square_count(); ++s) {
    const FinCategory& domain = *x.fibers[b.vtgt(b.left(s))];
    for (Id a = 0; a < domain.object_count(); ++a) {
      Id expected = iota[b.htgt(b.top(s))].mor_map[x.square_trans[s][a]];
      Id actual = again.x.square_trans[s][iota[b.vtgt(b.left(s))].obj_map[a]];
      if (expected != actual) {
        report.add("Mismatch", "transformation of square " + std::to_string(s) + " differs");
        break;
      }
    }
  }
  return report;
}

Report unstraighten_roundtrip(const DblFunctor& fun, Budget& budget) {
  Report report;
  report.subject = "unstraighten after straighten";
  StraightenData data = straighten_full(fun, budget);
  Unstraightened total = unstraighten(data.x);
  const DoubleCategory& d = *fun.source;
  const DoubleCategory& c = *fun.target;

  std::vector<Id> obj_pos(d.object_count(), kNone), mor_pos(d.hmor_count(), kNone);
  for (Id cc = 0; cc < c.object_count(); ++cc) {
    for (size_t k = 0; k < data.fiber_objects[cc].size(); ++k)
      obj_pos[data.fiber_objects[cc][k]] = static_cast<Id>(k);
    for (size_t k = 0; k < data.fiber_mors[cc].size(); ++k)
      mor_pos[data.fiber_mors[cc][k]] = static_cast<Id>(k);
  }
  std::map<std::pair<Id, Id>, Id> vlift;
  for (Id w = 0; w < d.vmor_count(); ++w) vlift[{fun.vmor_map[w], d.vtgt(w)}] = w;
  std::map<std::pair<Id, Id>, Id> sq_over_bottom;
  for (Id s = 0; s < d.square_count(); ++s) sq_over_bottom[{fun.sq_map[s], d.bottom(s)}] = s;

  std::vector<Id> obj_map(total.total->object_count());
  for (size_t k = 0; k < total.obj_decode.size(); ++k) {
    auto [cc, a] = total.obj_decode[k];
    obj_map[k] = data.fiber_objects[cc][a];
  }
  std::vector<Id> hmor_map(total.total->hmor_count());
  for (size_t k = 0; k < total.hmor_decode.size(); ++k) {
    auto [h, a, phi] = total.hmor_decode[k];
    Id da = data.fiber_objects[c.hsrc(h)][a];
    Id lift = data.chosen_lift[h][obj_pos[da]];
    Id fiber_mor = data.fiber_mors[c.htgt(h)][phi];
    hmor_map[k] = d.hcomp_h(fiber_mor, lift);
  }
  std::vector<Id> vmor_map(total.total->vmor_count());
  for (size_t k = 0; k < total.vmor_decode.size(); ++k) {
    auto [v, a2] = total.vmor_decode[k];
    vmor_map[k] = vlift.at({v, data.fiber_objects[c.vtgt(v)][a2]});
  }
  std::vector<Id> sq_map(total.total->square_count());
  for (size_t k = 0; k < total.sq_decode.size(); ++k) {
    auto [sigma, a2, phi_b] = total.sq_decode[k];
    // image of the bottom lift, then the unique square over sigma with it
    Id da2 = data.fiber_objects[c.vtgt(c.left(sigma))][a2];
    Id lift = data.chosen_lift[c.bottom(sigma)][obj_pos[da2]];
    Id fiber_mor = data.fiber_mors[c.htgt(c.bottom(sigma))][phi_b];
    Id bottom = d.hcomp_h(fiber_mor, lift);
    auto it = sq_over_bottom.find({sigma, bottom});
    if (it == sq_over_bottom.end()) {
      report.add("Mismatch", "no square over base square " + std::to_string(sigma));
      return report;
    }
    sq_map[k] = it->second;
  }

  DblFunctor iso{total.total, fun.source, std::move(obj_map), std::move(hmor_map),
                 std::move(vmor_map), std::move(sq_map)};
  Report valid = check_dbl_functor(iso);
  if (!valid.ok()) {
    report.add("Mismatch", "comparison is not a double functor: " + valid.summary());
    return report;
  }
  if (!is_dbl_isomorphism(iso)) {
    report.add("Mismatch", "comparison is not bijective");
    return report;
  }
  // the triangle over the base commutes
  DblFunctor around = compose_dbl_functors(fun, iso);
  if (around.obj_map != total.projection.obj_map || around.hmor_map != total.projection.hmor_map ||
      around.vmor_map != total.projection.vmor_map || around.sq_map != total.projection.sq_map)
    report.add("Mismatch", "comparison does not commute with the projections");
  return report;
}

}  // namespace duocat
