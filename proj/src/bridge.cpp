#include "duocat/bridge.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace duocat {

DclrDouble dclr(const OfsPtr& fs) {
  const FinCategory& c = fs->base();
  DclrDouble out;
  out.base = fs;
  out.mor_hmor.assign(c.morphism_count(), kNone);
  out.mor_vmor.assign(c.morphism_count(), kNone);

  RawDouble raw;
  for (Id x = 0; x < c.object_count(); ++x) raw.objects.push_back(c.object_name(x));
  for (Id f = 0; f < c.morphism_count(); ++f) {
    if (fs->egressive(f)) {
      out.mor_hmor[f] = static_cast<Id>(raw.hmors.size());
      raw.hmors.push_back({c.morphism_name(f), c.src(f), c.tgt(f)});
      out.hmor_mor.push_back(f);
    }
    if (fs->ingressive(f)) {
      out.mor_vmor[f] = static_cast<Id>(raw.vmors.size());
      raw.vmors.push_back({c.morphism_name(f), c.src(f), c.tgt(f)});
      out.vmor_mor.push_back(f);
    }
  }
  for (Id x = 0; x < c.object_count(); ++x) {
    raw.h_identities.push_back(out.mor_hmor[c.identity(x)]);
    raw.v_identities.push_back(out.mor_vmor[c.identity(x)]);
  }

  // squares: commuting boundaries comp(right, top) = comp(bottom, left)
  std::map<std::array<Id, 4>, Id> square_index;
  for (Id ht = 0; ht < static_cast<Id>(out.hmor_mor.size()); ++ht)
    for (Id hb = 0; hb < static_cast<Id>(out.hmor_mor.size()); ++hb)
      for (Id vl = 0; vl < static_cast<Id>(out.vmor_mor.size()); ++vl) {
        Id t = out.hmor_mor[ht], b = out.vmor_mor[vl];
        if (c.src(t) != c.src(b)) continue;
        Id bb = out.hmor_mor[hb];
        if (c.src(bb) != c.tgt(b)) continue;
        for (Id vr = 0; vr < static_cast<Id>(out.vmor_mor.size()); ++vr) {
          Id r = out.vmor_mor[vr];
          if (c.src(r) != c.tgt(t) || c.tgt(r) != c.tgt(bb)) continue;
          if (c.compose(r, t) != c.compose(bb, b)) continue;
          square_index[{ht, hb, vl, vr}] = static_cast<Id>(raw.squares.size());
          raw.squares.push_back({"", ht, hb, vl, vr});
        }
      }

  for (Id h = 0; h < static_cast<Id>(out.hmor_mor.size()); ++h) {
    Id src_v = raw.v_identities[c.src(out.hmor_mor[h])];
    Id tgt_v = raw.v_identities[c.tgt(out.hmor_mor[h])];
    raw.vid_squares.push_back(square_index.at({h, h, src_v, tgt_v}));
  }
  for (Id v = 0; v < static_cast<Id>(out.vmor_mor.size()); ++v) {
    Id src_h = raw.h_identities[c.src(out.vmor_mor[v])];
    Id tgt_h = raw.h_identities[c.tgt(out.vmor_mor[v])];
    raw.hid_squares.push_back(square_index.at({src_h, tgt_h, v, v}));
  }

  auto h_base = [&](Id h) { return out.hmor_mor[h]; };
  auto v_base = [&](Id v) { return out.vmor_mor[v]; };
  for (Id g = 0; g < static_cast<Id>(out.hmor_mor.size()); ++g)
    for (Id f = 0; f < static_cast<Id>(out.hmor_mor.size()); ++f)
      if (c.composable(h_base(g), h_base(f)))
        raw.hcomp_hmors.push_back({g, f, out.mor_hmor[c.compose(h_base(g), h_base(f))]});
  for (Id g = 0; g < static_cast<Id>(out.vmor_mor.size()); ++g)
    for (Id f = 0; f < static_cast<Id>(out.vmor_mor.size()); ++f)
      if (c.composable(v_base(g), v_base(f)))
        raw.vcomp_vmors.push_back({g, f, out.mor_vmor[c.compose(v_base(g), v_base(f))]});

  const Id nsq = static_cast<Id>(raw.squares.size());
  for (Id s2 = 0; s2 < nsq; ++s2)
    for (Id s1 = 0; s1 < nsq; ++s1) {
      const auto& a = raw.squares[s1];
      const auto& b2 = raw.squares[s2];
      if (b2.left == a.right) {
        std::array<Id, 4> key{out.mor_hmor[c.compose(h_base(b2.top), h_base(a.top))],
                              out.mor_hmor[c.compose(h_base(b2.bottom), h_base(a.bottom))], a.left,
                              b2.right};
        raw.hcomp_squares.push_back({s2, s1, square_index.at(key)});
      }
      if (b2.top == a.bottom) {
        std::array<Id, 4> key{a.top, b2.bottom,
                              out.mor_vmor[c.compose(v_base(b2.left), v_base(a.left))],
                              out.mor_vmor[c.compose(v_base(b2.right), v_base(a.right))]};
        raw.vcomp_squares.push_back({s2, s1, square_index.at(key)});
      }
    }
  out.dbl = validate_double(raw);
  return out;
}

DblFunctor dclr_map(const OfsMap& f, const DclrDouble& source, const DclrDouble& target) {
  EdgeMaps edges;
  edges.obj_map = f.fun.obj_map;
  edges.hmor_map.resize(source.hmor_mor.size());
  edges.vmor_map.resize(source.vmor_mor.size());
  for (size_t h = 0; h < source.hmor_mor.size(); ++h)
    edges.hmor_map[h] = target.mor_hmor[f.fun.mor_map[source.hmor_mor[h]]];
  for (size_t v = 0; v < source.vmor_mor.size(); ++v)
    edges.vmor_map[v] = target.mor_vmor[f.fun.mor_map[source.vmor_mor[v]]];
  return complete_dbl_functor(source.dbl, target.dbl, edges);
}

CornersCategory corners(const DblPtr& d) {
  {
    CornerReport fd = is_factorization_double(*d);
    if (!fd.verdict) {
      Report report;
      report.subject = "corners";
      report.add("NotFactorizationDouble", fd.witness);
      throw ValidationError(std::move(report));
    }
  }
  CornersCategory out;
  out.source = d;

  RawCategory raw;
  for (Id x = 0; x < d->object_count(); ++x) raw.objects.push_back(d->hcat().object_name(x));
  for (Id h = 0; h < d->hmor_count(); ++h)
    for (Id v : d->vcat().out(d->htgt(h))) {
      out.mor_of_pair[{h, v}] = static_cast<Id>(raw.morphisms.size());
      raw.morphisms.push_back({"(" + d->hcat().morphism_name(h) + ";" +
                                   d->vcat().morphism_name(v) + ")",
                               d->hsrc(h), d->vtgt(v)});
      out.pair_of_mor.push_back({h, v});
    }
  for (Id x = 0; x < d->object_count(); ++x)
    raw.identities.push_back(out.mor_of_pair.at({d->h_identity(x), d->v_identity(x)}));

  const Id n = static_cast<Id>(out.pair_of_mor.size());
  for (Id b = 0; b < n; ++b)
    for (Id a = 0; a < n; ++a) {
      auto [h1, v1] = out.pair_of_mor[a];
      auto [h2, v2] = out.pair_of_mor[b];
      if (d->hsrc(h2) != d->vtgt(v1)) continue;
      Id s = d->fillers(v1, h2)[0];  // unique by the precondition
      Id h = d->hcomp_h(d->top(s), h1);
      Id v = d->vcomp_v(v2, d->right(s));
      raw.composition.push_back({b, a, out.mor_of_pair.at({h, v})});
    }
  CatPtr cat = validate_category(raw);

  MorClass eg(n, 0), in(n, 0);
  for (Id m = 0; m < n; ++m) {
    auto [h, v] = out.pair_of_mor[m];
    if (d->vcat().is_identity(v)) eg[m] = 1;
    if (d->hcat().is_identity(h)) in[m] = 1;
  }
  out.ofs = std::make_shared<FactorizationSystem>(cat, eg, in);
  return out;
}

Report join_formula_report(const CatPtr& c, const DclrDouble& ar, int max_m, int max_n,
                           Budget& budget) {
  Report report;
  report.subject = "join count law";
  for (int m = 0; m <= max_m; ++m)
    for (int n = 0; n <= max_n; ++n) {
      long long lhs = grid_count(*ar.dbl, m, n, budget);
      long long rhs = nerve_chain_count(*c, n + m + 1);
      if (lhs != rhs)
        report.add("CountMismatch", "grid(" + std::to_string(m) + "," + std::to_string(n) + ") = " +
                                        std::to_string(lhs) + " but chain count is " +
                                        std::to_string(rhs));
    }
  return report;
}

DclrDouble ardc(const CatPtr& c, Budget& budget) {
  DclrDouble out = dclr(arrow_ofs(c).ofs);
  Report join = join_formula_report(c, out, 2, 2, budget);
  if (!join.ok()) throw ValidationError(std::move(join));
  return out;
}

CounitIso counit_iso(const DblPtr& d) {
  CounitIso out;
  out.report.subject = "counit comparison";
  CornersCategory cr = corners(d);
  DclrDouble dc = dclr(cr.ofs);

  EdgeMaps edges;
  edges.obj_map.resize(d->object_count());
  std::iota(edges.obj_map.begin(), edges.obj_map.end(), 0);
  edges.hmor_map.resize(d->hmor_count());
  edges.vmor_map.resize(d->vmor_count());
  for (Id h = 0; h < d->hmor_count(); ++h)
    edges.hmor_map[h] = dc.mor_hmor[cr.mor_of_pair.at({h, d->v_identity(d->htgt(h))})];
  for (Id v = 0; v < d->vmor_count(); ++v)
    edges.vmor_map[v] = dc.mor_vmor[cr.mor_of_pair.at({d->h_identity(d->vsrc(v)), v})];

  try {
    out.comparison = complete_dbl_functor(d, dc.dbl, edges);
  } catch (const ValidationError& err) {
    out.report.add("ComparisonNotBijective", err.report().summary());
    return out;
  }
  if (!is_dbl_isomorphism(out.comparison))
    out.report.add("ComparisonNotBijective", "a layer of the comparison is not a bijection");
  return out;
}

UnitIso unit_iso(const OfsPtr& fs) {
  UnitIso out;
  out.report.subject = "unit comparison";
  const FinCategory& c = fs->base();
  DclrDouble d = dclr(fs);
  CornersCategory cr = corners(d.dbl);
  const FinCategory& pc = cr.ofs->base();

  // projection (e, i) -> compose(i, e)
  std::vector<Id> obj(pc.object_count());
  std::iota(obj.begin(), obj.end(), 0);
  std::vector<Id> mor(pc.morphism_count());
  for (Id m = 0; m < pc.morphism_count(); ++m) {
    auto [h, v] = cr.pair_of_mor[m];
    mor[m] = c.compose(d.vmor_mor[v], d.hmor_mor[h]);
  }
  out.projection = Functor{cr.ofs->base_ptr(), fs->base_ptr(), obj, mor};
  Report functorial = check_functor(out.projection);
  if (!functorial.ok()) {
    out.report.merge(functorial);
    return out;
  }

  // fullness
  std::vector<char> hit(c.morphism_count(), 0);
  for (Id m = 0; m < pc.morphism_count(); ++m) hit[mor[m]] = 1;
  for (Id f = 0; f < c.morphism_count(); ++f)
    if (!hit[f]) out.report.add("NotFull", "morphism " + std::to_string(f) + " not hit");

  // each hom fiber is one orbit under strictly unique connecting isos
  std::vector<std::vector<Id>> fibers(c.morphism_count());
  for (Id m = 0; m < pc.morphism_count(); ++m) fibers[mor[m]].push_back(m);
  auto connecting_isos = [&](Id a, Id b) {
    auto [h1, v1] = cr.pair_of_mor[a];
    auto [h2, v2] = cr.pair_of_mor[b];
    Id e1 = d.hmor_mor[h1], i1 = d.vmor_mor[v1];
    Id e2 = d.hmor_mor[h2], i2 = d.vmor_mor[v2];
    int count = 0;
    for (Id phi : c.hom(c.tgt(e1), c.tgt(e2)))
      if (c.is_iso(phi) && c.compose(phi, e1) == e2 && c.compose(i2, phi) == i1) ++count;
    return count;
  };
  for (Id f = 0; f < c.morphism_count(); ++f) {
    int orbit_breaks = 0;
    for (Id a : fibers[f])
      for (Id b : fibers[f])
        if (connecting_isos(a, b) != 1) ++orbit_breaks;
    if (orbit_breaks > 0)
      out.report.add("FiberNotSingleOrbit",
                     "f=" + std::to_string(f) + " has " + std::to_string(orbit_breaks) +
                         " disconnected or multiply connected corner pairs");
  }
  if (!out.report.ok()) return out;

  // quotient by the fibers; since each fiber is one orbit, morphisms of the
  // quotient biject with morphisms of the base
  out.quotient_trivial = true;
  for (Id f = 0; f < c.morphism_count(); ++f)
    if (fibers[f].size() != 1) out.quotient_trivial = false;

  RawCategory qraw;
  for (Id x = 0; x < pc.object_count(); ++x) qraw.objects.push_back(pc.object_name(x));
  std::vector<Id> orbit_of(pc.morphism_count());  // corner -> quotient morphism id
  std::vector<Id> rep_of;                         // quotient morphism id -> least corner
  std::vector<Id> base_of;                        // quotient morphism id -> base morphism
  for (Id f = 0; f < c.morphism_count(); ++f) {
    if (fibers[f].empty()) continue;
    Id q = static_cast<Id>(qraw.morphisms.size());
    for (Id m : fibers[f]) orbit_of[m] = q;
    rep_of.push_back(fibers[f].front());
    base_of.push_back(f);
    qraw.morphisms.push_back({pc.morphism_name(fibers[f].front()), pc.src(fibers[f].front()),
                              pc.tgt(fibers[f].front())});
  }
  for (Id x = 0; x < pc.object_count(); ++x) qraw.identities.push_back(orbit_of[pc.identity(x)]);
  const Id qn = static_cast<Id>(qraw.morphisms.size());
  for (Id qb = 0; qb < qn; ++qb)
    for (Id qa = 0; qa < qn; ++qa) {
      Id b = rep_of[qb], a = rep_of[qa];
      if (!pc.composable(b, a)) continue;
      qraw.composition.push_back({qb, qa, orbit_of[pc.compose(b, a)]});
    }
  out.quotient = validate_category(qraw);

  std::vector<Id> qobj(out.quotient->object_count());
  std::iota(qobj.begin(), qobj.end(), 0);
  out.quotient_iso = make_functor(out.quotient, fs->base_ptr(), qobj, base_of);
  auto equivalence = is_equivalence(out.quotient_iso);
  bool bijective = out.quotient->morphism_count() == c.morphism_count();
  if (!equivalence.verdict || !bijective)
    out.report.add("ComparisonNotBijective", "quotient comparison: " + equivalence.witness);

  // classes correspond under the quotient
  out.quotient_eg.assign(qn, 0);
  out.quotient_in.assign(qn, 0);
  for (Id m = 0; m < pc.morphism_count(); ++m) {
    if (cr.ofs->egressive(m)) out.quotient_eg[orbit_of[m]] = 1;
    if (cr.ofs->ingressive(m)) out.quotient_in[orbit_of[m]] = 1;
  }
  for (Id q = 0; q < qn; ++q) {
    if (out.quotient_eg[q] != (fs->egressive(base_of[q]) ? 1 : 0))
      out.report.add("ClassViolation", "egressive class mismatch at quotient morphism " +
                                           std::to_string(q));
    if (out.quotient_in[q] != (fs->ingressive(base_of[q]) ? 1 : 0))
      out.report.add("ClassViolation", "ingressive class mismatch at quotient morphism " +
                                           std::to_string(q));
  }
  return out;
}

SegalChainReport segal_chain_check(const DblPtr& d, int n, Budget& budget) {
  SegalChainReport out;
  DclrDouble walking = ardc(poset_category(n), budget);
  out.functor_count =
      static_cast<long long>(enumerate_dbl_functors(walking.dbl, d, budget).size());
  CornersCategory cr = corners(d);
  out.chain_count = nerve_chain_count(cr.ofs->base(), n);
  out.ok = out.functor_count == out.chain_count;
  if (!out.ok)
    out.witness = "CountMismatch: " + std::to_string(out.functor_count) +
                  " double functors vs " + std::to_string(out.chain_count) + " chains";
  return out;
}

Report corner_invertibility_report(const CornersCategory& cr) {
  Report report;
  report.subject = "corner invertibility";
  const FinCategory& pc = cr.ofs->base();
  const DoubleCategory& d = *cr.source;
  for (Id m = 0; m < pc.morphism_count(); ++m) {
    auto [h, v] = cr.pair_of_mor[m];
    bool parts = d.hcat().is_iso(h) && d.vcat().is_iso(v);
    if (pc.is_iso(m) != parts)
      report.add("Mismatch", "corner " + std::to_string(m) + ": invertible=" +
                                 std::to_string(pc.is_iso(m)) + " but components " +
                                 std::to_string(parts));
  }
  return report;
}

}  // namespace duocat
