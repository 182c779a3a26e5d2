#include "duocat/adequate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace duocat {

std::vector<PullbackSquare> pullback_complete(const FinCategory& c, Id f, Id g, Budget& budget) {
  std::vector<PullbackSquare> out;
  const Id x = c.src(f), y = c.src(g);
  for (Id p = 0; p < c.object_count(); ++p)
    for (Id px : c.hom(p, x))
      for (Id py : c.hom(p, y)) {
        budget.charge();
        if (c.compose(f, px) != c.compose(g, py)) continue;
        // universal property against every competing cone
        bool universal = true;
        for (Id q = 0; q < c.object_count() && universal; ++q)
          for (Id qx : c.hom(q, x)) {
            if (!universal) break;
            for (Id qy : c.hom(q, y)) {
              budget.charge();
              if (c.compose(f, qx) != c.compose(g, qy)) continue;
              int mediating = 0;
              for (Id u : c.hom(q, p))
                if (c.compose(px, u) == qx && c.compose(py, u) == qy) ++mediating;
              if (mediating != 1) {
                universal = false;
                break;
              }
            }
          }
        if (universal) out.push_back({p, px, py});
      }
  return out;
}

std::vector<AmbiExtension> ambigressive_extensions(const FinCategory& c, const MorClass& eg,
                                                   const MorClass& in, Id e_leg, Id i_leg) {
  std::vector<AmbiExtension> out;
  const Id x = c.src(e_leg), y = c.src(i_leg);
  for (Id p = 0; p < c.object_count(); ++p)
    for (Id top : c.hom(p, y)) {
      if (!eg[top]) continue;
      for (Id left : c.hom(p, x)) {
        if (!in[left]) continue;
        if (c.compose(i_leg, top) == c.compose(e_leg, left)) out.push_back({p, top, left});
      }
    }
  return out;
}

namespace {

// Connecting isos between two extensions of the same cospan.
int extension_iso_count(const FinCategory& c, const AmbiExtension& a, const AmbiExtension& b) {
  int count = 0;
  for (Id phi : c.hom(a.apex, b.apex))
    if (c.is_iso(phi) && c.compose(b.top, phi) == a.top && c.compose(b.left, phi) == a.left)
      ++count;
  return count;
}

}  // namespace

AdequacyReport is_adequate(const FinCategory& c, const MorClass& eg, const MorClass& in,
                           Budget& budget) {
  AdequacyReport report;
  report.pullback_criterion = true;
  report.extension_criterion = true;
  report.strict_extensions = true;

  for (Id e = 0; e < c.morphism_count(); ++e) {
    if (!eg[e]) continue;
    for (Id i = 0; i < c.morphism_count(); ++i) {
      if (!in[i] || c.tgt(i) != c.tgt(e)) continue;

      // criterion A part 1: the cospan has a pullback
      auto pullbacks = pullback_complete(c, e, i, budget);
      if (pullbacks.empty() && report.pullback_criterion) {
        report.pullback_criterion = false;
        report.witness_pullback =
            "cospan (" + std::to_string(e) + "," + std::to_string(i) + ") has no pullback";
      }

      // criterion B: extensions exist and are uniquely connected
      auto extensions = ambigressive_extensions(c, eg, in, e, i);
      if (extensions.size() != 1) report.strict_extensions = false;
      if (extensions.empty()) {
        if (report.extension_criterion) {
          report.extension_criterion = false;
          report.witness_extension =
              "cospan (" + std::to_string(e) + "," + std::to_string(i) + ") has no extension";
        }
      } else {
        for (const auto& a : extensions)
          for (const auto& b : extensions) {
            budget.charge();
            int isos = extension_iso_count(c, a, b);
            if (isos != 1 && report.extension_criterion) {
              report.extension_criterion = false;
              report.witness_extension = "cospan (" + std::to_string(e) + "," + std::to_string(i) +
                                         ") extensions connected by " + std::to_string(isos) +
                                         " isos";
            }
          }
      }

      // criterion A part 2: every ambigressive square over this cospan is a
      // pullback
      for (const auto& ext : extensions) {
        budget.charge();
        bool found = false;
        for (const auto& pb : pullbacks)
          if (pb.apex == ext.apex && pb.to_x == ext.left && pb.to_y == ext.top) found = true;
        if (!found && report.pullback_criterion) {
          report.pullback_criterion = false;
          report.witness_pullback = "ambigressive square over cospan (" + std::to_string(e) + "," +
                                    std::to_string(i) + ") with apex " + std::to_string(ext.apex) +
                                    " is not a pullback";
        }
      }
    }
  }
  report.agree = report.pullback_criterion == report.extension_criterion;
  return report;
}

AdequacyReport is_adequate(const FactorizationSystem& fs, Budget& budget) {
  return is_adequate(fs.base(), fs.egressive_class(), fs.ingressive_class(), budget);
}

CornerReport is_adequate_double(const DblPtr& d) { return is_factorization_double(*horop(d)); }

SpanCategory span_category(const OfsPtr& fs, Budget& budget) {
  const FinCategory& c = fs->base();
  AdequacyReport adequacy = is_adequate(*fs, budget);
  if (!adequacy.adequate()) {
    Report report;
    report.subject = "span category";
    report.add("NotAdequate", adequacy.witness_pullback + " " + adequacy.witness_extension);
    throw ValidationError(std::move(report));
  }

  SpanCategory out;
  out.input = fs;
  out.strict = adequacy.strict_extensions;

  // all spans, lexicographic in (back, fwd)
  std::vector<std::pair<Id, Id>> spans;
  for (Id b = 0; b < c.morphism_count(); ++b) {
    if (!fs->egressive(b)) continue;
    for (Id f : c.out(c.src(b)))
      if (fs->ingressive(f)) spans.push_back({b, f});
  }
  std::sort(spans.begin(), spans.end());

  // orbit structure under connecting isos; trivial in the strict regime
  std::vector<Id> orbit(spans.size());
  std::iota(orbit.begin(), orbit.end(), 0);
  auto find = [&](Id k) {
    while (orbit[k] != k) k = orbit[k] = orbit[orbit[k]];
    return k;
  };
  if (!out.strict) {
    for (size_t a = 0; a < spans.size(); ++a)
      for (size_t b2 = a + 1; b2 < spans.size(); ++b2) {
        budget.charge();
        const auto& [ba, fa] = spans[a];
        const auto& [bb, fb] = spans[b2];
        if (c.tgt(ba) != c.tgt(bb) || c.tgt(fa) != c.tgt(fb)) continue;
        bool connected = false;
        for (Id phi : c.hom(c.src(ba), c.src(bb)))
          if (c.is_iso(phi) && c.compose(bb, phi) == ba && c.compose(fb, phi) == fa)
            connected = true;
        if (connected) orbit[find(static_cast<Id>(a))] = find(static_cast<Id>(b2));
      }
  }

  std::vector<Id> mor_of_span(spans.size(), kNone);
  RawCategory raw;
  for (Id x = 0; x < c.object_count(); ++x) raw.objects.push_back(c.object_name(x));
  for (size_t k = 0; k < spans.size(); ++k) {
    if (find(static_cast<Id>(k)) != static_cast<Id>(k)) continue;
    mor_of_span[k] = static_cast<Id>(raw.morphisms.size());
    const auto& [b, f] = spans[k];
    raw.morphisms.push_back({"(" + c.morphism_name(b) + "\\" + c.morphism_name(f) + ")",
                             c.tgt(b), c.tgt(f)});
    out.span_of_mor.push_back(spans[k]);
  }
  for (size_t k = 0; k < spans.size(); ++k) mor_of_span[k] = mor_of_span[find(static_cast<Id>(k))];
  auto span_mor = [&](Id back, Id fwd) {
    auto it = std::lower_bound(spans.begin(), spans.end(), std::pair<Id, Id>{back, fwd});
    return mor_of_span[it - spans.begin()];
  };

  for (Id x = 0; x < c.object_count(); ++x)
    raw.identities.push_back(span_mor(c.identity(x), c.identity(x)));

  const Id n = static_cast<Id>(out.span_of_mor.size());
  for (Id qb = 0; qb < n; ++qb)
    for (Id qa = 0; qa < n; ++qa) {
      const auto& [b1, f1] = out.span_of_mor[qa];
      const auto& [b2, f2] = out.span_of_mor[qb];
      if (c.tgt(f1) != c.tgt(b2)) continue;  // composable at the shared object
      budget.charge();
      auto exts = ambigressive_extensions(c, fs->egressive_class(), fs->ingressive_class(), b2, f1);
      const auto& ext = exts.front();  // least extension; unique when strict
      Id back = c.compose(b1, ext.top);
      Id fwd = c.compose(f2, ext.left);
      raw.composition.push_back({qb, qa, span_mor(back, fwd)});
    }

  CatPtr cat = validate_category(raw);
  MorClass eg(n, 0), in(n, 0);
  for (Id m = 0; m < n; ++m) {
    const auto& [b, f] = out.span_of_mor[m];
    if (out.strict ? c.is_identity(f) : c.is_iso(f)) eg[m] = 1;
    if (out.strict ? c.is_identity(b) : c.is_iso(b)) in[m] = 1;
  }
  out.ofs = std::make_shared<FactorizationSystem>(cat, eg, in);
  return out;
}

namespace {

void require_strict(const SpanCategory& sc) {
  if (sc.strict) return;
  Report report;
  report.subject = "span comparison";
  report.add("NonUniquePullback", "input is outside the strict regime");
  throw ValidationError(std::move(report));
}

}  // namespace

Report span_vs_horop(const OfsPtr& fs, Budget& budget) {
  Report report;
  report.subject = "span vs horizontal reversal";
  SpanCategory sc = span_category(fs, budget);
  require_strict(sc);

  DclrDouble d = dclr(fs);
  DblPtr hd = horop(d.dbl);
  CornersCategory crh = corners(hd);

  // spans (b, f) correspond to corners (b as reversed hmor, f as vmor)
  const FinCategory& spc = sc.ofs->base();
  std::vector<Id> obj(spc.object_count());
  std::iota(obj.begin(), obj.end(), 0);
  std::vector<Id> mor(spc.morphism_count());
  std::vector<char> hit(crh.ofs->base().morphism_count(), 0);
  for (Id m = 0; m < spc.morphism_count(); ++m) {
    auto [b, f] = sc.span_of_mor[m];
    auto it = crh.mor_of_pair.find({d.mor_hmor[b], d.mor_vmor[f]});
    if (it == crh.mor_of_pair.end()) {
      report.add("Mismatch", "span " + std::to_string(m) + " has no corner counterpart");
      return report;
    }
    mor[m] = it->second;
    hit[it->second] = 1;
  }
  for (char h : hit)
    if (!h) {
      report.add("Mismatch", "a corner of horop(dclr) is not hit by any span");
      return report;
    }

  Functor comparison{sc.ofs->base_ptr(), crh.ofs->base_ptr(), obj, mor};
  Report functorial = check_functor(comparison);
  if (!functorial.ok()) {
    for (auto& issue : functorial.issues)
      report.add("Mismatch", "pullback composition vs filler composition: " + issue.detail);
    return report;
  }
  for (Id m = 0; m < spc.morphism_count(); ++m) {
    if (sc.ofs->egressive(m) != crh.ofs->egressive(mor[m]) ||
        sc.ofs->ingressive(m) != crh.ofs->ingressive(mor[m]))
      report.add("Mismatch", "class mismatch at span " + std::to_string(m));
  }

  // double-level comparison: dclr(span category) vs horop(dclr)
  DclrDouble dsc = dclr(sc.ofs);
  EdgeMaps edges;
  edges.obj_map = obj;
  edges.hmor_map.resize(dsc.dbl->hmor_count());
  edges.vmor_map.resize(dsc.dbl->vmor_count());
  for (Id h = 0; h < dsc.dbl->hmor_count(); ++h) {
    auto [b, f] = sc.span_of_mor[dsc.hmor_mor[h]];
    (void)f;  // forward leg is an identity for egressive spans
    edges.hmor_map[h] = d.mor_hmor[b];
  }
  for (Id v = 0; v < dsc.dbl->vmor_count(); ++v) {
    auto [b, f] = sc.span_of_mor[dsc.vmor_mor[v]];
    (void)b;
    edges.vmor_map[v] = d.mor_vmor[f];
  }
  try {
    DblFunctor dbl_comparison = complete_dbl_functor(dsc.dbl, hd, edges);
    if (!is_dbl_isomorphism(dbl_comparison))
      report.add("Mismatch", "dclr(span) -> horop(dclr) is not bijective");
  } catch (const ValidationError& err) {
    report.add("Mismatch", "dclr(span) -> horop(dclr): " + err.report().summary());
  }
  return report;
}

Report involution_check(const OfsPtr& fs, Budget& budget) {
  Report report;
  report.subject = "span involution";

  // table-level: reversing the horizontal direction twice is the identity
  DclrDouble d = dclr(fs);
  if (!horop(horop(d.dbl))->same_tables(*d.dbl))
    report.add("Mismatch", "horop applied twice changed the tables");

  SpanCategory sc1 = span_category(fs, budget);
  require_strict(sc1);
  SpanCategory sc2 = span_category(sc1.ofs, budget);
  require_strict(sc2);

  const FinCategory& c = fs->base();
  const FinCategory& c2 = sc2.ofs->base();
  if (c2.morphism_count() != c.morphism_count()) {
    report.add("Mismatch", "span applied twice has " + std::to_string(c2.morphism_count()) +
                               " morphisms, expected " + std::to_string(c.morphism_count()));
    return report;
  }

  // a double span (B: M -> x, F: M -> y) over sc1 unwinds to the composite of
  // its two base legs
  std::vector<Id> obj(c2.object_count());
  std::iota(obj.begin(), obj.end(), 0);
  std::vector<Id> mor(c2.morphism_count());
  for (Id m = 0; m < c2.morphism_count(); ++m) {
    auto [big_back, big_fwd] = sc2.span_of_mor[m];
    auto [bb, bf] = sc1.span_of_mor[big_back];  // bf is an identity: egressive span
    auto [fb, ff] = sc1.span_of_mor[big_fwd];   // fb is an identity: ingressive span
    if (!c.is_identity(bf) || !c.is_identity(fb)) {
      report.add("Mismatch", "double span " + std::to_string(m) + " has non-identity inner legs");
      return report;
    }
    mor[m] = c.compose(ff, bb);
  }
  Functor comparison{sc2.ofs->base_ptr(), fs->base_ptr(), obj, mor};
  Report functorial = check_functor(comparison);
  if (!functorial.ok()) {
    for (auto& issue : functorial.issues) report.add("Mismatch", issue.detail);
    return report;
  }
  std::vector<char> hit(c.morphism_count(), 0);
  for (Id m = 0; m < c2.morphism_count(); ++m) hit[mor[m]] = 1;
  for (Id f = 0; f < c.morphism_count(); ++f)
    if (!hit[f]) report.add("Mismatch", "morphism " + std::to_string(f) + " not hit");
  for (Id m = 0; m < c2.morphism_count(); ++m) {
    if (sc2.ofs->egressive(m) != fs->egressive(mor[m]) ||
        sc2.ofs->ingressive(m) != fs->ingressive(mor[m]))
      report.add("Mismatch", "class mismatch at double span " + std::to_string(m));
  }
  return report;
}

Report span_composition_independence(const OfsPtr& fs, Budget& budget) {
  Report report;
  report.subject = "span composition independence";
  const FinCategory& c = fs->base();
  SpanCategory sc = span_category(fs, budget);
  for (const auto& [b1, f1] : sc.span_of_mor)
    for (const auto& [b2, f2] : sc.span_of_mor) {
      if (c.tgt(f1) != c.tgt(b2)) continue;
      auto pullbacks = pullback_complete(c, b2, f1, budget);
      std::vector<std::pair<Id, Id>> composites;
      for (const auto& pb : pullbacks) {
        // legs: to_x lands in src(b2) (egressive side), to_y in src(f1)
        composites.push_back({c.compose(b1, pb.to_y), c.compose(f2, pb.to_x)});
      }
      for (const auto& [ba, fa] : composites)
        for (const auto& [bb, fb] : composites) {
          budget.charge();
          int isos = 0;
          for (Id phi : c.hom(c.src(ba), c.src(bb)))
            if (c.is_iso(phi) && c.compose(bb, phi) == ba && c.compose(fb, phi) == fa) ++isos;
          if (isos != 1) {
            report.add("Mismatch", "composites via different pullbacks are not uniquely connected");
            return report;
          }
        }
    }
  return report;
}

}  // namespace duocat
