#include "duocat/fincat.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace duocat {

std::string Report::summary() const {
  std::ostringstream os;
  if (!subject.empty()) os << subject << ": ";
  if (issues.empty()) {
    os << "ok";
    return os.str();
  }
  os << issues.size() << " issue(s)";
  for (size_t i = 0; i < issues.size() && i < 4; ++i)
    os << "; " << issues[i].code << " " << issues[i].detail;
  if (issues.size() > 4) os << "; ...";
  return os.str();
}

namespace {

std::string default_name(Id i) { return std::to_string(i); }

bool in_range(Id v, size_t n) { return v >= 0 && static_cast<size_t>(v) < n; }

}  // namespace

void FinCategory::finish() {
  const size_t nobj = identity_.size();
  const size_t nmor = src_.size();
  hom_.assign(nobj * nobj, {});
  out_.assign(nobj, {});
  in_.assign(nobj, {});
  for (Id f = 0; f < static_cast<Id>(nmor); ++f) {
    hom_[static_cast<size_t>(src_[f]) * nobj + tgt_[f]].push_back(f);
    out_[src_[f]].push_back(f);
    in_[tgt_[f]].push_back(f);
  }
  inverse_.assign(nmor, kNone);
  for (Id f = 0; f < static_cast<Id>(nmor); ++f) {
    for (Id g : hom(tgt_[f], src_[f])) {
      if (compose(g, f) == identity_[src_[f]] && compose(f, g) == identity_[tgt_[f]]) {
        inverse_[f] = g;
        break;
      }
    }
  }
  if (obj_names_.empty())
    for (size_t x = 0; x < nobj; ++x) obj_names_.push_back(default_name(static_cast<Id>(x)));
  if (mor_names_.empty())
    for (size_t f = 0; f < nmor; ++f) mor_names_.push_back(default_name(static_cast<Id>(f)));
}

bool FinCategory::same_tables(const FinCategory& other) const {
  return src_ == other.src_ && tgt_ == other.tgt_ && identity_ == other.identity_ &&
         comp_ == other.comp_;
}

CatPtr FinCategory::from_raw_unchecked(const RawCategory& raw) {
  auto cat = std::make_shared<FinCategory>();
  const size_t nmor = raw.morphisms.size();
  cat->src_.reserve(nmor);
  cat->tgt_.reserve(nmor);
  for (const auto& m : raw.morphisms) {
    cat->src_.push_back(m.src);
    cat->tgt_.push_back(m.tgt);
    cat->mor_names_.push_back(m.name.empty() ? default_name(static_cast<Id>(cat->mor_names_.size()))
                                             : m.name);
  }
  cat->identity_ = raw.identities;
  cat->comp_.assign(nmor * nmor, kNone);
  for (const auto& t : raw.composition)
    cat->comp_[static_cast<size_t>(t[0]) * nmor + t[1]] = t[2];
  cat->obj_names_ = raw.objects;
  for (size_t x = cat->obj_names_.size(); x < raw.identities.size(); ++x)
    cat->obj_names_.push_back(default_name(static_cast<Id>(x)));
  cat->finish();
  return cat;
}

Report check_category(const RawCategory& raw) {
  Report report;
  report.subject = "category";
  const size_t nobj = raw.objects.empty() ? raw.identities.size() : raw.objects.size();
  const size_t nmor = raw.morphisms.size();

  for (size_t f = 0; f < nmor; ++f) {
    if (!in_range(raw.morphisms[f].src, nobj) || !in_range(raw.morphisms[f].tgt, nobj))
      report.add("DanglingId", "morphism " + std::to_string(f) + " has out-of-range endpoint");
  }
  if (raw.identities.size() != nobj)
    report.add("MissingIdentity", "identity table has " + std::to_string(raw.identities.size()) +
                                      " entries for " + std::to_string(nobj) + " objects");
  for (size_t x = 0; x < raw.identities.size() && x < nobj; ++x) {
    Id e = raw.identities[x];
    if (!in_range(e, nmor) || raw.morphisms[e].src != static_cast<Id>(x) ||
        raw.morphisms[e].tgt != static_cast<Id>(x))
      report.add("MissingIdentity", "object " + std::to_string(x));
  }
  for (const auto& t : raw.composition) {
    if (!in_range(t[0], nmor) || !in_range(t[1], nmor) || !in_range(t[2], nmor)) {
      report.add("DanglingId", "composition entry references out-of-range morphism");
      continue;
    }
  }
  if (!report.ok()) return report;  // table shape is broken; axiom checks would chase bad ids

  auto cat = FinCategory::from_raw_unchecked(raw);
  const Id m = static_cast<Id>(nmor);
  for (const auto& t : raw.composition) {
    Id g = t[0], f = t[1], gf = t[2];
    if (!cat->composable(g, f)) {
      report.add("NonComposablePairInTable",
                 "comp(" + std::to_string(g) + "," + std::to_string(f) + ") listed but src(g) != tgt(f)");
    } else if (cat->src(gf) != cat->src(f) || cat->tgt(gf) != cat->tgt(g)) {
      report.add("NonComposablePairInTable",
                 "comp(" + std::to_string(g) + "," + std::to_string(f) + ") has wrong endpoints");
    }
  }
  for (Id g = 0; g < m; ++g)
    for (Id f = 0; f < m; ++f) {
      if (cat->composable(g, f) && cat->compose(g, f) == kNone)
        report.add("MissingComposite", "comp(" + std::to_string(g) + "," + std::to_string(f) + ")");
    }
  if (!report.ok()) return report;

  for (Id f = 0; f < m; ++f) {
    if (cat->compose(cat->identity(cat->tgt(f)), f) != f ||
        cat->compose(f, cat->identity(cat->src(f))) != f)
      report.add("UnitFailure", "f=" + std::to_string(f));
  }
  for (Id h = 0; h < m; ++h)
    for (Id g = 0; g < m; ++g) {
      if (!cat->composable(h, g)) continue;
      Id hg = cat->compose(h, g);
      for (Id f = 0; f < m; ++f) {
        if (!cat->composable(g, f)) continue;
        if (cat->compose(h, cat->compose(g, f)) != cat->compose(hg, f))
          report.add("AssociativityFailure", "h=" + std::to_string(h) + " g=" + std::to_string(g) +
                                                 " f=" + std::to_string(f));
      }
    }
  return report;
}

CatPtr validate_category(const RawCategory& raw) {
  Report report = check_category(raw);
  if (!report.ok()) throw ValidationError(std::move(report));
  return FinCategory::from_raw_unchecked(raw);
}

RawCategory serialize(const FinCategory& cat) {
  RawCategory raw;
  for (Id x = 0; x < cat.object_count(); ++x) raw.objects.push_back(cat.object_name(x));
  for (Id f = 0; f < cat.morphism_count(); ++f)
    raw.morphisms.push_back({cat.morphism_name(f), cat.src(f), cat.tgt(f)});
  for (Id x = 0; x < cat.object_count(); ++x) raw.identities.push_back(cat.identity(x));
  for (Id g = 0; g < cat.morphism_count(); ++g)
    for (Id f = 0; f < cat.morphism_count(); ++f)
      if (cat.composable(g, f)) raw.composition.push_back({g, f, cat.compose(g, f)});
  return raw;
}

// ---------------------------------------------------------------------------

CatPtr poset_category(int n) {
  std::vector<std::vector<char>> leq(n + 1, std::vector<char>(n + 1, 0));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) leq[i][j] = 1;
  return poset_from_relation(leq);
}

CatPtr poset_from_relation(const std::vector<std::vector<char>>& leq,
                           const std::vector<std::string>& names) {
  const int nobj = static_cast<int>(leq.size());
  RawCategory raw;
  for (int x = 0; x < nobj; ++x)
    raw.objects.push_back(names.empty() ? default_name(x) : names[x]);
  std::vector<std::vector<Id>> mor(nobj, std::vector<Id>(nobj, kNone));
  for (Id x = 0; x < nobj; ++x)
    for (Id y = 0; y < nobj; ++y)
      if (leq[x][y]) {
        mor[x][y] = static_cast<Id>(raw.morphisms.size());
        raw.morphisms.push_back({raw.objects[x] + "<=" + raw.objects[y], x, y});
      }
  for (Id x = 0; x < nobj; ++x) raw.identities.push_back(mor[x][x]);
  for (Id y = 0; y < nobj; ++y)
    for (Id x = 0; x < nobj; ++x)
      for (Id z = 0; z < nobj; ++z)
        if (leq[x][y] && leq[y][z]) raw.composition.push_back({mor[y][z], mor[x][y], mor[x][z]});
  return validate_category(raw);
}

CatPtr product(const CatPtr& c, const CatPtr& d) {
  RawCategory raw;
  const int dob = d->object_count(), dmor = d->morphism_count();
  for (Id x = 0; x < c->object_count(); ++x)
    for (Id y = 0; y < dob; ++y)
      raw.objects.push_back("(" + c->object_name(x) + "," + d->object_name(y) + ")");
  auto obj = [dob](Id x, Id y) { return x * dob + y; };
  auto mor = [dmor](Id f, Id g) { return f * dmor + g; };
  for (Id f = 0; f < c->morphism_count(); ++f)
    for (Id g = 0; g < dmor; ++g)
      raw.morphisms.push_back({"(" + c->morphism_name(f) + "," + d->morphism_name(g) + ")",
                               obj(c->src(f), d->src(g)), obj(c->tgt(f), d->tgt(g))});
  for (Id x = 0; x < c->object_count(); ++x)
    for (Id y = 0; y < dob; ++y)
      raw.identities.push_back(mor(c->identity(x), d->identity(y)));
  for (Id f2 = 0; f2 < c->morphism_count(); ++f2)
    for (Id g2 = 0; g2 < dmor; ++g2)
      for (Id f1 = 0; f1 < c->morphism_count(); ++f1)
        for (Id g1 = 0; g1 < dmor; ++g1)
          if (c->composable(f2, f1) && d->composable(g2, g1))
            raw.composition.push_back(
                {mor(f2, g2), mor(f1, g1), mor(c->compose(f2, f1), d->compose(g2, g1))});
  return validate_category(raw);
}

CatPtr opposite(const CatPtr& c) {
  RawCategory raw = serialize(*c);
  for (auto& m : raw.morphisms) std::swap(m.src, m.tgt);
  for (auto& t : raw.composition) std::swap(t[0], t[1]);
  return validate_category(raw);
}

ArrowCategory arrow_category(const CatPtr& c) {
  RawCategory raw;
  for (Id f = 0; f < c->morphism_count(); ++f) raw.objects.push_back(c->morphism_name(f));
  std::vector<std::array<Id, 2>> legs;
  std::map<std::array<Id, 4>, Id> index;  // (f, f', sigma, tau) -> id
  for (Id f = 0; f < c->morphism_count(); ++f)
    for (Id f2 = 0; f2 < c->morphism_count(); ++f2)
      for (Id sigma : c->hom(c->src(f), c->src(f2)))
        for (Id tau : c->hom(c->tgt(f), c->tgt(f2)))
          if (c->compose(tau, f) == c->compose(f2, sigma)) {
            index[{f, f2, sigma, tau}] = static_cast<Id>(raw.morphisms.size());
            raw.morphisms.push_back({"(" + c->morphism_name(sigma) + "," + c->morphism_name(tau) + ")",
                                     f, f2});
            legs.push_back({sigma, tau});
          }
  for (Id f = 0; f < c->morphism_count(); ++f)
    raw.identities.push_back(index.at({f, f, c->identity(c->src(f)), c->identity(c->tgt(f))}));
  const Id n = static_cast<Id>(raw.morphisms.size());
  for (Id b = 0; b < n; ++b)
    for (Id a = 0; a < n; ++a) {
      if (raw.morphisms[b].src != raw.morphisms[a].tgt) continue;
      Id sigma = c->compose(legs[b][0], legs[a][0]);
      Id tau = c->compose(legs[b][1], legs[a][1]);
      raw.composition.push_back({b, a, index.at({raw.morphisms[a].src, raw.morphisms[b].tgt, sigma, tau})});
    }
  ArrowCategory out;
  out.cat = validate_category(raw);
  out.base = c;
  out.legs = std::move(legs);
  return out;
}

Subcategory wide_subcategory(const CatPtr& c, const std::vector<char>& mask) {
  RawCategory raw;
  for (Id x = 0; x < c->object_count(); ++x) raw.objects.push_back(c->object_name(x));
  Subcategory sub;
  sub.parent = c;
  sub.mor_restrict.assign(c->morphism_count(), kNone);
  for (Id f = 0; f < c->morphism_count(); ++f)
    if (mask[f]) {
      sub.mor_restrict[f] = static_cast<Id>(raw.morphisms.size());
      raw.morphisms.push_back({c->morphism_name(f), c->src(f), c->tgt(f)});
      sub.mor_embed.push_back(f);
    }
  for (Id x = 0; x < c->object_count(); ++x) raw.identities.push_back(sub.mor_restrict[c->identity(x)]);
  for (Id g : sub.mor_embed)
    for (Id f : sub.mor_embed)
      if (c->composable(g, f))
        raw.composition.push_back(
            {sub.mor_restrict[g], sub.mor_restrict[f], sub.mor_restrict[c->compose(g, f)]});
  sub.cat = validate_category(raw);
  return sub;
}

Subcategory core(const CatPtr& c) {
  std::vector<char> mask(c->morphism_count(), 0);
  for (Id f = 0; f < c->morphism_count(); ++f) mask[f] = c->is_iso(f) ? 1 : 0;
  return wide_subcategory(c, mask);
}

// ---------------------------------------------------------------------------

Report check_functor(const Functor& fun) {
  Report report;
  report.subject = "functor";
  const auto& c = *fun.source;
  const auto& d = *fun.target;
  if (static_cast<int>(fun.obj_map.size()) != c.object_count() ||
      static_cast<int>(fun.mor_map.size()) != c.morphism_count()) {
    report.add("DanglingId", "map tables have wrong size");
    return report;
  }
  for (Id x = 0; x < c.object_count(); ++x)
    if (!in_range(fun.obj_map[x], d.object_count()))
      report.add("DanglingId", "object image out of range");
  for (Id f = 0; f < c.morphism_count(); ++f)
    if (!in_range(fun.mor_map[f], d.morphism_count()))
      report.add("DanglingId", "morphism image out of range");
  if (!report.ok()) return report;
  for (Id f = 0; f < c.morphism_count(); ++f) {
    Id g = fun.mor_map[f];
    if (d.src(g) != fun.obj_map[c.src(f)] || d.tgt(g) != fun.obj_map[c.tgt(f)])
      report.add("EndpointMismatch", "f=" + std::to_string(f));
  }
  for (Id x = 0; x < c.object_count(); ++x)
    if (fun.mor_map[c.identity(x)] != d.identity(fun.obj_map[x]))
      report.add("IdentityNotPreserved", "x=" + std::to_string(x));
  for (Id g = 0; g < c.morphism_count(); ++g)
    for (Id f = 0; f < c.morphism_count(); ++f)
      if (c.composable(g, f) &&
          fun.mor_map[c.compose(g, f)] != d.compose(fun.mor_map[g], fun.mor_map[f]))
        report.add("CompositionNotPreserved", "g=" + std::to_string(g) + " f=" + std::to_string(f));
  return report;
}

Functor make_functor(CatPtr source, CatPtr target, std::vector<Id> obj_map,
                     std::vector<Id> mor_map) {
  Functor fun{std::move(source), std::move(target), std::move(obj_map), std::move(mor_map)};
  Report report = check_functor(fun);
  if (!report.ok()) throw ValidationError(std::move(report));
  return fun;
}

Functor identity_functor(const CatPtr& c) {
  std::vector<Id> obj(c->object_count()), mor(c->morphism_count());
  for (Id x = 0; x < c->object_count(); ++x) obj[x] = x;
  for (Id f = 0; f < c->morphism_count(); ++f) mor[f] = f;
  return Functor{c, c, std::move(obj), std::move(mor)};
}

Functor compose_functors(const Functor& g, const Functor& f) {
  std::vector<Id> obj(f.obj_map.size()), mor(f.mor_map.size());
  for (size_t x = 0; x < obj.size(); ++x) obj[x] = g.obj_map[f.obj_map[x]];
  for (size_t m = 0; m < mor.size(); ++m) mor[m] = g.mor_map[f.mor_map[m]];
  return Functor{f.source, g.target, std::move(obj), std::move(mor)};
}

Report check_nat_trans(const NatTrans& eta) {
  Report report;
  report.subject = "natural transformation";
  const auto& c = *eta.source.source;
  const auto& d = *eta.source.target;
  if (eta.source.target.get() != eta.target.target.get() ||
      eta.source.source.get() != eta.target.source.get()) {
    report.add("NotParallel", "source and target functors do not share categories");
    return report;
  }
  if (static_cast<int>(eta.components.size()) != c.object_count()) {
    report.add("DanglingId", "component table has wrong size");
    return report;
  }
  for (Id x = 0; x < c.object_count(); ++x) {
    Id comp = eta.components[x];
    if (!in_range(comp, d.morphism_count()) || d.src(comp) != eta.source.obj_map[x] ||
        d.tgt(comp) != eta.target.obj_map[x]) {
      report.add("ComponentMismatch", "x=" + std::to_string(x));
    }
  }
  if (!report.ok()) return report;
  for (Id f = 0; f < c.morphism_count(); ++f) {
    Id x = c.src(f), y = c.tgt(f);
    if (d.compose(eta.components[y], eta.source.mor_map[f]) !=
        d.compose(eta.target.mor_map[f], eta.components[x]))
      report.add("NaturalityFailure", "f=" + std::to_string(f));
  }
  return report;
}

namespace {

// Composition triples of c indexed by the largest morphism id they mention,
// for incremental checking during backtracking enumeration.
std::vector<std::vector<std::array<Id, 3>>> triples_by_max(const FinCategory& c) {
  std::vector<std::vector<std::array<Id, 3>>> by_max(c.morphism_count());
  for (Id g = 0; g < c.morphism_count(); ++g)
    for (Id f = 0; f < c.morphism_count(); ++f)
      if (c.composable(g, f)) {
        Id gf = c.compose(g, f);
        Id mx = std::max(g, std::max(f, gf));
        by_max[mx].push_back({g, f, gf});
      }
  return by_max;
}

}  // namespace

std::vector<Functor> enumerate_functors(const CatPtr& c, const CatPtr& d, Budget& budget) {
  std::vector<Functor> out;
  const int nobj = c->object_count(), nmor = c->morphism_count();
  if (d->object_count() == 0) {
    if (nobj == 0) out.push_back(Functor{c, d, {}, {}});
    return out;
  }

  auto by_max = triples_by_max(*c);
  std::vector<Id> obj(nobj, 0), mor(nmor, kNone);

  // Assign morphism images in id order; identities are forced.
  auto assign_mors = [&](auto&& self, Id f) -> void {
    if (f == nmor) {
      out.push_back(Functor{c, d, obj, mor});
      return;
    }
    const bool forced = c->is_identity(f);
    const auto& candidates =
        forced ? std::vector<Id>{d->identity(obj[c->src(f)])} : d->hom(obj[c->src(f)], obj[c->tgt(f)]);
    for (Id g : candidates) {
      budget.charge();
      mor[f] = g;
      bool ok = true;
      for (const auto& t : by_max[f]) {
        if (d->compose(mor[t[0]], mor[t[1]]) != mor[t[2]]) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, f + 1);
    }
    mor[f] = kNone;
  };

  auto assign_objs = [&](auto&& self, Id x) -> void {
    if (x == nobj) {
      assign_mors(assign_mors, 0);
      return;
    }
    for (Id y = 0; y < d->object_count(); ++y) {
      budget.charge();
      obj[x] = y;
      // forward check: homs between assigned objects must stay inhabitable
      bool ok = true;
      for (Id f = 0; f < nmor && ok; ++f)
        if (c->src(f) <= x && c->tgt(f) <= x && d->hom(obj[c->src(f)], obj[c->tgt(f)]).empty())
          ok = false;
      if (ok) self(self, x + 1);
    }
  };
  assign_objs(assign_objs, 0);
  return out;
}

std::vector<std::vector<Id>> nerve_chains(const FinCategory& c, int n) {
  std::vector<std::vector<Id>> chains;
  if (n == 0) {
    for (Id x = 0; x < c.object_count(); ++x) chains.push_back({x});
    return chains;
  }
  std::vector<Id> current(n);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      chains.push_back(current);
      return;
    }
    for (Id f = 0; f < c.morphism_count(); ++f) {
      if (i > 0 && c.src(f) != c.tgt(current[i - 1])) continue;
      current[i] = f;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return chains;
}

long long nerve_chain_count(const FinCategory& c, int n) {
  if (n == 0) return c.object_count();
  // count paths of length n in the composability graph
  std::vector<long long> ending(c.object_count(), 0);
  for (Id f = 0; f < c.morphism_count(); ++f) ending[c.tgt(f)] += 1;
  for (int i = 2; i <= n; ++i) {
    std::vector<long long> next(c.object_count(), 0);
    for (Id f = 0; f < c.morphism_count(); ++f) next[c.tgt(f)] += ending[c.src(f)];
    ending = std::move(next);
  }
  long long total = 0;
  for (long long v : ending) total += v;
  return total;
}

EquivalenceReport is_equivalence(const Functor& fun) {
  const auto& c = *fun.source;
  const auto& d = *fun.target;
  // fully faithful: hom(x,y) -> hom(Fx,Fy) bijective for all pairs
  for (Id x = 0; x < c.object_count(); ++x)
    for (Id y = 0; y < c.object_count(); ++y) {
      const auto& src_hom = c.hom(x, y);
      const auto& tgt_hom = d.hom(fun.obj_map[x], fun.obj_map[y]);
      std::vector<char> hit(tgt_hom.size(), 0);
      for (Id f : src_hom) {
        Id g = fun.mor_map[f];
        auto it = std::lower_bound(tgt_hom.begin(), tgt_hom.end(), g);
        size_t k = static_cast<size_t>(it - tgt_hom.begin());
        if (hit[k])
          return {false, "not faithful: two morphisms in hom(" + std::to_string(x) + "," +
                             std::to_string(y) + ") collapse onto " + std::to_string(g)};
        hit[k] = 1;
      }
      if (src_hom.size() < tgt_hom.size())
        return {false, "not full: hom(" + std::to_string(fun.obj_map[x]) + "," +
                           std::to_string(fun.obj_map[y]) + ") not covered"};
    }
  // essentially surjective
  for (Id z = 0; z < d.object_count(); ++z) {
    bool hit = false;
    for (Id x = 0; x < c.object_count() && !hit; ++x)
      for (Id f : d.hom(fun.obj_map[x], z))
        if (d.is_iso(f)) {
          hit = true;
          break;
        }
    if (!hit) return {false, "not essentially surjective: object " + std::to_string(z)};
  }
  return {true, ""};
}

}  // namespace duocat
