#include "duocat/ofs.hpp"

#include <algorithm>
#include <string>

namespace duocat {

namespace {

long long count_mask(const MorClass& mask) {
  long long n = 0;
  for (char b : mask) n += (b != 0);
  return n;
}

// Wide subcategory requirement shared by both criteria: contains all
// identities, contains all isos, closed under composition.
Report check_wide(const FinCategory& c, const MorClass& mask, const std::string& cls) {
  Report report;
  report.subject = cls;
  if (mask.size() != static_cast<size_t>(c.morphism_count())) {
    report.add("NotSubcategory", cls + " mask has wrong size");
    return report;
  }
  for (Id x = 0; x < c.object_count(); ++x)
    if (!mask[c.identity(x)])
      report.add("NotSubcategory", cls + " misses identity of object " + std::to_string(x));
  for (Id f = 0; f < c.morphism_count(); ++f)
    if (c.is_iso(f) && !mask[f])
      report.add("MissingIso", cls + " misses invertible morphism " + std::to_string(f));
  for (Id g = 0; g < c.morphism_count(); ++g)
    for (Id f = 0; f < c.morphism_count(); ++f)
      if (mask[g] && mask[f] && c.composable(g, f) && !mask[c.compose(g, f)])
        report.add("NotSubcategory", cls + " not closed: comp(" + std::to_string(g) + "," +
                                         std::to_string(f) + ")");
  return report;
}

std::vector<std::pair<Id, Id>> factorizations_impl(const FinCategory& c, const MorClass& eg,
                                                   const MorClass& in, Id f) {
  std::vector<std::pair<Id, Id>> out;
  for (Id e : c.out(c.src(f))) {
    if (!eg[e]) continue;
    for (Id i : c.hom(c.tgt(e), c.tgt(f)))
      if (in[i] && c.compose(i, e) == f) out.push_back({e, i});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Isos phi between the middle objects with phi∘e1 = e2 and i2∘phi = i1.
int connecting_iso_count(const FinCategory& c, const std::pair<Id, Id>& f1,
                         const std::pair<Id, Id>& f2) {
  int count = 0;
  for (Id phi : c.hom(c.tgt(f1.first), c.tgt(f2.first)))
    if (c.is_iso(phi) && c.compose(phi, f1.first) == f2.first &&
        c.compose(f2.second, phi) == f1.second)
      ++count;
  return count;
}

}  // namespace

long long FactorizationSystem::egressive_count() const { return count_mask(eg_); }
long long FactorizationSystem::ingressive_count() const { return count_mask(in_); }

Report check_ofs_lifting(const FinCategory& c, const MorClass& eg, const MorClass& in) {
  Report report;
  report.subject = "lifting criterion";
  report.merge(check_wide(c, eg, "egressive"));
  report.merge(check_wide(c, in, "ingressive"));
  if (!report.ok()) return report;

  for (Id f = 0; f < c.morphism_count(); ++f)
    if (factorizations_impl(c, eg, in, f).empty())
      report.add("FactorizationFailure", "f=" + std::to_string(f) + " admits no factorization");

  // every commuting square (u, v) around (e, i) has exactly one diagonal
  for (Id e = 0; e < c.morphism_count(); ++e) {
    if (!eg[e]) continue;
    for (Id i = 0; i < c.morphism_count(); ++i) {
      if (!in[i]) continue;
      for (Id u : c.hom(c.src(e), c.src(i)))
        for (Id v : c.hom(c.tgt(e), c.tgt(i))) {
          if (c.compose(v, e) != c.compose(i, u)) continue;
          int fillers = 0;
          for (Id d : c.hom(c.tgt(e), c.src(i)))
            if (c.compose(d, e) == u && c.compose(i, d) == v) ++fillers;
          if (fillers != 1)
            report.add("LiftingFailure", "square e=" + std::to_string(e) + " i=" + std::to_string(i) +
                                             " u=" + std::to_string(u) + " v=" + std::to_string(v) +
                                             " has " + std::to_string(fillers) + " fillers");
        }
    }
  }
  return report;
}

Report check_ofs_factorization(const FinCategory& c, const MorClass& eg, const MorClass& in) {
  Report report;
  report.subject = "factorization criterion";
  report.merge(check_wide(c, eg, "egressive"));
  report.merge(check_wide(c, in, "ingressive"));
  if (!report.ok()) return report;

  for (Id f = 0; f < c.morphism_count(); ++f) {
    auto facts = factorizations_impl(c, eg, in, f);
    if (facts.empty()) {
      report.add("FactorizationFailure", "f=" + std::to_string(f) + " admits no factorization");
      continue;
    }
    for (const auto& f1 : facts)
      for (const auto& f2 : facts) {
        int isos = connecting_iso_count(c, f1, f2);
        if (isos != 1) {
          report.add("FactorizationFailure",
                     "f=" + std::to_string(f) + " factorizations (" + std::to_string(f1.first) + "," +
                         std::to_string(f1.second) + ") and (" + std::to_string(f2.first) + "," +
                         std::to_string(f2.second) + ") connected by " + std::to_string(isos) +
                         " isos");
          break;
        }
      }
  }
  return report;
}

OfsValidation check_ofs(const FinCategory& c, const MorClass& eg, const MorClass& in) {
  OfsValidation v;
  v.lifting = check_ofs_lifting(c, eg, in);
  v.factorization = check_ofs_factorization(c, eg, in);
  v.agree = v.lifting.ok() == v.factorization.ok();
  return v;
}

OfsPtr validate_ofs(const CatPtr& c, const MorClass& eg, const MorClass& in) {
  OfsValidation v = check_ofs(*c, eg, in);
  if (!v.ok()) {
    Report merged;
    merged.subject = "factorization system";
    merged.merge(v.lifting);
    merged.merge(v.factorization);
    throw ValidationError(std::move(merged));
  }
  return std::make_shared<FactorizationSystem>(c, eg, in);
}

bool has_strict_factorizations(const FactorizationSystem& fs) {
  for (Id f = 0; f < fs.base().morphism_count(); ++f)
    if (factorizations(fs, f).size() != 1) return false;
  return true;
}

std::vector<std::pair<Id, Id>> factorizations(const FactorizationSystem& fs, Id f) {
  return factorizations_impl(fs.base(), fs.egressive_class(), fs.ingressive_class(), f);
}

std::pair<Id, Id> factor(const FactorizationSystem& fs, Id f) {
  auto facts = factorizations(fs, f);
  return facts.front();  // existence guaranteed by validation
}

OfsPtr product_ofs(const CatPtr& c, const CatPtr& d) {
  CatPtr prod = product(c, d);
  const int dmor = d->morphism_count();
  MorClass eg(prod->morphism_count(), 0), in(prod->morphism_count(), 0);
  for (Id f = 0; f < c->morphism_count(); ++f)
    for (Id g = 0; g < dmor; ++g) {
      Id m = f * dmor + g;
      if (d->is_iso(g)) eg[m] = 1;
      if (c->is_iso(f)) in[m] = 1;
    }
  return validate_ofs(prod, eg, in);
}

ArrowOfs arrow_ofs(const CatPtr& c) {
  ArrowOfs out;
  out.arrow = arrow_category(c);
  const auto& ar = *out.arrow.cat;
  MorClass eg(ar.morphism_count(), 0), in(ar.morphism_count(), 0);
  for (Id m = 0; m < ar.morphism_count(); ++m) {
    if (c->is_iso(out.arrow.legs[m][0])) eg[m] = 1;
    if (c->is_iso(out.arrow.legs[m][1])) in[m] = 1;
  }
  out.ofs = validate_ofs(out.arrow.cat, eg, in);
  return out;
}

OfsPtr iso_all_ofs(const CatPtr& c) {
  MorClass eg(c->morphism_count(), 0), in(c->morphism_count(), 1);
  for (Id f = 0; f < c->morphism_count(); ++f) eg[f] = c->is_iso(f) ? 1 : 0;
  return validate_ofs(c, eg, in);
}

OfsPtr all_iso_ofs(const CatPtr& c) {
  MorClass eg(c->morphism_count(), 1), in(c->morphism_count(), 0);
  for (Id f = 0; f < c->morphism_count(); ++f) in[f] = c->is_iso(f) ? 1 : 0;
  return validate_ofs(c, eg, in);
}

Report check_ofs_map(const OfsMap& f) {
  Report report = check_functor(f.fun);
  report.subject = "map of factorization systems";
  if (!report.ok()) return report;
  for (Id m = 0; m < f.source_fs->base().morphism_count(); ++m) {
    if (f.source_fs->egressive(m) && !f.target_fs->egressive(f.fun.mor_map[m]))
      report.add("ClassViolation", "egressive morphism " + std::to_string(m) + " lands outside");
    if (f.source_fs->ingressive(m) && !f.target_fs->ingressive(f.fun.mor_map[m]))
      report.add("ClassViolation", "ingressive morphism " + std::to_string(m) + " lands outside");
  }
  return report;
}

OfsMap make_ofs_map(Functor fun, OfsPtr source_fs, OfsPtr target_fs) {
  OfsMap f{std::move(fun), std::move(source_fs), std::move(target_fs)};
  Report report = check_ofs_map(f);
  if (!report.ok()) throw ValidationError(std::move(report));
  return f;
}

std::vector<OfsMap> enumerate_ofs_maps(const OfsPtr& a, const OfsPtr& b, Budget& budget) {
  std::vector<OfsMap> out;
  for (auto& fun : enumerate_functors(a->base_ptr(), b->base_ptr(), budget)) {
    OfsMap f{std::move(fun), a, b};
    if (check_ofs_map(f).ok()) out.push_back(std::move(f));
  }
  return out;
}

std::vector<MorClass> enumerate_wide_subcategories(const FinCategory& c, Budget& budget) {
  // free positions: everything that is not forced in by being invertible
  std::vector<Id> free;
  for (Id f = 0; f < c.morphism_count(); ++f)
    if (!c.is_iso(f)) free.push_back(f);
  if (free.size() > 24) throw BudgetError(1LL << free.size());

  std::vector<MorClass> out;
  const size_t limit = 1ull << free.size();
  for (size_t bits = 0; bits < limit; ++bits) {
    budget.charge(static_cast<long long>(free.size()) + 1);
    MorClass mask(c.morphism_count(), 0);
    for (Id f = 0; f < c.morphism_count(); ++f)
      if (c.is_iso(f)) mask[f] = 1;
    for (size_t k = 0; k < free.size(); ++k)
      if (bits & (1ull << k)) mask[free[k]] = 1;
    bool closed = true;
    for (Id g = 0; g < c.morphism_count() && closed; ++g)
      for (Id f = 0; f < c.morphism_count() && closed; ++f) {
        budget.charge();
        if (mask[g] && mask[f] && c.composable(g, f) && !mask[c.compose(g, f)]) closed = false;
      }
    if (closed) out.push_back(std::move(mask));
  }
  return out;
}

}  // namespace duocat
