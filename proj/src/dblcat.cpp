#include "duocat/dblcat.hpp"

#include <algorithm>
#include <sstream>

namespace duocat {

namespace {

const std::vector<Id> kEmpty;

RawCategory edge_category_raw(const std::vector<std::string>& objects,
                              const std::vector<RawCategory::RawMor>& mors,
                              const std::vector<Id>& identities,
                              const std::vector<std::array<Id, 3>>& comp) {
  RawCategory raw;
  raw.objects = objects;
  raw.morphisms = mors;
  raw.identities = identities;
  raw.composition = comp;
  return raw;
}

}  // namespace

void DoubleCategory::finish() {
  by_top_.assign(hmor_count(), {});
  by_left_.assign(vmor_count(), {});
  for (Id s = 0; s < square_count(); ++s) {
    by_left_bottom_[{left(s), bottom(s)}].push_back(s);
    by_boundary_[sq_[s]].push_back(s);
    by_top_[top(s)].push_back(s);
    by_left_[left(s)].push_back(s);
  }
  if (sq_names_.empty())
    for (Id s = 0; s < square_count(); ++s) sq_names_.push_back(std::to_string(s));
}

const std::vector<Id>& DoubleCategory::fillers(Id left_v, Id bottom_h) const {
  auto it = by_left_bottom_.find({left_v, bottom_h});
  return it == by_left_bottom_.end() ? kEmpty : it->second;
}

const std::vector<Id>& DoubleCategory::squares_with_boundary(Id t, Id b, Id l, Id r) const {
  auto it = by_boundary_.find(std::array<Id, 4>{t, b, l, r});
  return it == by_boundary_.end() ? kEmpty : it->second;
}

bool DoubleCategory::same_tables(const DoubleCategory& other) const {
  return hcat_->same_tables(*other.hcat_) && vcat_->same_tables(*other.vcat_) &&
         sq_ == other.sq_ && vid_sq_ == other.vid_sq_ && hid_sq_ == other.hid_sq_ &&
         hcomp_sq_ == other.hcomp_sq_ && vcomp_sq_ == other.vcomp_sq_;
}

DblPtr DoubleCategory::from_raw_unchecked(const RawDouble& raw) {
  auto d = std::make_shared<DoubleCategory>();
  d->hcat_ = FinCategory::from_raw_unchecked(
      edge_category_raw(raw.objects, raw.hmors, raw.h_identities, raw.hcomp_hmors));
  d->vcat_ = FinCategory::from_raw_unchecked(
      edge_category_raw(raw.objects, raw.vmors, raw.v_identities, raw.vcomp_vmors));
  for (const auto& s : raw.squares) {
    d->sq_.push_back({s.top, s.bottom, s.left, s.right});
    d->sq_names_.push_back(s.name.empty() ? std::to_string(d->sq_names_.size()) : s.name);
  }
  d->vid_sq_ = raw.vid_squares;
  d->hid_sq_ = raw.hid_squares;
  const size_t n = raw.squares.size();
  d->hcomp_sq_.assign(n * n, kNone);
  d->vcomp_sq_.assign(n * n, kNone);
  for (const auto& t : raw.hcomp_squares) d->hcomp_sq_[static_cast<size_t>(t[0]) * n + t[1]] = t[2];
  for (const auto& t : raw.vcomp_squares) d->vcomp_sq_[static_cast<size_t>(t[0]) * n + t[1]] = t[2];
  d->finish();
  return d;
}

Report check_double(const RawDouble& raw) {
  Report report;
  report.subject = "double category";

  {
    Report h = check_category(
        edge_category_raw(raw.objects, raw.hmors, raw.h_identities, raw.hcomp_hmors));
    for (auto& issue : h.issues) report.add("horizontal:" + issue.code, issue.detail);
    Report v = check_category(
        edge_category_raw(raw.objects, raw.vmors, raw.v_identities, raw.vcomp_vmors));
    for (auto& issue : v.issues) report.add("vertical:" + issue.code, issue.detail);
  }
  if (!report.ok()) return report;

  const size_t nsq = raw.squares.size();
  const size_t nh = raw.hmors.size(), nv = raw.vmors.size();
  for (size_t s = 0; s < nsq; ++s) {
    const auto& q = raw.squares[s];
    if (q.top < 0 || static_cast<size_t>(q.top) >= nh || q.bottom < 0 ||
        static_cast<size_t>(q.bottom) >= nh || q.left < 0 || static_cast<size_t>(q.left) >= nv ||
        q.right < 0 || static_cast<size_t>(q.right) >= nv) {
      report.add("DanglingId", "square " + std::to_string(s));
      continue;
    }
    // top: x -> y, bottom: x' -> y', left: x -> x', right: y -> y'
    if (raw.hmors[q.top].src != raw.vmors[q.left].src ||
        raw.hmors[q.top].tgt != raw.vmors[q.right].src ||
        raw.hmors[q.bottom].src != raw.vmors[q.left].tgt ||
        raw.hmors[q.bottom].tgt != raw.vmors[q.right].tgt)
      report.add("BoundaryMismatch", "square " + std::to_string(s));
  }
  if (raw.vid_squares.size() != nh) report.add("BoundaryMismatch", "vid_squares table size");
  if (raw.hid_squares.size() != nv) report.add("BoundaryMismatch", "hid_squares table size");
  if (!report.ok()) return report;

  auto d = DoubleCategory::from_raw_unchecked(raw);

  // identity squares have the required boundaries
  for (Id h = 0; h < d->hmor_count(); ++h) {
    Id s = d->vid_square(h);
    if (d->top(s) != h || d->bottom(s) != h || d->left(s) != d->v_identity(d->hsrc(h)) ||
        d->right(s) != d->v_identity(d->htgt(h)))
      report.add("BoundaryMismatch", "vid square of hmor " + std::to_string(h));
  }
  for (Id v = 0; v < d->vmor_count(); ++v) {
    Id s = d->hid_square(v);
    if (d->left(s) != v || d->right(s) != v || d->top(s) != d->h_identity(d->vsrc(v)) ||
        d->bottom(s) != d->h_identity(d->vtgt(v)))
      report.add("BoundaryMismatch", "hid square of vmor " + std::to_string(v));
  }
  for (Id x = 0; x < d->object_count(); ++x)
    if (d->vid_square(d->h_identity(x)) != d->hid_square(d->v_identity(x)))
      report.add("IdentitySquareMismatch", "object " + std::to_string(x));
  if (!report.ok()) return report;

  // squares under horizontal composition form a category over the vmors,
  // squares under vertical composition one over the hmors
  {
    RawCategory hview;
    for (size_t v = 0; v < nv; ++v) hview.objects.push_back("v" + std::to_string(v));
    for (size_t s = 0; s < nsq; ++s)
      hview.morphisms.push_back({"s" + std::to_string(s), raw.squares[s].left, raw.squares[s].right});
    for (Id v = 0; v < static_cast<Id>(nv); ++v) hview.identities.push_back(raw.hid_squares[v]);
    hview.composition = raw.hcomp_squares;
    Report h = check_category(hview);
    for (auto& issue : h.issues) report.add("hcomp:" + issue.code, issue.detail);

    RawCategory vview;
    for (size_t h2 = 0; h2 < nh; ++h2) vview.objects.push_back("h" + std::to_string(h2));
    for (size_t s = 0; s < nsq; ++s)
      vview.morphisms.push_back({"s" + std::to_string(s), raw.squares[s].top, raw.squares[s].bottom});
    for (Id h2 = 0; h2 < static_cast<Id>(nh); ++h2) vview.identities.push_back(raw.vid_squares[h2]);
    vview.composition = raw.vcomp_squares;
    Report v = check_category(vview);
    for (auto& issue : v.issues) report.add("vcomp:" + issue.code, issue.detail);
  }
  if (!report.ok()) return report;

  // composite squares have the composite boundaries
  for (Id s2 = 0; s2 < d->square_count(); ++s2)
    for (Id s1 = 0; s1 < d->square_count(); ++s1) {
      if (d->hcomposable_sq(s2, s1)) {
        Id c = d->hcomp_sq(s2, s1);
        if (d->top(c) != d->hcomp_h(d->top(s2), d->top(s1)) ||
            d->bottom(c) != d->hcomp_h(d->bottom(s2), d->bottom(s1)) || d->left(c) != d->left(s1) ||
            d->right(c) != d->right(s2))
          report.add("BoundaryMismatch",
                     "hcomp(" + std::to_string(s2) + "," + std::to_string(s1) + ")");
      }
      if (d->vcomposable_sq(s2, s1)) {
        Id c = d->vcomp_sq(s2, s1);
        if (d->top(c) != d->top(s1) || d->bottom(c) != d->bottom(s2) ||
            d->left(c) != d->vcomp_v(d->left(s2), d->left(s1)) ||
            d->right(c) != d->vcomp_v(d->right(s2), d->right(s1)))
          report.add("BoundaryMismatch",
                     "vcomp(" + std::to_string(s2) + "," + std::to_string(s1) + ")");
      }
    }

  // identity squares compose to identity squares
  for (Id h2 = 0; h2 < d->hmor_count(); ++h2)
    for (Id h1 = 0; h1 < d->hmor_count(); ++h1)
      if (d->hcat().composable(h2, h1) &&
          d->vid_square(d->hcomp_h(h2, h1)) != d->hcomp_sq(d->vid_square(h2), d->vid_square(h1)))
        report.add("IdentitySquareMismatch",
                   "vid of hcomp(" + std::to_string(h2) + "," + std::to_string(h1) + ")");
  for (Id v2 = 0; v2 < d->vmor_count(); ++v2)
    for (Id v1 = 0; v1 < d->vmor_count(); ++v1)
      if (d->vcat().composable(v2, v1) &&
          d->hid_square(d->vcomp_v(v2, v1)) != d->vcomp_sq(d->hid_square(v2), d->hid_square(v1)))
        report.add("IdentitySquareMismatch",
                   "hid of vcomp(" + std::to_string(v2) + "," + std::to_string(v1) + ")");

  // interchange
  for (Id s = 0; s < d->square_count(); ++s)
    for (Id t = 0; t < d->square_count(); ++t) {
      if (!d->hcomposable_sq(t, s)) continue;
      for (Id s2 = 0; s2 < d->square_count(); ++s2) {
        if (!d->vcomposable_sq(s2, s)) continue;
        for (Id t2 = 0; t2 < d->square_count(); ++t2) {
          if (!d->vcomposable_sq(t2, t) || !d->hcomposable_sq(t2, s2)) continue;
          Id rows = d->vcomp_sq(d->hcomp_sq(t2, s2), d->hcomp_sq(t, s));
          Id cols = d->hcomp_sq(d->vcomp_sq(t2, t), d->vcomp_sq(s2, s));
          if (rows != cols)
            report.add("InterchangeFailure",
                       "squares (" + std::to_string(s) + "," + std::to_string(t) + "," +
                           std::to_string(s2) + "," + std::to_string(t2) + ")");
        }
      }
    }
  return report;
}

DblPtr validate_double(const RawDouble& raw) {
  Report report = check_double(raw);
  if (!report.ok()) throw ValidationError(std::move(report));
  return DoubleCategory::from_raw_unchecked(raw);
}

RawDouble serialize_double(const DoubleCategory& d) {
  RawDouble raw;
  for (Id x = 0; x < d.object_count(); ++x) raw.objects.push_back(d.hcat().object_name(x));
  for (Id h = 0; h < d.hmor_count(); ++h)
    raw.hmors.push_back({d.hcat().morphism_name(h), d.hsrc(h), d.htgt(h)});
  for (Id v = 0; v < d.vmor_count(); ++v)
    raw.vmors.push_back({d.vcat().morphism_name(v), d.vsrc(v), d.vtgt(v)});
  for (Id x = 0; x < d.object_count(); ++x) {
    raw.h_identities.push_back(d.h_identity(x));
    raw.v_identities.push_back(d.v_identity(x));
  }
  for (Id s = 0; s < d.square_count(); ++s)
    raw.squares.push_back({d.square_name(s), d.top(s), d.bottom(s), d.left(s), d.right(s)});
  for (Id h = 0; h < d.hmor_count(); ++h) raw.vid_squares.push_back(d.vid_square(h));
  for (Id v = 0; v < d.vmor_count(); ++v) raw.hid_squares.push_back(d.hid_square(v));
  for (Id g = 0; g < d.hmor_count(); ++g)
    for (Id f = 0; f < d.hmor_count(); ++f)
      if (d.hcat().composable(g, f)) raw.hcomp_hmors.push_back({g, f, d.hcomp_h(g, f)});
  for (Id g = 0; g < d.vmor_count(); ++g)
    for (Id f = 0; f < d.vmor_count(); ++f)
      if (d.vcat().composable(g, f)) raw.vcomp_vmors.push_back({g, f, d.vcomp_v(g, f)});
  for (Id g = 0; g < d.square_count(); ++g)
    for (Id f = 0; f < d.square_count(); ++f) {
      if (d.hcomposable_sq(g, f)) raw.hcomp_squares.push_back({g, f, d.hcomp_sq(g, f)});
      if (d.vcomposable_sq(g, f)) raw.vcomp_squares.push_back({g, f, d.vcomp_sq(g, f)});
    }
  return raw;
}

// ---------------------------------------------------------------------------

DblPtr boxtimes(const CatPtr& c, const CatPtr& d) {
  RawDouble raw;
  const Id cob = c->object_count(), dob = d->object_count();
  const Id cmor = c->morphism_count(), dmor = d->morphism_count();
  auto obj = [dob](Id x, Id y) { return x * dob + y; };
  auto hm = [dob](Id f, Id y) { return f * dob + y; };
  auto vm = [dmor](Id x, Id g) { return x * dmor + g; };
  auto sq = [dmor](Id f, Id g) { return f * dmor + g; };

  for (Id x = 0; x < cob; ++x)
    for (Id y = 0; y < dob; ++y)
      raw.objects.push_back("(" + c->object_name(x) + "," + d->object_name(y) + ")");
  for (Id f = 0; f < cmor; ++f)
    for (Id y = 0; y < dob; ++y)
      raw.hmors.push_back({"(" + c->morphism_name(f) + "," + d->object_name(y) + ")",
                           obj(c->src(f), y), obj(c->tgt(f), y)});
  for (Id x = 0; x < cob; ++x)
    for (Id g = 0; g < dmor; ++g)
      raw.vmors.push_back({"(" + c->object_name(x) + "," + d->morphism_name(g) + ")",
                           obj(x, d->src(g)), obj(x, d->tgt(g))});
  for (Id x = 0; x < cob; ++x)
    for (Id y = 0; y < dob; ++y) {
      raw.h_identities.push_back(hm(c->identity(x), y));
      raw.v_identities.push_back(vm(x, d->identity(y)));
    }
  for (Id f = 0; f < cmor; ++f)
    for (Id g = 0; g < dmor; ++g)
      raw.squares.push_back({"(" + c->morphism_name(f) + "," + d->morphism_name(g) + ")",
                             hm(f, d->src(g)), hm(f, d->tgt(g)), vm(c->src(f), g),
                             vm(c->tgt(f), g)});
  for (Id f = 0; f < cmor; ++f)
    for (Id y = 0; y < dob; ++y) raw.vid_squares.push_back(sq(f, d->identity(y)));
  for (Id x = 0; x < cob; ++x)
    for (Id g = 0; g < dmor; ++g) raw.hid_squares.push_back(sq(c->identity(x), g));
  for (Id f2 = 0; f2 < cmor; ++f2)
    for (Id f1 = 0; f1 < cmor; ++f1) {
      if (c->composable(f2, f1))
        for (Id y = 0; y < dob; ++y)
          raw.hcomp_hmors.push_back({hm(f2, y), hm(f1, y), hm(c->compose(f2, f1), y)});
    }
  for (Id g2 = 0; g2 < dmor; ++g2)
    for (Id g1 = 0; g1 < dmor; ++g1) {
      if (d->composable(g2, g1))
        for (Id x = 0; x < cob; ++x)
          raw.vcomp_vmors.push_back({vm(x, g2), vm(x, g1), vm(x, d->compose(g2, g1))});
    }
  for (Id f2 = 0; f2 < cmor; ++f2)
    for (Id f1 = 0; f1 < cmor; ++f1)
      if (c->composable(f2, f1))
        for (Id g = 0; g < dmor; ++g)
          raw.hcomp_squares.push_back({sq(f2, g), sq(f1, g), sq(c->compose(f2, f1), g)});
  for (Id g2 = 0; g2 < dmor; ++g2)
    for (Id g1 = 0; g1 < dmor; ++g1)
      if (d->composable(g2, g1))
        for (Id f = 0; f < cmor; ++f)
          raw.vcomp_squares.push_back({sq(f, g2), sq(f, g1), sq(f, d->compose(g2, g1))});
  return validate_double(raw);
}

namespace {

RawDouble raw_horop(const DoubleCategory& d) {
  RawDouble raw = serialize_double(d);
  for (auto& h : raw.hmors) std::swap(h.src, h.tgt);
  for (auto& s : raw.squares) std::swap(s.left, s.right);
  for (auto& t : raw.hcomp_hmors) std::swap(t[0], t[1]);
  for (auto& t : raw.hcomp_squares) std::swap(t[0], t[1]);
  return raw;
}

RawDouble raw_verop(const DoubleCategory& d) {
  RawDouble raw = serialize_double(d);
  for (auto& v : raw.vmors) std::swap(v.src, v.tgt);
  for (auto& s : raw.squares) std::swap(s.top, s.bottom);
  for (auto& t : raw.vcomp_vmors) std::swap(t[0], t[1]);
  for (auto& t : raw.vcomp_squares) std::swap(t[0], t[1]);
  return raw;
}

}  // namespace

DblPtr horop(const DblPtr& d) { return validate_double(raw_horop(*d)); }
DblPtr verop(const DblPtr& d) { return validate_double(raw_verop(*d)); }

DblPtr swapop(const DblPtr& d) {
  RawDouble raw = serialize_double(*d);
  std::swap(raw.hmors, raw.vmors);
  std::swap(raw.h_identities, raw.v_identities);
  std::swap(raw.hcomp_hmors, raw.vcomp_vmors);
  std::swap(raw.hcomp_squares, raw.vcomp_squares);
  for (auto& s : raw.squares) {
    std::swap(s.top, s.left);
    std::swap(s.bottom, s.right);
  }
  std::swap(raw.vid_squares, raw.hid_squares);
  return validate_double(raw);
}

DblPtr fullop(const DblPtr& d) { return validate_double(raw_verop(*DoubleCategory::from_raw_unchecked(raw_horop(*d)))); }

// ---------------------------------------------------------------------------

std::vector<std::vector<Id>> grids(const DoubleCategory& d, int m, int n, Budget& budget) {
  std::vector<std::vector<Id>> out;
  std::vector<Id> cell(static_cast<size_t>(m) * n);
  // row-major backtracking; cell (i,j) must match the right edge of its left
  // neighbour and the bottom edge of the one above
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == m * n) {
      out.push_back(cell);
      return;
    }
    int i = pos / m, j = pos % m;
    const std::vector<Id>* candidates;
    if (i == 0 && j == 0) {
      candidates = nullptr;  // all squares
    } else if (i == 0) {
      candidates = &d.squares_with_left(d.right(cell[pos - 1]));
    } else {
      candidates = &d.squares_with_top(d.bottom(cell[(i - 1) * m + j]));
    }
    const int total = candidates ? static_cast<int>(candidates->size()) : d.square_count();
    for (int k = 0; k < total; ++k) {
      Id s = candidates ? (*candidates)[k] : k;
      budget.charge();
      if (j > 0 && d.left(s) != d.right(cell[pos - 1])) continue;
      if (i > 0 && d.top(s) != d.bottom(cell[(i - 1) * m + j])) continue;
      cell[pos] = s;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

long long grid_count(const DoubleCategory& d, int m, int n, Budget& budget) {
  if (m == 0 && n == 0) return d.object_count();
  if (n == 0) return nerve_chain_count(d.hcat(), m);
  if (m == 0) return nerve_chain_count(d.vcat(), n);
  long long count = 0;
  std::vector<Id> cell(static_cast<size_t>(m) * n);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == m * n) {
      ++count;
      return;
    }
    int i = pos / m, j = pos % m;
    const std::vector<Id>* candidates = nullptr;
    if (i > 0)
      candidates = &d.squares_with_top(d.bottom(cell[(i - 1) * m + j]));
    else if (j > 0)
      candidates = &d.squares_with_left(d.right(cell[pos - 1]));
    const int total = candidates ? static_cast<int>(candidates->size()) : d.square_count();
    for (int k = 0; k < total; ++k) {
      Id s = candidates ? (*candidates)[k] : k;
      budget.charge();
      if (j > 0 && d.left(s) != d.right(cell[pos - 1])) continue;
      if (i > 0 && d.top(s) != d.bottom(cell[(i - 1) * m + j])) continue;
      cell[pos] = s;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return count;
}

ChainCategory chain_category(const DblPtr& d, int n, Budget& budget) {
  ChainCategory out;
  out.chain_of_obj = nerve_chains(d->hcat(), n);
  std::map<std::vector<Id>, Id> obj_index;
  RawCategory raw;
  for (const auto& chain : out.chain_of_obj) {
    obj_index[chain] = static_cast<Id>(raw.objects.size());
    std::ostringstream name;
    for (Id h : chain) name << "." << h;
    raw.objects.push_back("c" + name.str());
  }

  // morphisms: n x 1 grids; for n = 0 these are the vertical morphisms
  std::map<std::vector<Id>, Id> mor_index;
  auto chain_top = [&](const std::vector<Id>& g) {
    std::vector<Id> chain;
    if (n == 0)
      chain.push_back(d->vsrc(g[0]));
    else
      for (Id s : g) chain.push_back(d->top(s));
    return chain;
  };
  auto chain_bottom = [&](const std::vector<Id>& g) {
    std::vector<Id> chain;
    if (n == 0)
      chain.push_back(d->vtgt(g[0]));
    else
      for (Id s : g) chain.push_back(d->bottom(s));
    return chain;
  };
  std::vector<std::vector<Id>> all_grids;
  if (n == 0) {
    for (Id v = 0; v < d->vmor_count(); ++v) all_grids.push_back({v});
  } else {
    all_grids = grids(*d, n, 1, budget);
  }
  for (const auto& g : all_grids) {
    mor_index[g] = static_cast<Id>(raw.morphisms.size());
    std::ostringstream name;
    for (Id s : g) name << "." << s;
    raw.morphisms.push_back({"g" + name.str(), obj_index.at(chain_top(g)), obj_index.at(chain_bottom(g))});
    out.grid_of_mor.push_back(g);
  }
  for (const auto& chain : out.chain_of_obj) {
    std::vector<Id> idg;
    if (n == 0)
      idg.push_back(d->v_identity(chain[0]));
    else
      for (Id h : chain) idg.push_back(d->vid_square(h));
    raw.identities.push_back(mor_index.at(idg));
  }
  for (const auto& g2 : out.grid_of_mor)
    for (const auto& g1 : out.grid_of_mor) {
      if (chain_top(g2) != chain_bottom(g1)) continue;
      std::vector<Id> composite(g1.size());
      for (size_t k = 0; k < g1.size(); ++k)
        composite[k] = n == 0 ? d->vcomp_v(g2[k], g1[k]) : d->vcomp_sq(g2[k], g1[k]);
      budget.charge();
      raw.composition.push_back({mor_index.at(g2), mor_index.at(g1), mor_index.at(composite)});
    }
  out.cat = validate_category(raw);
  return out;
}

// ---------------------------------------------------------------------------

CornerReport is_factorization_double(const DoubleCategory& d) {
  for (Id v = 0; v < d.vmor_count(); ++v)
    for (Id e : d.hcat().out(d.vtgt(v))) {
      int count = static_cast<int>(d.fillers(v, e).size());
      if (count != 1) {
        CornerReport report;
        report.verdict = false;
        report.corner_left = v;
        report.corner_bottom = e;
        report.filler_count = count;
        report.witness = "corner (left=" + std::to_string(v) + ", bottom=" + std::to_string(e) +
                         ") has " + std::to_string(count) + " fillers";
        return report;
      }
    }
  return {};
}

bool is_2category(const DoubleCategory& d) {
  for (Id v = 0; v < d.vmor_count(); ++v)
    if (!d.vcat().is_identity(v)) return false;
  return true;
}

// ---------------------------------------------------------------------------

Report check_dbl_functor(const DblFunctor& fun) {
  Report report;
  report.subject = "double functor";
  const auto& a = *fun.source;
  const auto& b = *fun.target;
  if (static_cast<int>(fun.obj_map.size()) != a.object_count() ||
      static_cast<int>(fun.hmor_map.size()) != a.hmor_count() ||
      static_cast<int>(fun.vmor_map.size()) != a.vmor_count() ||
      static_cast<int>(fun.sq_map.size()) != a.square_count()) {
    report.add("DanglingId", "map tables have wrong size");
    return report;
  }
  Report h = check_functor({a.hcat_ptr(), b.hcat_ptr(), fun.obj_map, fun.hmor_map});
  for (auto& issue : h.issues) report.add("horizontal:" + issue.code, issue.detail);
  Report v = check_functor({a.vcat_ptr(), b.vcat_ptr(), fun.obj_map, fun.vmor_map});
  for (auto& issue : v.issues) report.add("vertical:" + issue.code, issue.detail);
  if (!report.ok()) return report;

  for (Id s = 0; s < a.square_count(); ++s) {
    Id t = fun.sq_map[s];
    if (t < 0 || t >= b.square_count()) {
      report.add("DanglingId", "square " + std::to_string(s));
      continue;
    }
    if (b.top(t) != fun.hmor_map[a.top(s)] || b.bottom(t) != fun.hmor_map[a.bottom(s)] ||
        b.left(t) != fun.vmor_map[a.left(s)] || b.right(t) != fun.vmor_map[a.right(s)])
      report.add("BoundaryMismatch", "square " + std::to_string(s));
  }
  if (!report.ok()) return report;

  for (Id hm = 0; hm < a.hmor_count(); ++hm)
    if (fun.sq_map[a.vid_square(hm)] != b.vid_square(fun.hmor_map[hm]))
      report.add("IdentitySquareMismatch", "vid of hmor " + std::to_string(hm));
  for (Id vm = 0; vm < a.vmor_count(); ++vm)
    if (fun.sq_map[a.hid_square(vm)] != b.hid_square(fun.vmor_map[vm]))
      report.add("IdentitySquareMismatch", "hid of vmor " + std::to_string(vm));
  for (Id s2 = 0; s2 < a.square_count(); ++s2)
    for (Id s1 = 0; s1 < a.square_count(); ++s1) {
      if (a.hcomposable_sq(s2, s1) &&
          fun.sq_map[a.hcomp_sq(s2, s1)] != b.hcomp_sq(fun.sq_map[s2], fun.sq_map[s1]))
        report.add("CompositionNotPreserved",
                   "hcomp(" + std::to_string(s2) + "," + std::to_string(s1) + ")");
      if (a.vcomposable_sq(s2, s1) &&
          fun.sq_map[a.vcomp_sq(s2, s1)] != b.vcomp_sq(fun.sq_map[s2], fun.sq_map[s1]))
        report.add("CompositionNotPreserved",
                   "vcomp(" + std::to_string(s2) + "," + std::to_string(s1) + ")");
    }
  return report;
}

DblFunctor make_dbl_functor(DblPtr source, DblPtr target, std::vector<Id> obj_map,
                            std::vector<Id> hmor_map, std::vector<Id> vmor_map,
                            std::vector<Id> sq_map) {
  DblFunctor fun{std::move(source), std::move(target), std::move(obj_map), std::move(hmor_map),
                 std::move(vmor_map), std::move(sq_map)};
  Report report = check_dbl_functor(fun);
  if (!report.ok()) throw ValidationError(std::move(report));
  return fun;
}

DblFunctor identity_dbl_functor(const DblPtr& d) {
  DblFunctor fun;
  fun.source = fun.target = d;
  fun.obj_map.resize(d->object_count());
  fun.hmor_map.resize(d->hmor_count());
  fun.vmor_map.resize(d->vmor_count());
  fun.sq_map.resize(d->square_count());
  for (Id x = 0; x < d->object_count(); ++x) fun.obj_map[x] = x;
  for (Id h = 0; h < d->hmor_count(); ++h) fun.hmor_map[h] = h;
  for (Id v = 0; v < d->vmor_count(); ++v) fun.vmor_map[v] = v;
  for (Id s = 0; s < d->square_count(); ++s) fun.sq_map[s] = s;
  return fun;
}

DblFunctor compose_dbl_functors(const DblFunctor& g, const DblFunctor& f) {
  DblFunctor out;
  out.source = f.source;
  out.target = g.target;
  out.obj_map.resize(f.obj_map.size());
  out.hmor_map.resize(f.hmor_map.size());
  out.vmor_map.resize(f.vmor_map.size());
  out.sq_map.resize(f.sq_map.size());
  for (size_t i = 0; i < f.obj_map.size(); ++i) out.obj_map[i] = g.obj_map[f.obj_map[i]];
  for (size_t i = 0; i < f.hmor_map.size(); ++i) out.hmor_map[i] = g.hmor_map[f.hmor_map[i]];
  for (size_t i = 0; i < f.vmor_map.size(); ++i) out.vmor_map[i] = g.vmor_map[f.vmor_map[i]];
  for (size_t i = 0; i < f.sq_map.size(); ++i) out.sq_map[i] = g.sq_map[f.sq_map[i]];
  return out;
}

namespace {

bool is_permutation_onto(const std::vector<Id>& map, int target_size) {
  if (static_cast<int>(map.size()) != target_size) return false;
  std::vector<char> hit(target_size, 0);
  for (Id v : map) {
    if (v < 0 || v >= target_size || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

}  // namespace

bool is_dbl_isomorphism(const DblFunctor& fun) {
  if (!check_dbl_functor(fun).ok()) return false;
  return is_permutation_onto(fun.obj_map, fun.target->object_count()) &&
         is_permutation_onto(fun.hmor_map, fun.target->hmor_count()) &&
         is_permutation_onto(fun.vmor_map, fun.target->vmor_count()) &&
         is_permutation_onto(fun.sq_map, fun.target->square_count());
}

std::vector<DblFunctor> enumerate_dbl_functors(const DblPtr& a, const DblPtr& b, Budget& budget) {
  std::vector<DblFunctor> out;
  const int nobj = a->object_count();
  if (b->object_count() == 0) {
    if (nobj == 0) out.push_back(DblFunctor{a, b, {}, {}, {}, {}});
    return out;
  }

  std::vector<Id> obj(nobj), hmor(a->hmor_count(), kNone), vmor(a->vmor_count(), kNone),
      sq(a->square_count(), kNone);

  // composition triples indexed by largest id, for incremental checks
  auto h_triples = [&]() {
    std::vector<std::vector<std::array<Id, 3>>> by_max(a->hmor_count());
    for (Id g = 0; g < a->hmor_count(); ++g)
      for (Id f = 0; f < a->hmor_count(); ++f)
        if (a->hcat().composable(g, f)) {
          Id gf = a->hcomp_h(g, f);
          by_max[std::max({g, f, gf})].push_back({g, f, gf});
        }
    return by_max;
  }();
  auto v_triples = [&]() {
    std::vector<std::vector<std::array<Id, 3>>> by_max(a->vmor_count());
    for (Id g = 0; g < a->vmor_count(); ++g)
      for (Id f = 0; f < a->vmor_count(); ++f)
        if (a->vcat().composable(g, f)) {
          Id gf = a->vcomp_v(g, f);
          by_max[std::max({g, f, gf})].push_back({g, f, gf});
        }
    return by_max;
  }();
  auto sq_triples = [&]() {
    std::vector<std::vector<std::array<Id, 4>>> by_max(a->square_count());  // (kind,g,f,gf)
    for (Id g = 0; g < a->square_count(); ++g)
      for (Id f = 0; f < a->square_count(); ++f) {
        if (a->hcomposable_sq(g, f)) {
          Id gf = a->hcomp_sq(g, f);
          by_max[std::max({g, f, gf})].push_back({0, g, f, gf});
        }
        if (a->vcomposable_sq(g, f)) {
          Id gf = a->vcomp_sq(g, f);
          by_max[std::max({g, f, gf})].push_back({1, g, f, gf});
        }
      }
    return by_max;
  }();

  // per-object lists of edges whose endpoints become fully assigned at x
  std::vector<std::vector<std::pair<Id, char>>> edges_ready(nobj);
  for (Id h = 0; h < a->hmor_count(); ++h)
    edges_ready[std::max(a->hsrc(h), a->htgt(h))].push_back({h, 'h'});
  for (Id v = 0; v < a->vmor_count(); ++v)
    edges_ready[std::max(a->vsrc(v), a->vtgt(v))].push_back({v, 'v'});

  std::vector<Id> vid_of(a->square_count(), kNone), hid_of(a->square_count(), kNone);
  for (Id h = 0; h < a->hmor_count(); ++h) vid_of[a->vid_square(h)] = h;
  for (Id v = 0; v < a->vmor_count(); ++v) hid_of[a->hid_square(v)] = v;

  auto assign_squares = [&](auto&& self, Id s) -> void {
    if (s == a->square_count()) {
      out.push_back(DblFunctor{a, b, obj, hmor, vmor, sq});
      return;
    }
    std::array<Id, 4> want{hmor[a->top(s)], hmor[a->bottom(s)], vmor[a->left(s)], vmor[a->right(s)]};
    const auto& candidates = b->squares_with_boundary(want[0], want[1], want[2], want[3]);
    for (Id t : candidates) {
      budget.charge();
      sq[s] = t;
      bool ok = true;
      if (vid_of[s] != kNone && b->vid_square(hmor[vid_of[s]]) != t) ok = false;
      if (ok && hid_of[s] != kNone && b->hid_square(vmor[hid_of[s]]) != t) ok = false;
      for (const auto& tr : sq_triples[s]) {
        if (!ok) break;
        Id img = tr[0] == 0 ? b->hcomp_sq(sq[tr[1]], sq[tr[2]]) : b->vcomp_sq(sq[tr[1]], sq[tr[2]]);
        if (img != sq[tr[3]]) ok = false;
      }
      if (ok) self(self, s + 1);
    }
    sq[s] = kNone;
  };

  auto assign_vmors = [&](auto&& self, Id v) -> void {
    if (v == a->vmor_count()) {
      assign_squares(assign_squares, 0);
      return;
    }
    const bool forced = a->vcat().is_identity(v);
    const auto& candidates = forced ? std::vector<Id>{b->v_identity(obj[a->vsrc(v)])}
                                    : b->vcat().hom(obj[a->vsrc(v)], obj[a->vtgt(v)]);
    for (Id w : candidates) {
      budget.charge();
      vmor[v] = w;
      bool ok = true;
      for (const auto& tr : v_triples[v])
        if (b->vcomp_v(vmor[tr[0]], vmor[tr[1]]) != vmor[tr[2]]) {
          ok = false;
          break;
        }
      if (ok) self(self, v + 1);
    }
    vmor[v] = kNone;
  };

  auto assign_hmors = [&](auto&& self, Id h) -> void {
    if (h == a->hmor_count()) {
      assign_vmors(assign_vmors, 0);
      return;
    }
    const bool forced = a->hcat().is_identity(h);
    const auto& candidates = forced ? std::vector<Id>{b->h_identity(obj[a->hsrc(h)])}
                                    : b->hcat().hom(obj[a->hsrc(h)], obj[a->htgt(h)]);
    for (Id g : candidates) {
      budget.charge();
      hmor[h] = g;
      bool ok = true;
      for (const auto& tr : h_triples[h])
        if (b->hcomp_h(hmor[tr[0]], hmor[tr[1]]) != hmor[tr[2]]) {
          ok = false;
          break;
        }
      if (ok) self(self, h + 1);
    }
    hmor[h] = kNone;
  };

  auto assign_objs = [&](auto&& self, Id x) -> void {
    if (x == nobj) {
      assign_hmors(assign_hmors, 0);
      return;
    }
    for (Id y = 0; y < b->object_count(); ++y) {
      budget.charge();
      obj[x] = y;
      bool ok = true;
      for (const auto& [e, kind] : edges_ready[x]) {
        if (kind == 'h' && b->hcat().hom(obj[a->hsrc(e)], obj[a->htgt(e)]).empty()) ok = false;
        if (kind == 'v' && b->vcat().hom(obj[a->vsrc(e)], obj[a->vtgt(e)]).empty()) ok = false;
        if (!ok) break;
      }
      if (ok) self(self, x + 1);
    }
  };
  assign_objs(assign_objs, 0);
  return out;
}

DblFunctor complete_dbl_functor(const DblPtr& a, const DblPtr& b, const EdgeMaps& edges) {
  std::vector<Id> sq_map(a->square_count(), kNone);
  Report report;
  report.subject = "double functor completion";
  for (Id s = 0; s < a->square_count(); ++s) {
    const auto& candidates = b->squares_with_boundary(
        edges.hmor_map[a->top(s)], edges.hmor_map[a->bottom(s)], edges.vmor_map[a->left(s)],
        edges.vmor_map[a->right(s)]);
    if (candidates.size() != 1) {
      report.add("SquareNotDetermined", "square " + std::to_string(s) + " has " +
                                            std::to_string(candidates.size()) + " images");
      continue;
    }
    sq_map[s] = candidates[0];
  }
  if (!report.ok()) throw ValidationError(std::move(report));
  return make_dbl_functor(a, b, edges.obj_map, edges.hmor_map, edges.vmor_map, sq_map);
}

}  // namespace duocat
