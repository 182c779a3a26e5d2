#include "duocat/bisim.hpp"

#include <map>
#include <string>

namespace duocat {

namespace {

using Key = std::vector<Id>;
using Index = std::map<Key, Id>;

Id lookup(const Index& index, const Key& key) { return index.at(key); }

}  // namespace

BisimTrunc truncate_double(const DoubleCategory& d, Budget& budget) {
  BisimTrunc b;

  // elements per level, as canonical key vectors
  std::vector<Key> elems[3][3];
  Index index[3][3];
  for (int m = 0; m <= 2; ++m) {
    for (int n = 0; n <= 2; ++n) {
      if (m == 0 && n == 0) {
        for (Id x = 0; x < d.object_count(); ++x) elems[m][n].push_back({x});
      } else if (n == 0) {
        elems[m][n] = nerve_chains(d.hcat(), m);
      } else if (m == 0) {
        elems[m][n] = nerve_chains(d.vcat(), n);
      } else {
        elems[m][n] = grids(d, m, n, budget);
      }
      for (Id k = 0; k < static_cast<Id>(elems[m][n].size()); ++k)
        index[m][n][elems[m][n][k]] = k;
      b.size[m][n] = static_cast<int>(elems[m][n].size());
    }
  }

  // ---- horizontal faces
  auto set_hface = [&](int m, int n, int i, auto&& image) {
    auto& table = b.hface[m][n][i];
    table.resize(elems[m][n].size());
    for (size_t k = 0; k < elems[m][n].size(); ++k)
      table[k] = lookup(index[m - 1][n], image(elems[m][n][k]));
  };
  for (int n = 0; n <= 2; ++n) {
    // m = 1: d_1 = source side, d_0 = target side
    set_hface(1, n, 0, [&](const Key& e) -> Key {
      if (n == 0) return {d.htgt(e[0])};
      Key out;
      for (Id s : e) out.push_back(d.right(s));
      return out;
    });
    set_hface(1, n, 1, [&](const Key& e) -> Key {
      if (n == 0) return {d.hsrc(e[0])};
      Key out;
      for (Id s : e) out.push_back(d.left(s));
      return out;
    });
    // m = 2: elements are width-2 rows (row-major), faces drop or compose
    set_hface(2, n, 0, [&](const Key& e) -> Key {
      Key out;
      for (int r = 0; r < std::max(n, 1); ++r) out.push_back(e[2 * r + 1]);
      if (n == 0) out = {e[1]};
      return out;
    });
    set_hface(2, n, 1, [&](const Key& e) -> Key {
      if (n == 0) return {d.hcomp_h(e[1], e[0])};
      Key out;
      for (int r = 0; r < n; ++r) out.push_back(d.hcomp_sq(e[2 * r + 1], e[2 * r]));
      return out;
    });
    set_hface(2, n, 2, [&](const Key& e) -> Key {
      if (n == 0) return {e[0]};
      Key out;
      for (int r = 0; r < n; ++r) out.push_back(e[2 * r]);
      return out;
    });
  }

  // ---- vertical faces
  auto set_vface = [&](int m, int n, int j, auto&& image) {
    auto& table = b.vface[m][n][j];
    table.resize(elems[m][n].size());
    for (size_t k = 0; k < elems[m][n].size(); ++k)
      table[k] = lookup(index[m][n - 1], image(elems[m][n][k]));
  };
  for (int m = 0; m <= 2; ++m) {
    const int w = std::max(m, 1);
    set_vface(m, 1, 0, [&](const Key& e) -> Key {
      if (m == 0) return {d.vtgt(e[0])};
      Key out;
      for (int c = 0; c < m; ++c) out.push_back(d.bottom(e[c]));
      return out;
    });
    set_vface(m, 1, 1, [&](const Key& e) -> Key {
      if (m == 0) return {d.vsrc(e[0])};
      Key out;
      for (int c = 0; c < m; ++c) out.push_back(d.top(e[c]));
      return out;
    });
    set_vface(m, 2, 0, [&](const Key& e) -> Key {
      if (m == 0) return {e[1]};
      return Key(e.begin() + w, e.end());  // bottom row
    });
    set_vface(m, 2, 1, [&](const Key& e) -> Key {
      if (m == 0) return {d.vcomp_v(e[1], e[0])};
      Key out;
      for (int c = 0; c < m; ++c) out.push_back(d.vcomp_sq(e[w + c], e[c]));
      return out;
    });
    set_vface(m, 2, 2, [&](const Key& e) -> Key {
      if (m == 0) return {e[0]};
      return Key(e.begin(), e.begin() + w);  // top row
    });
  }

  // ---- horizontal degeneracies: insert an identity column
  auto set_hdeg = [&](int m, int n, int i, auto&& image) {
    auto& table = b.hdeg[m][n][i];
    table.resize(elems[m][n].size());
    for (size_t k = 0; k < elems[m][n].size(); ++k)
      table[k] = lookup(index[m + 1][n], image(elems[m][n][k]));
  };
  for (int n = 0; n <= 2; ++n) {
    set_hdeg(0, n, 0, [&](const Key& e) -> Key {
      if (n == 0) return {d.h_identity(e[0])};
      Key out;
      for (Id v : e) out.push_back(d.hid_square(v));
      return out;
    });
    set_hdeg(1, n, 0, [&](const Key& e) -> Key {
      if (n == 0) return {d.h_identity(d.hsrc(e[0])), e[0]};
      Key out;
      for (int r = 0; r < n; ++r) {
        out.push_back(d.hid_square(d.left(e[r])));
        out.push_back(e[r]);
      }
      return out;
    });
    set_hdeg(1, n, 1, [&](const Key& e) -> Key {
      if (n == 0) return {e[0], d.h_identity(d.htgt(e[0]))};
      Key out;
      for (int r = 0; r < n; ++r) {
        out.push_back(e[r]);
        out.push_back(d.hid_square(d.right(e[r])));
      }
      return out;
    });
  }

  // ---- vertical degeneracies: insert an identity row
  auto set_vdeg = [&](int m, int n, int j, auto&& image) {
    auto& table = b.vdeg[m][n][j];
    table.resize(elems[m][n].size());
    for (size_t k = 0; k < elems[m][n].size(); ++k)
      table[k] = lookup(index[m][n + 1], image(elems[m][n][k]));
  };
  for (int m = 0; m <= 2; ++m) {
    const int w = std::max(m, 1);
    set_vdeg(m, 0, 0, [&](const Key& e) -> Key {
      if (m == 0) return {d.v_identity(e[0])};
      Key out;
      for (int c = 0; c < m; ++c) out.push_back(d.vid_square(e[c]));
      return out;
    });
    set_vdeg(m, 1, 0, [&](const Key& e) -> Key {
      if (m == 0) return {d.v_identity(d.vsrc(e[0])), e[0]};
      Key out;
      for (int c = 0; c < m; ++c) out.push_back(d.vid_square(d.top(e[c])));
      for (int c = 0; c < w; ++c) out.push_back(e[c]);
      return out;
    });
    set_vdeg(m, 1, 1, [&](const Key& e) -> Key {
      if (m == 0) return {e[0], d.v_identity(d.vtgt(e[0]))};
      Key out;
      for (int c = 0; c < w; ++c) out.push_back(e[c]);
      for (int c = 0; c < m; ++c) out.push_back(d.vid_square(d.bottom(e[c])));
      return out;
    });
  }
  return b;
}

namespace {

struct MapRef {
  char dir;           // 'h' or 'v'
  char kind;          // 'f' face, 'd' degeneracy
  int index;
  int m, n;           // domain level
  const std::vector<Id>* table;
  int tm, tn;         // codomain level
};

std::vector<MapRef> all_maps(const BisimTrunc& b) {
  std::vector<MapRef> maps;
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n) {
      for (int i = 0; i <= m && m >= 1; ++i)
        maps.push_back({'h', 'f', i, m, n, &b.hface[m][n][i], m - 1, n});
      for (int j = 0; j <= n && n >= 1; ++j)
        maps.push_back({'v', 'f', j, m, n, &b.vface[m][n][j], m, n - 1});
      if (m <= 1)
        for (int i = 0; i <= m; ++i)
          maps.push_back({'h', 'd', i, m, n, &b.hdeg[m][n][i], m + 1, n});
      if (n <= 1)
        for (int j = 0; j <= n; ++j)
          maps.push_back({'v', 'd', j, m, n, &b.vdeg[m][n][j], m, n + 1});
    }
  return maps;
}

bool tables_present(const BisimTrunc& b) {
  for (const auto& map : all_maps(b))
    if (static_cast<int>(map.table->size()) != b.size[map.m][map.n]) return false;
  return true;
}

}  // namespace

Report check_bisim(const BisimTrunc& b) {
  Report report;
  report.subject = "bisimplicial truncation";
  if (!tables_present(b)) {
    report.add("DanglingId", "a face or degeneracy table has the wrong size");
    return report;
  }
  auto maps = all_maps(b);
  for (const auto& f : maps)
    for (Id k = 0; k < b.size[f.m][f.n]; ++k)
      if ((*f.table)[k] < 0 || (*f.table)[k] >= b.size[f.tm][f.tn]) {
        report.add("DanglingId", "map image out of range");
        return report;
      }

  auto compose_eq = [&](const MapRef& second, const MapRef& first, const MapRef& second2,
                        const MapRef& first2, const std::string& label) {
    for (Id k = 0; k < b.size[first.m][first.n]; ++k)
      if ((*second.table)[(*first.table)[k]] != (*second2.table)[(*first2.table)[k]]) {
        report.add("SimplicialIdentityFailure", label + " at element " + std::to_string(k));
        return;
      }
  };

  for (int n = 0; n <= 2; ++n) {
    // d_i d_j = d_{j-1} d_i for i < j on the m = 2 column
    for (int j = 1; j <= 2; ++j)
      for (int i = 0; i < j; ++i)
        compose_eq({'h', 'f', i, 1, n, &b.hface[1][n][i], 0, n},
                   {'h', 'f', j, 2, n, &b.hface[2][n][j], 1, n},
                   {'h', 'f', j - 1, 1, n, &b.hface[1][n][j - 1], 0, n},
                   {'h', 'f', i, 2, n, &b.hface[2][n][i], 1, n},
                   "h d" + std::to_string(i) + " d" + std::to_string(j));
    // d_i s_0 and d_i s_1 relations on m = 0, 1
    for (Id k = 0; k < b.size[0][n]; ++k) {
      if (b.hface[1][n][0][b.hdeg[0][n][0][k]] != k || b.hface[1][n][1][b.hdeg[0][n][0][k]] != k)
        report.add("SimplicialIdentityFailure", "h d s = id at level (0," + std::to_string(n) + ")");
    }
    for (Id k = 0; k < b.size[1][n]; ++k) {
      Id s0 = b.hdeg[1][n][0][k], s1 = b.hdeg[1][n][1][k];
      bool ok = b.hface[2][n][0][s0] == k && b.hface[2][n][1][s0] == k &&
                b.hface[2][n][1][s1] == k && b.hface[2][n][2][s1] == k &&
                b.hface[2][n][2][s0] == b.hdeg[0][n][0][b.hface[1][n][1][k]] &&
                b.hface[2][n][0][s1] == b.hdeg[0][n][0][b.hface[1][n][0][k]];
      if (!ok)
        report.add("SimplicialIdentityFailure", "h d s at level (1," + std::to_string(n) + ")");
    }
    // s_0 s_0 = s_1 s_0
    for (Id k = 0; k < b.size[0][n]; ++k)
      if (b.hdeg[1][n][0][b.hdeg[0][n][0][k]] != b.hdeg[1][n][1][b.hdeg[0][n][0][k]])
        report.add("SimplicialIdentityFailure", "h s s at level (0," + std::to_string(n) + ")");
  }
  for (int m = 0; m <= 2; ++m) {
    for (int j = 1; j <= 2; ++j)
      for (int i = 0; i < j; ++i)
        compose_eq({'v', 'f', i, m, 1, &b.vface[m][1][i], m, 0},
                   {'v', 'f', j, m, 2, &b.vface[m][2][j], m, 1},
                   {'v', 'f', j - 1, m, 1, &b.vface[m][1][j - 1], m, 0},
                   {'v', 'f', i, m, 2, &b.vface[m][2][i], m, 1},
                   "v d" + std::to_string(i) + " d" + std::to_string(j));
    for (Id k = 0; k < b.size[m][0]; ++k)
      if (b.vface[m][1][0][b.vdeg[m][0][0][k]] != k || b.vface[m][1][1][b.vdeg[m][0][0][k]] != k)
        report.add("SimplicialIdentityFailure", "v d s = id at level (" + std::to_string(m) + ",0)");
    for (Id k = 0; k < b.size[m][1]; ++k) {
      Id s0 = b.vdeg[m][1][0][k], s1 = b.vdeg[m][1][1][k];
      bool ok = b.vface[m][2][0][s0] == k && b.vface[m][2][1][s0] == k &&
                b.vface[m][2][1][s1] == k && b.vface[m][2][2][s1] == k &&
                b.vface[m][2][2][s0] == b.vdeg[m][0][0][b.vface[m][1][1][k]] &&
                b.vface[m][2][0][s1] == b.vdeg[m][0][0][b.vface[m][1][0][k]];
      if (!ok)
        report.add("SimplicialIdentityFailure", "v d s at level (" + std::to_string(m) + ",1)");
    }
    for (Id k = 0; k < b.size[m][0]; ++k)
      if (b.vdeg[m][1][0][b.vdeg[m][0][0][k]] != b.vdeg[m][1][1][b.vdeg[m][0][0][k]])
        report.add("SimplicialIdentityFailure", "v s s at level (" + std::to_string(m) + ",0)");
  }

  // horizontal and vertical structure maps commute
  auto find_map = [&](char dir, char kind, int index, int m, int n) -> const std::vector<Id>* {
    for (const auto& map : maps)
      if (map.dir == dir && map.kind == kind && map.index == index && map.m == m && map.n == n)
        return map.table;
    return nullptr;
  };
  for (const auto& hm : maps) {
    if (hm.dir != 'h') continue;
    for (const auto& vm : maps) {
      if (vm.dir != 'v' || vm.m != hm.tm || vm.n != hm.tn) continue;
      const auto* vm_first = find_map('v', vm.kind, vm.index, hm.m, hm.n);
      const auto* hm_second = find_map('h', hm.kind, hm.index, hm.m, vm.tn);
      if (!vm_first || !hm_second) continue;
      for (Id k = 0; k < b.size[hm.m][hm.n]; ++k)
        if ((*vm.table)[(*hm.table)[k]] != (*hm_second)[(*vm_first)[k]]) {
          report.add("SimplicialIdentityFailure",
                     "h/v commutation at level (" + std::to_string(hm.m) + "," +
                         std::to_string(hm.n) + ")");
          break;
        }
    }
  }
  return report;
}

DblPtr bisim_to_double(const BisimTrunc& b) {
  if (!tables_present(b)) {
    Report pre;
    pre.subject = "segal extraction";
    pre.add("DanglingId", "a face or degeneracy table has the wrong size");
    throw ValidationError(std::move(pre));
  }
  Report report;
  report.subject = "segal extraction";

  // Segal bijection checker: level elements -> pairs of composable faces
  auto segal = [&](int m, int n, bool horizontal, const std::string& where) {
    std::map<std::pair<Id, Id>, int> hits;
    const auto& outer = horizontal ? b.hface[m][n][2] : b.vface[m][n][2];
    const auto& inner = horizontal ? b.hface[m][n][0] : b.vface[m][n][0];
    const auto& glue_first = horizontal ? b.hface[m - 2 + 1][n][0] : b.vface[m][n - 2 + 1][0];
    const auto& glue_second = horizontal ? b.hface[m - 1][n][1] : b.vface[m][n - 1][1];
    for (Id k = 0; k < b.size[m][n]; ++k) ++hits[{outer[k], inner[k]}];
    long long expected = 0;
    int lower_m = horizontal ? m - 1 : m;
    int lower_n = horizontal ? n : n - 1;
    for (Id f = 0; f < b.size[lower_m][lower_n]; ++f)
      for (Id g = 0; g < b.size[lower_m][lower_n]; ++g)
        if (glue_first[f] == glue_second[g]) {
          ++expected;
          auto it = hits.find({f, g});
          if (it == hits.end() || it->second != 1) {
            report.add("SegalFailure", where + ": pair (" + std::to_string(f) + "," +
                                           std::to_string(g) + ") has " +
                                           std::to_string(it == hits.end() ? 0 : it->second) +
                                           " preimages");
            return;
          }
        }
    if (expected != b.size[m][n])
      report.add("SegalFailure", where + ": level has " + std::to_string(b.size[m][n]) +
                                     " elements, expected " + std::to_string(expected));
  };
  segal(2, 0, true, "(2,0)");
  segal(0, 2, false, "(0,2)");
  segal(2, 1, true, "(2,1)");
  segal(1, 2, false, "(1,2)");
  segal(2, 2, true, "(2,2)");
  if (!report.ok()) throw ValidationError(std::move(report));

  // extract tables
  RawDouble raw;
  for (Id x = 0; x < b.size[0][0]; ++x) raw.objects.push_back(std::to_string(x));
  for (Id h = 0; h < b.size[1][0]; ++h)
    raw.hmors.push_back({"h" + std::to_string(h), b.hface[1][0][1][h], b.hface[1][0][0][h]});
  for (Id v = 0; v < b.size[0][1]; ++v)
    raw.vmors.push_back({"v" + std::to_string(v), b.vface[0][1][1][v], b.vface[0][1][0][v]});
  for (Id x = 0; x < b.size[0][0]; ++x) {
    raw.h_identities.push_back(b.hdeg[0][0][0][x]);
    raw.v_identities.push_back(b.vdeg[0][0][0][x]);
  }
  for (Id s = 0; s < b.size[1][1]; ++s)
    raw.squares.push_back({"s" + std::to_string(s), b.vface[1][1][1][s], b.vface[1][1][0][s],
                           b.hface[1][1][1][s], b.hface[1][1][0][s]});
  for (Id h = 0; h < b.size[1][0]; ++h) raw.vid_squares.push_back(b.vdeg[1][0][0][h]);
  for (Id v = 0; v < b.size[0][1]; ++v) raw.hid_squares.push_back(b.hdeg[0][1][0][v]);

  // compositions from the Segal levels: the pair (d_2, d_0) determines the
  // element, d_1 is the composite
  auto extract = [&](int m, int n, bool horizontal, auto&& emit) {
    const auto& outer = horizontal ? b.hface[m][n][2] : b.vface[m][n][2];
    const auto& inner = horizontal ? b.hface[m][n][0] : b.vface[m][n][0];
    const auto& mid = horizontal ? b.hface[m][n][1] : b.vface[m][n][1];
    for (Id k = 0; k < b.size[m][n]; ++k) emit(inner[k], outer[k], mid[k]);
  };
  extract(2, 0, true, [&](Id g, Id f, Id gf) { raw.hcomp_hmors.push_back({g, f, gf}); });
  extract(0, 2, false, [&](Id g, Id f, Id gf) { raw.vcomp_vmors.push_back({g, f, gf}); });
  extract(2, 1, true, [&](Id g, Id f, Id gf) { raw.hcomp_squares.push_back({g, f, gf}); });
  extract(1, 2, false, [&](Id g, Id f, Id gf) { raw.vcomp_squares.push_back({g, f, gf}); });

  Report axioms = check_double(raw);
  if (!axioms.ok()) {
    Report wrapped;
    wrapped.subject = "segal extraction";
    wrapped.add("NonAssociativeExtraction", axioms.summary());
    throw ValidationError(std::move(wrapped));
  }
  return DoubleCategory::from_raw_unchecked(raw);
}

}  // namespace duocat
