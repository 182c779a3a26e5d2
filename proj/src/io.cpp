#include "duocat/io.hpp"

#include <fstream>
#include <json.hpp>

namespace duocat {

namespace {

using nlohmann::json;

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << text;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

Id require_id(const json& j, const char* what, long long limit) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " is not an integer");
  long long v = j.get<long long>();
  if (v < 0 || v >= limit)
    throw ParseError(std::string(what) + " id " + std::to_string(v) + " out of range");
  return static_cast<Id>(v);
}

const json& require_key(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key \"") + key + "\"");
  return *it;
}

std::vector<RawCategory::RawMor> parse_mors(const json& arr, size_t nobj, const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + " is not an array");
  std::vector<RawCategory::RawMor> out;
  for (const auto& m : arr) {
    RawCategory::RawMor mor;
    mor.name = require_key(m, "name").get<std::string>();
    mor.src = require_id(require_key(m, "src"), what, static_cast<long long>(nobj));
    mor.tgt = require_id(require_key(m, "tgt"), what, static_cast<long long>(nobj));
    out.push_back(std::move(mor));
  }
  return out;
}

std::vector<Id> parse_identity_map(const json& obj, size_t nobj, size_t nmor, const char* what) {
  if (!obj.is_object()) throw ParseError(std::string(what) + " is not an object");
  std::vector<Id> out(nobj, kNone);
  for (const auto& [key, value] : obj.items()) {
    long long x = std::stoll(key);
    if (x < 0 || x >= static_cast<long long>(nobj))
      throw ParseError(std::string(what) + " key " + key + " out of range");
    out[static_cast<size_t>(x)] = require_id(value, what, static_cast<long long>(nmor));
  }
  for (Id v : out)
    if (v == kNone) throw ParseError(std::string(what) + " is missing an entry");
  return out;
}

std::vector<std::array<Id, 3>> parse_triples(const json& arr, size_t nmor, const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + " is not an array");
  std::vector<std::array<Id, 3>> out;
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 3)
      throw ParseError(std::string(what) + " entry is not a triple");
    out.push_back({require_id(t[0], what, static_cast<long long>(nmor)),
                   require_id(t[1], what, static_cast<long long>(nmor)),
                   require_id(t[2], what, static_cast<long long>(nmor))});
  }
  return out;
}

std::vector<Id> parse_id_array(const json& arr, long long limit, const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + " is not an array");
  std::vector<Id> out;
  for (const auto& v : arr) out.push_back(require_id(v, what, limit));
  return out;
}

RawCategory parse_category(const json& j) {
  RawCategory raw;
  for (const auto& name : require_key(j, "objects")) raw.objects.push_back(name.get<std::string>());
  raw.morphisms = parse_mors(require_key(j, "morphisms"), raw.objects.size(), "morphism");
  raw.identities = parse_identity_map(require_key(j, "identities"), raw.objects.size(),
                                      raw.morphisms.size(), "identities");
  raw.composition = parse_triples(require_key(j, "composition"), raw.morphisms.size(), "composition");
  return raw;
}

json emit_mors(const std::vector<RawCategory::RawMor>& mors) {
  json arr = json::array();
  for (const auto& m : mors) arr.push_back({{"name", m.name}, {"src", m.src}, {"tgt", m.tgt}});
  return arr;
}

json emit_identity_map(const std::vector<Id>& ids) {
  json obj = json::object();
  for (size_t x = 0; x < ids.size(); ++x) obj[std::to_string(x)] = ids[x];
  return obj;
}

json emit_triples(const std::vector<std::array<Id, 3>>& triples) {
  json arr = json::array();
  for (const auto& t : triples) arr.push_back({t[0], t[1], t[2]});
  return arr;
}

json emit_category(const RawCategory& raw) {
  json j;
  j["objects"] = raw.objects;
  j["morphisms"] = emit_mors(raw.morphisms);
  j["identities"] = emit_identity_map(raw.identities);
  j["composition"] = emit_triples(raw.composition);
  return j;
}

json emit_functor_maps(const Functor& fun) {
  return json{{"obj_map", fun.obj_map}, {"mor_map", fun.mor_map}};
}

}  // namespace

CatPtr load_category(const std::filesystem::path& path) {
  return validate_category(parse_category(read_json(path)));
}

void save_category(const std::filesystem::path& path, const FinCategory& cat) {
  write_text(path, canonical_dump(emit_category(serialize(cat))));
}

OfsPtr load_ofs(const std::filesystem::path& path) {
  json j = read_json(path);
  CatPtr cat = validate_category(parse_category(j));
  auto eg_ids = parse_id_array(require_key(j, "egressive"), cat->morphism_count(), "egressive");
  auto in_ids = parse_id_array(require_key(j, "ingressive"), cat->morphism_count(), "ingressive");
  MorClass eg(cat->morphism_count(), 0), in(cat->morphism_count(), 0);
  for (Id f : eg_ids) eg[f] = 1;
  for (Id f : in_ids) in[f] = 1;
  return validate_ofs(cat, eg, in);
}

void save_ofs(const std::filesystem::path& path, const FactorizationSystem& fs) {
  json j = emit_category(serialize(fs.base()));
  json eg = json::array(), in = json::array();
  for (Id f = 0; f < fs.base().morphism_count(); ++f) {
    if (fs.egressive(f)) eg.push_back(f);
    if (fs.ingressive(f)) in.push_back(f);
  }
  j["egressive"] = eg;
  j["ingressive"] = in;
  write_text(path, canonical_dump(j));
}

namespace {

RawDouble parse_double(const json& j) {
  RawDouble raw;
  for (const auto& name : require_key(j, "objects")) raw.objects.push_back(name.get<std::string>());
  raw.hmors = parse_mors(require_key(j, "hmors"), raw.objects.size(), "hmor");
  raw.vmors = parse_mors(require_key(j, "vmors"), raw.objects.size(), "vmor");
  raw.h_identities = parse_identity_map(require_key(j, "h_identities"), raw.objects.size(),
                                        raw.hmors.size(), "h_identities");
  raw.v_identities = parse_identity_map(require_key(j, "v_identities"), raw.objects.size(),
                                        raw.vmors.size(), "v_identities");
  for (const auto& s : require_key(j, "squares")) {
    RawDouble::RawSquare sq;
    sq.name = require_key(s, "name").get<std::string>();
    sq.top = require_id(require_key(s, "top"), "square top", raw.hmors.size());
    sq.bottom = require_id(require_key(s, "bottom"), "square bottom", raw.hmors.size());
    sq.left = require_id(require_key(s, "left"), "square left", raw.vmors.size());
    sq.right = require_id(require_key(s, "right"), "square right", raw.vmors.size());
    raw.squares.push_back(std::move(sq));
  }
  raw.vid_squares = parse_identity_map(require_key(j, "vid_squares"), raw.hmors.size(),
                                       raw.squares.size(), "vid_squares");
  raw.hid_squares = parse_identity_map(require_key(j, "hid_squares"), raw.vmors.size(),
                                       raw.squares.size(), "hid_squares");
  raw.hcomp_hmors = parse_triples(require_key(j, "hcomp_hmors"), raw.hmors.size(), "hcomp_hmors");
  raw.vcomp_vmors = parse_triples(require_key(j, "vcomp_vmors"), raw.vmors.size(), "vcomp_vmors");
  raw.hcomp_squares =
      parse_triples(require_key(j, "hcomp_squares"), raw.squares.size(), "hcomp_squares");
  raw.vcomp_squares =
      parse_triples(require_key(j, "vcomp_squares"), raw.squares.size(), "vcomp_squares");
  return raw;
}

json emit_double(const RawDouble& raw) {
  json j;
  j["objects"] = raw.objects;
  j["hmors"] = emit_mors(raw.hmors);
  j["vmors"] = emit_mors(raw.vmors);
  j["h_identities"] = emit_identity_map(raw.h_identities);
  j["v_identities"] = emit_identity_map(raw.v_identities);
  json squares = json::array();
  for (const auto& s : raw.squares)
    squares.push_back({{"name", s.name},
                       {"top", s.top},
                       {"bottom", s.bottom},
                       {"left", s.left},
                       {"right", s.right}});
  j["squares"] = squares;
  j["vid_squares"] = emit_identity_map(raw.vid_squares);
  j["hid_squares"] = emit_identity_map(raw.hid_squares);
  j["hcomp_hmors"] = emit_triples(raw.hcomp_hmors);
  j["vcomp_vmors"] = emit_triples(raw.vcomp_vmors);
  j["hcomp_squares"] = emit_triples(raw.hcomp_squares);
  j["vcomp_squares"] = emit_triples(raw.vcomp_squares);
  return j;
}

}  // namespace

DblPtr load_double(const std::filesystem::path& path) {
  return validate_double(parse_double(read_json(path)));
}

void save_double(const std::filesystem::path& path, const DoubleCategory& d) {
  write_text(path, canonical_dump(emit_double(serialize_double(d))));
}

DblFunctor load_dbl_functor(const std::filesystem::path& path) {
  json j = read_json(path);
  auto dir = path.parent_path();
  DblFunctor fun;
  fun.source = load_double(dir / require_key(j, "source").get<std::string>());
  fun.target = load_double(dir / require_key(j, "target").get<std::string>());
  fun.obj_map = parse_id_array(require_key(j, "obj_map"), fun.target->object_count(), "obj_map");
  fun.hmor_map = parse_id_array(require_key(j, "hmor_map"), fun.target->hmor_count(), "hmor_map");
  fun.vmor_map = parse_id_array(require_key(j, "vmor_map"), fun.target->vmor_count(), "vmor_map");
  fun.sq_map =
      parse_id_array(require_key(j, "square_map"), fun.target->square_count(), "square_map");
  Report report = check_dbl_functor(fun);
  if (!report.ok()) throw ValidationError(std::move(report));
  return fun;
}

void save_dbl_functor(const std::filesystem::path& path, const DblFunctor& fun,
                      const std::string& source_rel, const std::string& target_rel) {
  auto dir = path.parent_path();
  save_double(dir / source_rel, *fun.source);
  save_double(dir / target_rel, *fun.target);
  json j;
  j["source"] = source_rel;
  j["target"] = target_rel;
  j["obj_map"] = fun.obj_map;
  j["hmor_map"] = fun.hmor_map;
  j["vmor_map"] = fun.vmor_map;
  j["square_map"] = fun.sq_map;
  write_text(path, canonical_dump(j));
}

DblIndexing load_indexing(const std::filesystem::path& path) {
  json j = read_json(path);
  auto dir = path.parent_path();
  DblIndexing x;
  x.base = load_double(dir / require_key(j, "base").get<std::string>());
  const auto& fibers = require_key(j, "fibers");
  if (static_cast<int>(fibers.size()) != x.base->object_count())
    throw ParseError("fibers array has the wrong length");
  for (const auto& rel : fibers) x.fibers.push_back(load_category(dir / rel.get<std::string>()));

  auto parse_functors = [&](const json& arr, bool covariant) {
    std::vector<Functor> out;
    const auto& b = *x.base;
    for (size_t k = 0; k < arr.size(); ++k) {
      Id src_obj = covariant ? b.hsrc(static_cast<Id>(k)) : b.vtgt(static_cast<Id>(k));
      Id tgt_obj = covariant ? b.htgt(static_cast<Id>(k)) : b.vsrc(static_cast<Id>(k));
      Functor fun;
      fun.source = x.fibers[src_obj];
      fun.target = x.fibers[tgt_obj];
      fun.obj_map = parse_id_array(require_key(arr[k], "obj_map"),
                                   fun.target->object_count(), "obj_map");
      fun.mor_map = parse_id_array(require_key(arr[k], "mor_map"),
                                   fun.target->morphism_count(), "mor_map");
      out.push_back(std::move(fun));
    }
    return out;
  };
  const auto& hfun = require_key(j, "hmor_functors");
  const auto& vfun = require_key(j, "vmor_functors");
  if (static_cast<int>(hfun.size()) != x.base->hmor_count() ||
      static_cast<int>(vfun.size()) != x.base->vmor_count())
    throw ParseError("functor arrays have the wrong length");
  x.hmor_functors = parse_functors(hfun, true);
  x.vmor_functors = parse_functors(vfun, false);

  const auto& trans = require_key(j, "square_transformations");
  if (static_cast<int>(trans.size()) != x.base->square_count())
    throw ParseError("square_transformations has the wrong length");
  for (size_t s = 0; s < trans.size(); ++s) {
    Id fiber_obj = x.base->htgt(x.base->top(static_cast<Id>(s)));
    x.square_trans.push_back(
        parse_id_array(trans[s], x.fibers[fiber_obj]->morphism_count(), "component"));
  }
  Report report = check_indexing(x);
  if (!report.ok()) throw ValidationError(std::move(report));
  return x;
}

void save_indexing(const std::filesystem::path& path, const DblIndexing& x,
                   const std::string& base_rel, const std::vector<std::string>& fiber_rels) {
  auto dir = path.parent_path();
  save_double(dir / base_rel, *x.base);
  for (size_t k = 0; k < x.fibers.size(); ++k) save_category(dir / fiber_rels[k], *x.fibers[k]);
  json j;
  j["base"] = base_rel;
  j["fibers"] = fiber_rels;
  json hfun = json::array(), vfun = json::array(), trans = json::array();
  for (const auto& fun : x.hmor_functors) hfun.push_back(emit_functor_maps(fun));
  for (const auto& fun : x.vmor_functors) vfun.push_back(emit_functor_maps(fun));
  for (const auto& components : x.square_trans) trans.push_back(components);
  j["hmor_functors"] = hfun;
  j["vmor_functors"] = vfun;
  j["square_transformations"] = trans;
  write_text(path, canonical_dump(j));
}

Report validate_file(const std::filesystem::path& path, const std::string& kind) {
  Report report;
  report.subject = kind + " file " + path.string();
  try {
    if (kind == "category") {
      load_category(path);
    } else if (kind == "ofs") {
      load_ofs(path);
    } else if (kind == "double") {
      load_double(path);
    } else if (kind == "dblfunctor") {
      load_dbl_functor(path);
    } else if (kind == "indexing") {
      load_indexing(path);
    } else {
      report.add("ParseError", "unknown kind " + kind);
    }
  } catch (const ValidationError& err) {
    report.merge(err.report());
  } catch (const Error& err) {
    report.add("ParseError", err.what());
  }
  return report;
}

}  // namespace duocat
