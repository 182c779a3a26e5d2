#pragma once

#include "duocat/adequate.hpp"
#include "duocat/fib.hpp"

namespace duocat {

// Named instance families driving the verification suites. Every entry either
// passes its validator or is an intentional counterexample carrying the
// expected error code.

struct CatalogCategory {
  std::string name;
  CatPtr cat;
  bool sweepable = false;  // enters the exhaustive class-pair sweeps
};

struct CatalogOfs {
  std::string name;
  OfsPtr fs;
  bool poset_based = false;
  bool expect_adequate = false;
  bool expect_strict = false;  // strictly unique factorizations
};

struct CatalogTriple {
  std::string name;
  CatPtr cat;
  MorClass egressive, ingressive;
  std::string expected_error;   // from validate_ofs
  bool expect_adequate = false;
};

struct CatalogDouble {
  std::string name;
  DblPtr dbl;
  bool expect_factorization = false;
  bool expect_adequate_double = false;
};

struct CatalogRawDouble {
  std::string name;
  RawDouble raw;
  std::string expected_error;
};

struct CatalogIndexing {
  std::string name;
  DblIndexing indexing;
  std::string expected_error;  // empty when the indexing is valid
};

struct Catalog {
  std::vector<CatalogCategory> categories;
  std::vector<CatalogOfs> ofs;
  std::vector<CatalogTriple> triples;
  std::vector<CatalogDouble> doubles;
  std::vector<CatalogRawDouble> raw_doubles;
  std::vector<CatalogIndexing> indexings;
};

Catalog builtin_catalog();
Catalog empty_catalog();

/// Manifest-driven catalog: a JSON file listing entries by kind and path,
/// replacing the built-in families.
Catalog load_catalog(const std::filesystem::path& manifest);

// Shared small constructions.
CatPtr cyclic2_category();
CatPtr symmetric3_table_category();  // only used as a multiplication source
CatPtr idempotent_monoid_category();
CatPtr codiscrete_groupoid(int nobj);
CatPtr no_meet_poset();
CatPtr vee_poset();
OfsPtr cospan_ofs();
OfsPtr double_wedge_ofs();
RawDouble delooping_double_raw(const std::vector<std::vector<Id>>& mult);
std::vector<std::vector<Id>> z2_multiplication();
std::vector<std::vector<Id>> s3_multiplication();
DblIndexing constant_indexing(const DblPtr& base, const CatPtr& k);

}  // namespace duocat
