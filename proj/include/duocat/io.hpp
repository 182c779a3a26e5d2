#pragma once

#include <filesystem>
#include <string>

#include "duocat/fib.hpp"

namespace duocat {

// JSON interchange with explicit integer ids and string names. Composition
// tables are mandatory; loaders never infer composites. Saving is canonical:
// loading a saved file and saving again is byte-identical.

CatPtr load_category(const std::filesystem::path& path);
void save_category(const std::filesystem::path& path, const FinCategory& cat);

OfsPtr load_ofs(const std::filesystem::path& path);
void save_ofs(const std::filesystem::path& path, const FactorizationSystem& fs);

DblPtr load_double(const std::filesystem::path& path);
void save_double(const std::filesystem::path& path, const DoubleCategory& d);

/// Double functor files reference their source and target double category
/// files by path relative to the functor file.
DblFunctor load_dbl_functor(const std::filesystem::path& path);
void save_dbl_functor(const std::filesystem::path& path, const DblFunctor& fun,
                      const std::string& source_rel, const std::string& target_rel);

/// Indexing files reference the base double category and the fiber category
/// files by relative path.
DblIndexing load_indexing(const std::filesystem::path& path);
void save_indexing(const std::filesystem::path& path, const DblIndexing& x,
                   const std::string& base_rel, const std::vector<std::string>& fiber_rels);

/// Parse + validate a file of the given kind; kind is one of category, ofs,
/// double, dblfunctor, indexing.
Report validate_file(const std::filesystem::path& path, const std::string& kind);

}  // namespace duocat
