#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hermlat/hermitian.hpp"
#include "hermlat/zlattice.hpp"

namespace hermlat {

enum class LatticeKind { euclidean, hermitian };

struct CatalogEntry {
  std::string name;
  std::variant<ZLattice, HermLattice> data;
  /// "fixed" for literal Gram matrices, "constructed" for built ones,
  /// "file" for loaded ones.
  std::string source;
  std::string notes;

  LatticeKind kind() const { return data.index() == 0 ? LatticeKind::euclidean : LatticeKind::hermitian; }
  const ZLattice& zlattice() const;
  const HermLattice& hermitian() const;
};

std::vector<std::string> catalog_names();
/// Throws ValidationError listing the catalog for unknown names.
CatalogEntry catalog_get(const std::string& name);
const ZLattice& catalog_z(const std::string& name);
const HermLattice& catalog_h(const std::string& name);

/// JSON text for an entry: {"gram": ...} or {"field": {"d": ..}, "gram": ...}.
std::string to_json_text(const CatalogEntry& entry, bool pretty = true);
CatalogEntry from_json_text(const std::string& text, const std::string& name = "input");

CatalogEntry load_entry(const std::string& path);
void save_entry(const CatalogEntry& entry, const std::string& path);

}  // namespace hermlat
