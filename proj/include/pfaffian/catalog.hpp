#pragma once

#include <string>
#include <vector>

#include "pfaffian/forms.hpp"

namespace pfaffian {

// Built-in named examples with their expected classification, used by
// `examples --name/--list/--verify-all`.
struct CatalogEntry {
  std::string name;
  std::string description;
  std::vector<std::string> chart;
  std::vector<std::string> params;
  std::string form;  // in the form grammar
  int expected_class;
  int expected_codim;
  int expected_max_dim;
  std::string expected_tag;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* catalog_find(const std::string& name);

}  // namespace pfaffian
