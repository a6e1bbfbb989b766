#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatq/commuting_family.hpp"
#include "flatq/families.hpp"
#include "flatq/finite_group.hpp"

namespace flatq {

/// Throws IoError naming the path.
std::string read_text_file(const std::string& path);

/// {"n": 2, "matrices": [[["0","-1"],["1","4/3"]], ...]}; entries are strings "a/b" or integers.
/// Parse errors name the offending matrix and entry. The family is validated.
CommutingFamily parse_family_json(const std::string& text);
CommutingFamily load_family_file(const std::string& path);

struct GroupSpec {
  FiniteMetabelian group;
  std::optional<std::vector<Element>> generators;  // standard generators when absent
};

/// {"a_moduli": [...], "b_moduli": [...], "action": [matrix, ...], "generators": [[[a...],[b...]], ...]}
GroupSpec parse_group_json(const std::string& text);
GroupSpec load_group_file(const std::string& path);

/// {"family":"bs","k":2,"n_min":2,"n_max":12}; "wreath" uses p, n_min, n_max; "bpq" uses
/// p, q, m_min, m_max; "cyclic" uses m_min, m_max; "matrix" uses path and count, with
/// the path resolved against `base_dir` when relative.
FamilySpec parse_family_spec_json(const std::string& text, const std::string& base_dir = ".");
FamilySpec load_family_spec_file(const std::string& path);

}  // namespace flatq
