#include "flatq/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flatq/error.hpp"

namespace flatq {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw Error(Errc::ParseError, std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::uint64_t to_uint(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw Error(Errc::ParseError, what + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<std::uint64_t> to_uint_list(const json& v, const std::string& what) {
  if (!v.is_array()) throw Error(Errc::ParseError, what + " must be an array");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_uint(v[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

Rational to_rational(const json& v, const std::string& where) {
  try {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
  } catch (const Error& e) {
    throw Error(Errc::ParseError, where + ": " + e.what());
  }
  throw Error(Errc::ParseError, where + ": expected an integer or a string \"a/b\"");
}

std::uint64_t optional_uint(const json& obj, const char* key, std::uint64_t fallback) {
  return obj.contains(key) ? to_uint(obj.at(key), key) : fallback;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

CommutingFamily parse_family_json(const std::string& text) {
  const json doc = parse_json(text);
  const std::uint64_t n = to_uint(field(doc, "n"), "n");
  const json& mats = field(doc, "matrices");
  if (!mats.is_array() || mats.empty()) throw Error(Errc::ParseError, "'matrices' must be a non-empty array");
  std::vector<QMatrix> out;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const std::string name = "matrix " + std::to_string(i);
    const json& rows = mats[i];
    if (!rows.is_array() || rows.size() != n) {
      throw Error(Errc::DimensionMismatch, name + " must have " + std::to_string(n) + " rows");
    }
    std::vector<std::vector<Rational>> entries(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!rows[r].is_array() || rows[r].size() != n) {
        throw Error(Errc::DimensionMismatch, name + " row " + std::to_string(r) + " must have " + std::to_string(n) +
                                                 " entries");
      }
      for (std::size_t c = 0; c < n; ++c) {
        entries[r].push_back(
            to_rational(rows[r][c], name + " entry (" + std::to_string(r) + "," + std::to_string(c) + ")"));
      }
    }
    out.push_back(QMatrix::from_rows(entries));
  }
  return validate_family(out);
}

CommutingFamily load_family_file(const std::string& path) { return parse_family_json(read_text_file(path)); }

GroupSpec parse_group_json(const std::string& text) {
  const json doc = parse_json(text);
  Residues a = to_uint_list(field(doc, "a_moduli"), "a_moduli");
  Residues b = to_uint_list(field(doc, "b_moduli"), "b_moduli");
  const json& act = field(doc, "action");
  if (!act.is_array()) throw Error(Errc::ParseError, "'action' must be an array");
  std::vector<IntMatrix> action;
  for (std::size_t i = 0; i < act.size(); ++i) {
    const std::string name = "action " + std::to_string(i);
    if (!act[i].is_array()) throw Error(Errc::ParseError, name + " must be a matrix");
    IntMatrix m;
    for (std::size_t r = 0; r < act[i].size(); ++r) m.push_back(to_uint_list(act[i][r], name + " row " + std::to_string(r)));
    action.push_back(std::move(m));
  }
  GroupSpec spec{FiniteMetabelian(std::move(a), std::move(b), std::move(action)), std::nullopt};
  if (doc.contains("generators")) {
    const json& gens = doc.at("generators");
    if (!gens.is_array()) throw Error(Errc::ParseError, "'generators' must be an array");
    std::vector<Element> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string name = "generator " + std::to_string(i);
      if (!gens[i].is_array() || gens[i].size() != 2) throw Error(Errc::ParseError, name + " must be [a, b]");
      Element g{to_uint_list(gens[i][0], name + " a"), to_uint_list(gens[i][1], name + " b")};
      if (!spec.group.contains(g)) throw Error(Errc::ParseError, name + " is not an element of the group");
      out.push_back(std::move(g));
    }
    spec.generators = std::move(out);
  }
  return spec;
}

GroupSpec load_group_file(const std::string& path) { return parse_group_json(read_text_file(path)); }

FamilySpec parse_family_spec_json(const std::string& text, const std::string& base_dir) {
  const json doc = parse_json(text);
  const json& kind = field(doc, "family");
  if (!kind.is_string()) throw Error(Errc::ParseError, "'family' must be a string");
  FamilySpec spec;
  spec.kind = parse_family_kind(kind.get<std::string>());
  switch (spec.kind) {
    case FamilyKind::BS:
      spec.k = to_uint(field(doc, "k"), "k");
      spec.lo = to_uint(field(doc, "n_min"), "n_min");
      spec.hi = to_uint(field(doc, "n_max"), "n_max");
      break;
    case FamilyKind::Wreath:
      spec.p = to_uint(field(doc, "p"), "p");
      spec.lo = to_uint(field(doc, "n_min"), "n_min");
      spec.hi = to_uint(field(doc, "n_max"), "n_max");
      break;
    case FamilyKind::Bpq:
      spec.p = to_uint(field(doc, "p"), "p");
      spec.q = to_uint(field(doc, "q"), "q");
      spec.lo = to_uint(field(doc, "m_min"), "m_min");
      spec.hi = optional_uint(doc, "m_max", spec.lo);
      break;
    case FamilyKind::Cyclic:
      spec.lo = to_uint(field(doc, "m_min"), "m_min");
      spec.hi = to_uint(field(doc, "m_max"), "m_max");
      break;
    case FamilyKind::Matrix: {
      const json& p = field(doc, "path");
      if (!p.is_string()) throw Error(Errc::ParseError, "'path' must be a string");
      std::filesystem::path path = p.get<std::string>();
      if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
      spec.matrices = load_family_file(path.string());
      spec.count = to_uint(field(doc, "count"), "count");
      if (doc.contains("policy")) {
        const std::string pol = doc.at("policy").get<std::string>();
        if (pol == "fermat") spec.policy = ExponentPolicy::Fermat;
        else if (pol == "exact") spec.policy = ExponentPolicy::ExactOrder;
        else throw Error(Errc::ParseError, "policy must be \"fermat\" or \"exact\"");
      }
      break;
    }
  }
  if (spec.kind != FamilyKind::Matrix && spec.lo > spec.hi) throw Error(Errc::ParseError, "empty parameter range");
  return spec;
}

FamilySpec load_family_spec_file(const std::string& path) {
  const std::filesystem::path p(path);
  return parse_family_spec_json(read_text_file(path), p.has_parent_path() ? p.parent_path().string() : ".");
}

}  // namespace flatq
