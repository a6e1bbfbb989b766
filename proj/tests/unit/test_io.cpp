#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>

#include "flatq/error.hpp"
#include "flatq/io.hpp"

using namespace flatq;

namespace {

struct Failure {
  Errc code = Errc::Internal;
  std::string message;
};

Failure failure_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  return {};
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("family files") {
  const CommutingFamily fam = parse_family_json(R"({"n": 2, "matrices": [[[0, -1], [1, "4/3"]]]})");
  CHECK(fam.n == 2);
  CHECK(fam.matrices[0].at(1, 1) == Rational::parse("4/3"));
  CHECK(fam.D == PrimeSet{3});

  const Failure shape = failure_of([] { parse_family_json(R"({"n": 2, "matrices": [[[1, 0], [0]]]})"); });
  CHECK(shape.code == Errc::DimensionMismatch);
  CHECK(shape.message.find("matrix 0 row 1") != std::string::npos);

  const Failure entry = failure_of([] { parse_family_json(R"({"n": 1, "matrices": [[[1]], [["1/0"]]]})"); });
  CHECK(entry.code == Errc::ParseError);
  CHECK(entry.message.find("matrix 1") != std::string::npos);

  CHECK(failure_of([] { parse_family_json("{"); }).code == Errc::ParseError);
  CHECK(failure_of([] { parse_family_json(R"({"n": 1})"); }).code == Errc::ParseError);
  CHECK(failure_of([] { parse_family_json(R"({"n": 1, "matrices": []})"); }).code == Errc::ParseError);
  CHECK(failure_of([] { parse_family_json(R"({"n": 1, "matrices": [[[true]]]})"); }).code == Errc::ParseError);
  // Validation runs after parsing.
  CHECK(failure_of([] { parse_family_json(R"({"n": 1, "matrices": [[[0]]]})"); }).code == Errc::Singular);
}

TEST_CASE("group files") {
  const GroupSpec g = parse_group_json(
      R"({"a_moduli": [7], "b_moduli": [3], "action": [[[2]]], "generators": [[[1], [0]], [[0], [1]]]})");
  CHECK(g.group.order() == 21);
  REQUIRE(g.generators);
  CHECK(g.generators->size() == 2);
  CHECK_FALSE(parse_group_json(R"({"a_moduli": [4, 6], "b_moduli": [], "action": []})").generators);

  const Failure bad = failure_of([] {
    parse_group_json(R"({"a_moduli": [7], "b_moduli": [3], "action": [[[2]]], "generators": [[[9], [0]]]})");
  });
  CHECK(bad.code == Errc::ParseError);
  CHECK(bad.message.find("generator 0") != std::string::npos);
  CHECK(failure_of([] { parse_group_json(R"({"a_moduli": [7], "b_moduli": [3], "action": [[[3]]]})"); }).code ==
        Errc::BadParameters);
  CHECK(failure_of([] { parse_group_json(R"({"a_moduli": [-7], "b_moduli": [], "action": []})"); }).code ==
        Errc::ParseError);
}

TEST_CASE("family spec files") {
  const FamilySpec bs = parse_family_spec_json(R"({"family": "bs", "k": 2, "n_min": 2, "n_max": 12})");
  CHECK(bs.kind == FamilyKind::BS);
  CHECK(bs.k == 2);
  CHECK(bs.lo == 2);
  CHECK(bs.hi == 12);
  const FamilySpec bpq = parse_family_spec_json(R"({"family": "bpq", "p": 2, "q": 3, "m_min": 5})");
  CHECK(bpq.hi == 5);
  CHECK(parse_family_spec_json(R"({"family": "cyclic", "m_min": 3, "m_max": 9})").kind == FamilyKind::Cyclic);
  CHECK(failure_of([] { parse_family_spec_json(R"({"family": "wreath", "p": 2, "n_min": 5, "n_max": 4})"); }).code ==
        Errc::ParseError);
  CHECK(failure_of([] { parse_family_spec_json(R"({"family": "bs", "k": 2})"); }).code == Errc::ParseError);
  CHECK(failure_of([] { parse_family_spec_json(R"({"family": "free"})"); }).code == Errc::InvalidArgument);

  const auto dir = std::filesystem::temp_directory_path() / "flatq_test_io";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "fam.json") << R"({"n": 1, "matrices": [[[2]]]})";
  std::ofstream(dir / "spec.json") << R"({"family": "matrix", "path": "fam.json", "count": 4, "policy": "exact"})";
  const FamilySpec mat = load_family_spec_file((dir / "spec.json").string());
  CHECK(mat.kind == FamilyKind::Matrix);
  CHECK(mat.count == 4);
  CHECK(mat.policy == ExponentPolicy::ExactOrder);
  REQUIRE(mat.matrices);
  CHECK(mat.matrices->D == PrimeSet{2});
  std::filesystem::remove_all(dir);

  const Failure missing = failure_of([] { read_text_file("/nonexistent/flatq.json"); });
  CHECK(missing.code == Errc::IoError);
  CHECK(missing.message.find("/nonexistent/flatq.json") != std::string::npos);
}

}  // TEST_SUITE
