#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatq/families.hpp"
#include "flatq/rational.hpp"

namespace flatq {

/// Records of one family, sorted by strictly increasing index.
class FlatnessSeries {
 public:
  FlatnessSeries() = default;
  /// Sorts by index. Throws InvalidArgument on repeated indices.
  FlatnessSeries(std::string family, std::vector<QuotientRecord> records);

  const std::string& family() const { return family_; }
  const std::vector<QuotientRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }

 private:
  std::string family_;
  std::vector<QuotientRecord> records_;
};

/// Collects the successful records of a family_series run.
FlatnessSeries make_series(const std::string& family, const std::vector<SeriesItem>& items);

struct Verdict {
  Rational alpha;
  Rational epsilon;
  std::string family;
  std::optional<std::uint64_t> violating_parameter;
  BigInt index;           // witness, when violated
  BigInt diameter;        // estimate used at the witness
  bool from_bound = false;  // the witness diameter is the analytic bound

  bool violated() const { return violating_parameter.has_value(); }
};

/// diameter < epsilon * index^alpha, decided by integer cross-multiplication.
/// Requires alpha in (0, 1] and epsilon > 0 (InvalidArgument otherwise).
bool violates(const BigInt& diameter, const BigInt& index, const Rational& alpha, const Rational& epsilon);

/// First record whose diameter estimate violates the lower bound.
/// Only a failure of the bound can be certified this way, never that it holds.
Verdict check_uq(const FlatnessSeries& series, const Rational& alpha, const Rational& epsilon);

/// ln(diameter estimate) / ln(index) per record with index >= 2; for reporting only.
std::vector<std::pair<std::uint64_t, double>> alpha_trend(const FlatnessSeries& series);

/// CSV with header family,parameter,index,diam_exact,diam_bound,mode,alpha_ratio.
std::string report_csv(const FlatnessSeries& series);

/// [{"alpha":"1/2","epsilon":"1","family":...,"violated_at":n|null,"index":"...","diameter":"...","source":...}]
std::string verdicts_json(const std::vector<Verdict>& verdicts);

/// Writes the CSV to `csv_path` and, if given, the verdict JSON. Throws IoError naming the path.
void emit_report(const FlatnessSeries& series, const std::vector<Verdict>& verdicts, const std::string& csv_path,
                 const std::string& json_path = "");

/// RFC-4180 field quoting.
std::string csv_field(const std::string& s);

}  // namespace flatq
