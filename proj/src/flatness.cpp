#include "flatq/flatness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flatq/error.hpp"
#include "flatq/number_theory.hpp"

namespace flatq {

namespace {

double log_big(const BigInt& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

BigInt pow_big(const BigInt& base, const BigInt& e) {
  if (!e.fits_ulong_p()) throw Error(Errc::TooLarge, "exponent too large");
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e.get_ui());
  return out;
}

nlohmann::json big_json(const BigInt& x) {
  if (x >= 0 && fits_u64(x)) return to_u64(x);
  return x.get_str();
}

std::string format_ratio(double r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", r);
  return buf;
}

}  // namespace

FlatnessSeries::FlatnessSeries(std::string family, std::vector<QuotientRecord> records)
    : family_(std::move(family)), records_(std::move(records)) {
  std::stable_sort(records_.begin(), records_.end(),
                   [](const QuotientRecord& a, const QuotientRecord& b) { return a.index < b.index; });
  for (std::size_t i = 1; i < records_.size(); ++i) {
    if (records_[i].index == records_[i - 1].index) {
      throw Error(Errc::InvalidArgument, "two records share index " + records_[i].index.get_str());
    }
  }
}

FlatnessSeries make_series(const std::string& family, const std::vector<SeriesItem>& items) {
  std::vector<QuotientRecord> recs;
  for (const SeriesItem& it : items) {
    if (it.record) recs.push_back(*it.record);
  }
  return FlatnessSeries(family, std::move(recs));
}

bool violates(const BigInt& diameter, const BigInt& index, const Rational& alpha, const Rational& epsilon) {
  if (alpha.sign() <= 0 || alpha > Rational(1)) throw Error(Errc::InvalidArgument, "alpha must lie in (0, 1]");
  if (epsilon.sign() <= 0) throw Error(Errc::InvalidArgument, "epsilon must be positive");
  // alpha = a/b, epsilon = c/e:  d < (c/e) I^{a/b}  <=>  d^b e^b < c^b I^a
  const BigInt& a = alpha.numerator();
  const BigInt& b = alpha.denominator();
  const BigInt& c = epsilon.numerator();
  const BigInt& e = epsilon.denominator();
  return pow_big(diameter, b) * pow_big(e, b) < pow_big(c, b) * pow_big(index, a);
}

Verdict check_uq(const FlatnessSeries& series, const Rational& alpha, const Rational& epsilon) {
  Verdict v{alpha, epsilon, series.family(), std::nullopt, 0, 0, false};
  for (const QuotientRecord& rec : series.records()) {
    const BigInt d = rec.diameter_estimate();
    if (violates(d, rec.index, alpha, epsilon)) {
      v.violating_parameter = rec.parameter;
      v.index = rec.index;
      v.diameter = d;
      v.from_bound = !rec.exact();
      return v;
    }
  }
  // Validate the arguments even when the series is empty.
  violates(0, 1, alpha, epsilon);
  return v;
}

std::vector<std::pair<std::uint64_t, double>> alpha_trend(const FlatnessSeries& series) {
  std::vector<std::pair<std::uint64_t, double>> out;
  for (const QuotientRecord& rec : series.records()) {
    const BigInt d = rec.diameter_estimate();
    if (rec.index < 2 || d < 1) continue;
    out.emplace_back(rec.parameter, log_big(d) / log_big(rec.index));
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string report_csv(const FlatnessSeries& series) {
  std::ostringstream os;
  os << "family,parameter,index,diam_exact,diam_bound,mode,alpha_ratio\r\n";
  for (const QuotientRecord& rec : series.records()) {
    const BigInt d = rec.diameter_estimate();
    std::string ratio;
    if (rec.index >= 2 && d >= 1) ratio = format_ratio(log_big(d) / log_big(rec.index));
    os << csv_field(rec.family) << ',' << rec.parameter << ',' << rec.index.get_str() << ','
       << (rec.diam_exact ? std::to_string(*rec.diam_exact) : "") << ',' << rec.diam_bound.get_str() << ','
       << rec.mode() << ',' << ratio << "\r\n";
  }
  return os.str();
}

std::string verdicts_json(const std::vector<Verdict>& verdicts) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Verdict& v : verdicts) {
    nlohmann::ordered_json j;
    j["alpha"] = v.alpha.to_string();
    j["epsilon"] = v.epsilon.to_string();
    j["family"] = v.family;
    if (v.violated()) {
      j["violated_at"] = *v.violating_parameter;
      j["index"] = big_json(v.index);
      j["diameter"] = big_json(v.diameter);
      j["source"] = v.from_bound ? "bound" : "exact";
    } else {
      j["violated_at"] = nullptr;
      j["index"] = nullptr;
      j["diameter"] = nullptr;
      j["source"] = nullptr;
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

void emit_report(const FlatnessSeries& series, const std::vector<Verdict>& verdicts, const std::string& csv_path,
                 const std::string& json_path) {
  auto write = [](const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::IoError, "cannot open '" + path + "' for writing");
    f << body;
    if (!f) throw Error(Errc::IoError, "write to '" + path + "' failed");
  };
  write(csv_path, report_csv(series));
  if (!json_path.empty()) write(json_path, verdicts_json(verdicts));
}

}  // namespace flatq
