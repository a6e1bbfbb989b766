#include "cli.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatq/commuting_family.hpp"
#include "flatq/error.hpp"
#include "flatq/families.hpp"
#include "flatq/flatness.hpp"
#include "flatq/io.hpp"
#include "flatq/polynomial.hpp"
#include "flatq/verify_suites.hpp"

namespace flatq::cli {

namespace {

struct Range {
  std::uint64_t lo = 0, hi = 0;
  bool set = false;
};

/// "a..b" inclusive, or a single value "a".
Range parse_range(const std::string& text, const std::string& flag) {
  Range r;
  r.set = true;
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
      r.lo = std::stoull(a, &used);
      if (used != a.size()) throw std::invalid_argument(text);
      r.hi = std::stoull(b, &used);
      if (used != b.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw Error(Errc::ParseError, flag + ": expected a..b or a non-negative integer, got '" + text + "'");
  }
  if (r.lo > r.hi) throw Error(Errc::ParseError, flag + ": empty range '" + text + "'");
  return r;
}

std::string join(const std::vector<std::uint64_t>& xs, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + std::to_string(xs[i]);
  return s;
}

struct FamilyOptions {
  std::string spec_path;
  std::string kind;
  std::uint64_t k = 2, p = 2, q = 3;
  std::string n_range, m_range;
  std::string matrices_path;
  std::size_t count = 5;
  std::string policy = "fermat";
  std::vector<std::string> alphas, epsilons;
  std::string out_path, json_path;
  std::uint64_t bfs_ceiling = 2'000'000;
  std::uint64_t prime_ceiling = kDefaultPrimeCeiling;
};

void add_family_options(CLI::App* cmd, FamilyOptions& o) {
  auto* spec = cmd->add_option("--spec", o.spec_path, "family spec JSON file");
  auto* kind = cmd->add_option("--kind", o.kind, "bs, wreath, bpq, cyclic or matrix");
  spec->excludes(kind);
  kind->excludes(spec);
  cmd->add_option("--k", o.k, "multiplier for bs");
  cmd->add_option("--p", o.p, "prime for wreath and bpq");
  cmd->add_option("--q", o.q, "second prime for bpq");
  cmd->add_option("--n", o.n_range, "range a..b of n (bs, wreath)");
  cmd->add_option("--m", o.m_range, "range a..b of m (bpq, cyclic)");
  cmd->add_option("--matrices", o.matrices_path, "matrix family file (matrix)");
  cmd->add_option("--count", o.count, "number of splitting primes (matrix)");
  cmd->add_option("--policy", o.policy, "exponents r_i for i >= 2: fermat or exact")
      ->check(CLI::IsMember({"fermat", "exact"}));
  cmd->add_option("--out", o.out_path, "CSV output path");
  cmd->add_option("--bfs-ceiling", o.bfs_ceiling, "largest group handled by BFS")->check(CLI::PositiveNumber);
  cmd->add_option("--prime-ceiling", o.prime_ceiling, "largest prime tried")->check(CLI::PositiveNumber);
}

FamilySpec build_spec(const FamilyOptions& o) {
  if (!o.spec_path.empty()) {
    FamilySpec s = load_family_spec_file(o.spec_path);
    s.prime_ceiling = o.prime_ceiling;
    return s;
  }
  if (o.kind.empty()) throw Error(Errc::InvalidArgument, "give --kind or --spec");
  FamilySpec s;
  s.kind = parse_family_kind(o.kind);
  s.k = o.k;
  s.p = o.p;
  s.q = o.q;
  s.prime_ceiling = o.prime_ceiling;
  s.policy = o.policy == "exact" ? ExponentPolicy::ExactOrder : ExponentPolicy::Fermat;
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) throw Error(Errc::InvalidArgument, std::string(flag) + " is required for this family");
    return parse_range(v, flag);
  };
  Range r;
  switch (s.kind) {
    case FamilyKind::BS:
    case FamilyKind::Wreath: r = need(o.n_range, "--n"); break;
    case FamilyKind::Bpq:
    case FamilyKind::Cyclic: r = need(o.m_range, "--m"); break;
    case FamilyKind::Matrix:
      if (o.matrices_path.empty()) throw Error(Errc::InvalidArgument, "--matrices is required for the matrix family");
      s.matrices = load_family_file(o.matrices_path);
      s.count = o.count;
      break;
  }
  s.lo = r.lo;
  s.hi = r.hi;
  return s;
}

std::string default_json_path(const std::string& csv) {
  std::filesystem::path p(csv);
  p.replace_extension(".json");
  return p.string();
}

int cmd_family(const FamilyOptions& o, bool with_verdicts, std::ostream& out, std::ostream& err) {
  const FamilySpec spec = build_spec(o);
  const std::vector<SeriesItem> items = family_series(spec, o.bfs_ceiling);
  bool failed = false;
  for (const SeriesItem& it : items) {
    if (it.error) {
      failed = true;
      err << to_string(spec.kind) << " parameter " << it.parameter << ": " << it.error->what() << '\n';
      continue;
    }
    const QuotientRecord& r = *it.record;
    out << r.family << " parameter " << r.parameter << ": index " << r.index.get_str() << ", diameter "
        << (r.diam_exact ? std::to_string(*r.diam_exact) : "n/a") << ", bound " << r.diam_bound.get_str() << " ("
        << r.mode() << (r.experimental ? ", experimental" : "") << ")\n";
  }
  const FlatnessSeries series = make_series(to_string(spec.kind), items);

  std::vector<Verdict> verdicts;
  if (with_verdicts && !series.empty()) {
    const std::vector<std::string> alphas = o.alphas.empty() ? std::vector<std::string>{"1/2"} : o.alphas;
    const std::vector<std::string> epss = o.epsilons.empty() ? std::vector<std::string>{"1"} : o.epsilons;
    for (const std::string& a : alphas) {
      for (const std::string& e : epss) {
        const Verdict v = check_uq(series, Rational::parse(a), Rational::parse(e));
        verdicts.push_back(v);
        out << "alpha " << v.alpha << ", epsilon " << v.epsilon << ": ";
        if (v.violated()) {
          out << "bound fails at parameter " << *v.violating_parameter << " (index " << v.index.get_str()
              << ", diameter " << (v.from_bound ? "<= " : "") << v.diameter.get_str() << ")\n";
        } else {
          out << "no violation among " << series.records().size()
              << " records (this does not certify the bound)\n";
        }
      }
    }
  }
  if (!with_verdicts) {
    for (const auto& [param, ratio] : alpha_trend(series)) {
      out << "log diam / log index at " << param << ": " << ratio << '\n';
    }
  }
  if (!o.out_path.empty()) {
    const std::string json = with_verdicts ? (o.json_path.empty() ? default_json_path(o.out_path) : o.json_path) : "";
    emit_report(series, verdicts, o.out_path, json);
  }
  return failed ? 2 : 0;
}

int cmd_decide(const std::string& path, std::ostream& out) {
  const CommutingFamily fam = load_family_file(path);
  for (std::size_t i = 0; i < fam.matrices.size(); ++i) {
    out << "chi(M_" << i + 1 << ") = " << char_poly(fam.matrices[i]).to_string() << '\n';
  }
  out << "D = " << fam.D.to_string() << '\n';
  out << "finitely generated: " << (finitely_generated_criterion(fam) ? "true" : "false") << '\n';
  out << "virtually nilpotent: " << (virtual_nilpotency_decision(fam) ? "true" : "false") << '\n';
  if (const auto c = nilpotency_class_bound(fam)) out << "nilpotent, class ≤ " << *c << '\n';
  return 0;
}

int cmd_primes(const std::vector<std::string>& texts, std::size_t count, const std::string& skip,
               std::uint64_t ceiling, std::ostream& out) {
  std::vector<MonicPoly> polys;
  for (const std::string& t : texts) polys.push_back(MonicPoly::parse(t));
  std::vector<std::uint64_t> skipped;
  if (!skip.empty()) {
    std::stringstream ss(skip);
    std::string tok;
    while (std::getline(ss, tok, ',')) skipped.push_back(parse_range(tok, "--skip").lo);
  }
  const std::vector<std::uint64_t> primes = splitting_primes(polys, count, PrimeSet(skipped), ceiling);
  out << "splitting primes: " << join(primes) << '\n';
  for (std::uint64_t p : primes) {
    for (const MonicPoly& P : polys) {
      const SplitReport rep = *splits_over_fp(P, p);
      out << "p = " << p << ": " << P.to_string() << " roots {" << join(rep.roots) << "}, lambda "
          << lambda_order(P, p) << '\n';
    }
  }
  return 0;
}

int cmd_diam(const std::string& path, bool symmetrize, std::uint64_t ceiling, std::ostream& out) {
  const GroupSpec spec = load_group_file(path);
  const std::vector<Element> gens = spec.generators ? *spec.generators : spec.group.standard_generators();
  const GeneratingSet S(spec.group, gens, symmetrize);
  const CayleyStats stats = cayley_bfs(spec.group, S, ceiling);
  out << "order " << spec.group.order().get_str() << '\n';
  out << "generators " << S.elements().size() << '\n';
  out << "diameter " << stats.diameter << '\n';
  out << "ball sizes " << join(stats.ball_sizes, " ") << '\n';
  return 0;
}

int cmd_verify(const std::string& suite, std::ostream& out) {
  const std::vector<CheckResult> results = run_verify_suite(suite);
  std::size_t passed = 0;
  for (const CheckResult& r : results) {
    passed += r.passed ? 1 : 0;
    out << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.name << " (" << r.detail << ")\n";
  }
  out << passed << "/" << results.size() << " passed\n";
  return passed == results.size() ? 0 : 2;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite quotients, Cayley diameters and almost-flatness checks"};
  app.name("flatq");
  app.require_subcommand(1);

  FamilyOptions fam_opts;
  auto* family = app.add_subcommand("family", "build a quotient family, its diameters and flatness verdicts");
  add_family_options(family, fam_opts);
  family->add_option("--alpha", fam_opts.alphas, "exponent a/b in (0,1]; repeat for a grid");
  family->add_option("--eps", fam_opts.epsilons, "epsilon a/b > 0; repeat for a grid");
  family->add_option("--json", fam_opts.json_path, "verdict JSON path (default: CSV path with .json)");

  FamilyOptions rep_opts;
  auto* report = app.add_subcommand("report", "write the CSV report and exponent trend of a family");
  add_family_options(report, rep_opts);

  std::string decide_path;
  auto* decide = app.add_subcommand("decide", "decide virtual nilpotency of a commuting matrix family");
  decide->add_option("file", decide_path, "matrix family JSON")->required();

  std::vector<std::string> polys;
  std::size_t count = 5;
  std::string skip;
  std::uint64_t prime_ceiling = kDefaultPrimeCeiling;
  auto* primes = app.add_subcommand("primes", "find primes where every polynomial splits");
  primes->add_option("--poly", polys, "monic polynomial in x; repeatable")->required();
  primes->add_option("--count", count, "how many primes")->check(CLI::PositiveNumber);
  primes->add_option("--skip", skip, "comma-separated primes to skip");
  primes->add_option("--prime-ceiling", prime_ceiling, "largest prime tried")->check(CLI::PositiveNumber);

  std::string group_path;
  bool no_symmetrize = false;
  std::uint64_t bfs_ceiling = 2'000'000;
  auto* diam = app.add_subcommand("diam", "exact Cayley-graph diameter of a group spec");
  diam->add_option("file", group_path, "group spec JSON")->required();
  diam->add_flag("--no-symmetrize", no_symmetrize, "use the generators as given");
  diam->add_option("--bfs-ceiling", bfs_ceiling, "largest group handled")->check(CLI::PositiveNumber);

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification battery");
  verify->add_option("suite", suite, "zp-lemma, lcs, conj-gen, abelian-diam or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*family) return cmd_family(fam_opts, true, out, err);
    if (*report) return cmd_family(rep_opts, false, out, err);
    if (*decide) return cmd_decide(decide_path, out);
    if (*primes) return cmd_primes(polys, count, skip, prime_ceiling, out);
    if (*diam) return cmd_diam(group_path, !no_symmetrize, bfs_ceiling, out);
    if (*verify) return cmd_verify(suite, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::IoError ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace flatq::cli
