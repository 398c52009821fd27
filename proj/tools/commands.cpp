#include "frobfix/commands.hpp"

#include "frobfix/golden.hpp"
#include "frobfix/io.hpp"
#include "frobfix/ktheory.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifndef FROBFIX_DATA_DIR
#define FROBFIX_DATA_DIR "data"
#endif

namespace frobfix::cli {

namespace {

using io::Json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_prime(std::int64_t p) {
  if (p < 2 || !is_prime(Integer(p))) throw UsageError("p must be prime, got " + std::to_string(p));
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

std::string corpus_path(const RunConfig& cfg) {
  return cfg.corpus.empty() ? std::string(FROBFIX_DATA_DIR) + "/curves.json" : cfg.corpus;
}

std::string pass_fail(bool ok) { return ok ? "pass" : "FAIL"; }

}  // namespace

CommandResult cmd_ktable(std::int64_t p, int n_max, const RunConfig& cfg) {
  require_prime(p);
  if (n_max < 0) throw UsageError("n-max must be non-negative");
  const GradedFixedPoints k = frobenius_k(p, n_max);
  std::vector<int> mismatches;
  Json degrees = Json::array();
  for (int n = -2; n <= n_max; ++n) {
    const DegreePieces d = k.at(n);
    Json row = io::to_json(d);
    if (cfg.check) {
      const LocalizedGroup want = golden::frobenius_k(p, n);
      row["expected"] = want.to_string();
      if (!d.resolved || !(*d.resolved == want)) mismatches.push_back(n);
    }
    degrees.push_back(row);
  }
  CommandResult r;
  if (cfg.format == "markdown") {
    r.output = io::markdown_table("n", {"π_n"}, range(-2, n_max),
                                  [&](std::size_t, int n) { return io::describe(k.at(n)); });
  } else {
    Json j{{"command", "ktable"}, {"p", p}, {"n_max", n_max}, {"all_resolved", k.all_resolved()}, {"degrees", degrees}};
    if (cfg.check) j["check"] = {{"passed", mismatches.empty()}, {"mismatches", mismatches}};
    r.output = io::dump(j);
  }
  if (cfg.check && !mismatches.empty()) r.exit_code = kMismatch;
  return r;
}

CommandResult cmd_pitable(std::int64_t p, const RunConfig& cfg) {
  require_prime(p);
  if (p == 2) throw UsageError("pitable is defined for odd primes only");
  const auto table = frobenius_pi_table(p);
  const std::vector<int> rows{0, -1};
  const std::vector<int> cols = range(-1, 2);
  auto cell = [&](int r, int n) {
    auto it = table.find({r, n});
    return it == table.end() ? DegreePieces{n, {}, {}, LocalizedGroup(), Resolution::kTrivialSub} : it->second;
  };

  std::vector<std::string> mismatches;
  Json cells = Json::array();
  const auto expected = cfg.check ? golden::frobenius_pi(p) : std::map<std::pair<int, int>, golden::PiCell>{};
  for (int r : rows)
    for (int n : cols) {
      const DegreePieces d = cell(r, n);
      Json c = io::to_json(d);
      c["r"] = r;
      c["n"] = n;
      if (cfg.check) {
        auto it = expected.find({r, n});
        bool ok = true;
        if (it == expected.end()) {
          ok = d.resolved && d.resolved->is_trivial();
        } else if (it->second.pieces) {
          const auto& [sub, quot] = *it->second.pieces;
          ok = d.sub && d.quot && *d.sub == sub && *d.quot == quot && d.resolution == Resolution::kCoprimeSplit;
          c["expected"] = {{"sub", sub.to_string()}, {"quot", quot.to_string()}};
        } else {
          ok = d.resolved && *d.resolved == *it->second.group;
          c["expected"] = it->second.group->to_string();
        }
        if (!ok) mismatches.push_back("(" + std::to_string(r) + "," + std::to_string(n) + ")");
      }
      cells.push_back(c);
    }
  CommandResult out;
  if (cfg.format == "markdown") {
    out.output = io::markdown_table("r \\ n", {"0", "-1"}, cols,
                                    [&](std::size_t i, int n) { return io::describe(cell(rows[i], n)); });
  } else {
    Json j{{"command", "pitable"}, {"p", p}, {"cells", cells}};
    if (cfg.check) j["check"] = {{"passed", mismatches.empty()}, {"mismatches", mismatches}};
    out.output = io::dump(j);
  }
  if (cfg.check && !mismatches.empty()) out.exit_code = kMismatch;
  return out;
}

CommandResult cmd_weight1(const Weight1Args& args, const RunConfig& cfg) {
  Variety X;
  if (args.curve == "point" || args.curve == "P1") {
    if (!args.p) throw UsageError("--p is required for " + args.curve);
    require_prime(*args.p);
    X = args.curve == "point" ? Variety::point(*args.p) : Variety::projective_line(*args.p);
  } else {
    std::optional<CurveSpec> found;
    for (const auto& c : io::load_corpus(corpus_path(cfg)))
      if (c.name == args.curve) found = c;
    if (!found) throw UsageError("unknown curve " + args.curve);
    if (args.p && *args.p != found->p) throw UsageError("curve " + args.curve + " is not over F_" + std::to_string(*args.p));
    X = Variety::elliptic(*found);
  }
  const RigidityReport rep = rigidity_compare(X, args.levels, args.invert_p, args.certify_level, cfg.field_ceiling);
  CommandResult r;
  if (cfg.format == "markdown") {
    std::ostringstream o;
    o << "| level | H^1 | H^2 | H^3 |\n|---|---|---|---|\n";
    for (const auto& w : rep.per_level)
      o << "| " << w.level << " | " << io::describe(w.graded.at(1)) << " | " << io::describe(w.graded.at(2)) << " | "
        << io::describe(w.graded.at(3)) << " |\n";
    o << "\nstabilization: "
      << (rep.stabilization_level ? "level " + std::to_string(*rep.stabilization_level) : std::string("none"))
      << "; cokernel classes certified: " << (rep.all_certified() ? "yes" : "no") << "; " << pass_fail(rep.passed())
      << "\n";
    r.output = o.str();
  } else {
    Json j = io::to_json(rep);
    j = Json{{"command", "weight1"}, {"report", j}};
    r.output = io::dump(j);
  }
  if (!rep.passed()) r.exit_code = kMismatch;
  return r;
}

CommandResult cmd_versch(std::optional<std::uint32_t> p, unsigned max_level, unsigned kernel_level, const RunConfig& cfg) {
  if (p) require_prime(*p);
  Json curves = Json::array();
  bool all = true;
  std::ostringstream md;
  md << "| curve | p | points | V∘φ = [p] | φ∘V = [p] | form > 0 | deg(p - V) | p·#E(F_p) | kernel counts |\n"
     << "|---|---|---|---|---|---|---|---|---|\n";
  std::size_t n = 0;
  for (const auto& c : io::load_corpus(corpus_path(cfg))) {
    if (p && c.p != *p) continue;
    const VerschiebungReport rep = verschiebung_report(c, max_level, kernel_level, cfg.field_ceiling);
    all = all && rep.passed();
    ++n;
    curves.push_back(io::to_json(rep));
    std::string counts;
    for (const auto& k : rep.kernel.counts) counts += (counts.empty() ? "" : ",") + std::to_string(k.count);
    md << "| " << c.name << " | " << c.p << " | " << rep.points_checked << " | " << pass_fail(rep.v_after_phi) << " | "
       << pass_fail(rep.phi_after_v) << " | " << pass_fail(rep.form_positive) << " | " << rep.p_minus_v_degree << " | "
       << rep.expected_degree << " | " << counts << " |\n";
  }
  if (n == 0) throw UsageError("no curves selected");
  CommandResult r;
  r.output = cfg.format == "markdown"
                 ? md.str()
                 : io::dump(Json{{"command", "versch"}, {"max_level", max_level}, {"curves", curves}, {"passed", all}});
  if (!all) r.exit_code = kMismatch;
  return r;
}

CommandResult cmd_thh(std::int64_t p, unsigned d, unsigned n, unsigned D, const std::vector<unsigned>& levels,
                      const RunConfig& cfg) {
  require_prime(p);
  if (levels.empty()) throw UsageError("no levels");
  for (unsigned m : levels)
    if (m == 0) throw UsageError("levels start at 1");
  const ThhReport rep = frobenius_thh_rigidity(p, d, n, D, levels);
  CommandResult r;
  if (cfg.format == "markdown") {
    std::ostringstream o;
    o << "| level | ker dim | coker dim | expected |\n|---|---|---|---|\n";
    for (std::size_t i = 0; i < rep.levels.size(); ++i)
      o << "| " << rep.levels[i] << " | " << rep.ker_dims[i] << " | " << rep.coker_dims[i] << " | " << rep.expected_dim
        << " |\n";
    o << "\ncokernel certified: " << (rep.coker_certified() ? "yes" : "no") << "; " << pass_fail(rep.passed()) << "\n";
    r.output = o.str();
  } else {
    r.output = io::dump(Json{{"command", "thh"}, {"report", io::to_json(rep)}});
  }
  if (!rep.passed()) r.exit_code = kMismatch;
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frobenius fixed points of graded and ind-abelian groups"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  if (const char* env = std::getenv(kCeilingEnv)) {
    try {
      cfg.field_ceiling = std::stoull(env);
    } catch (const std::exception&) {
      err << kCeilingEnv << " must be a positive integer\n";
      return kUsage;
    }
  }
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "markdown"}));
  app.add_option("--ceiling", cfg.field_ceiling, "Largest finite field size")->check(CLI::PositiveNumber);
  app.add_option("--corpus", cfg.corpus, "Curve corpus (JSON)");

  std::int64_t p = 0;
  int n_max = 12;
  auto* ktable = app.add_subcommand("ktable", "Frobenius fixed points of K(F_p-bar)");
  ktable->add_option("--p", p, "Prime")->required();
  ktable->add_option("--n-max", n_max, "Largest degree");
  ktable->add_flag("--check", cfg.check, "Compare with the expected table");

  auto* pitable = app.add_subcommand("pitable", "Frobenius fixed points of the stable stems, odd p");
  pitable->add_option("--p", p, "Odd prime")->required();
  pitable->add_flag("--check", cfg.check, "Compare with the expected table");

  Weight1Args w1;
  std::uint32_t w1p = 0;
  auto* weight1 = app.add_subcommand("weight1", "Weight one rigidity across field levels");
  weight1->add_option("--curve", w1.curve, "point, P1, or a corpus curve name");
  weight1->add_option("--p", w1p, "Prime (for point and P1)");
  weight1->add_option("--levels", w1.levels, "Field levels m of F_{p^m}")->delimiter(',');
  weight1->add_flag("--invert-p", w1.invert_p, "Localize away from p");
  weight1->add_option("--certify-level", w1.certify_level, "Certify cokernel classes up to this level");

  std::uint32_t vp = 0;
  unsigned max_level = 3, kernel_level = 4;
  auto* versch = app.add_subcommand("versch", "Verschiebung identities on a curve corpus");
  versch->add_option("--p", vp, "Only curves over F_p");
  versch->add_option("--max-level", max_level, "Levels for the point identities");
  versch->add_option("--kernel-level", kernel_level, "Levels for kernel counting");

  unsigned d = 1, n = 1, D = 5;
  std::vector<unsigned> levels{1, 2, 3};
  std::int64_t tp = 2;
  auto* thh = app.add_subcommand("thh", "Artin-Schreier fixed points on truncated HKR");
  thh->add_option("--p", tp, "Prime");
  thh->add_option("--d", d, "Number of variables");
  thh->add_option("--n", n, "THH degree");
  thh->add_option("--D", D, "Coefficient degree bound");
  thh->add_option("--levels", levels, "Factorial tower levels")->delimiter(',');

  // CLI11 wants a mutable argv.
  std::vector<std::string> storage(argv, argv + argc);
  std::vector<char*> args;
  for (auto& s : storage) args.push_back(s.data());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    CommandResult r;
    if (*ktable) r = cmd_ktable(p, n_max, cfg);
    else if (*pitable) r = cmd_pitable(p, cfg);
    else if (*weight1) {
      if (weight1->count("--p")) w1.p = w1p;
      r = cmd_weight1(w1, cfg);
    } else if (*versch) {
      r = cmd_versch(versch->count("--p") ? std::optional<std::uint32_t>(vp) : std::nullopt, max_level, kernel_level, cfg);
    } else {
      r = cmd_thh(tp, d, n, D, levels, cfg);
    }
    out << r.output;
    return r.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource ceiling: " << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace frobfix::cli
