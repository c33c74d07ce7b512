#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "nosol/constructions.hpp"
#include "nosol/digit_search.hpp"
#include "nosol/rate_toolkit.hpp"
#include "nosol/serialization.hpp"

namespace nosol::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> args;
  Clock::time_point start = Clock::now();
};

std::uint64_t default_budget() {
  if (const char* env = std::getenv("NOSOL_BUDGET"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size() && v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("NOSOL_BUDGET must be a positive integer");
  }
  return kDefaultBudget;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct EquationSpec {
  std::vector<Int> sym;
  std::vector<Int> eq;

  bool given() const { return !sym.empty() || !eq.empty(); }

  Equation build() const {
    if (!sym.empty() && !eq.empty()) throw UsageError("give either --sym or --eq, not both");
    if (!sym.empty()) return Equation::symmetric(normalize_generators(sym));
    if (!eq.empty()) return Equation::from_coeffs(eq);
    throw UsageError("an equation is required (--sym or --eq)");
  }
};

void add_equation_options(CLI::App* app, EquationSpec& spec) {
  app->add_option("--sym", spec.sym, "symmetric generators a1,...,ak")->delimiter(',');
  app->add_option("--eq", spec.eq, "coefficients c1,...,cm with zero sum")->delimiter(',');
}

std::vector<IndexPair> parse_pairs(const std::string& text) {
  std::vector<IndexPair> pairs;
  if (text.empty()) return pairs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("pairs look like 0:3,1:4");
    try {
      pairs.emplace_back(std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw UsageError("pairs look like 0:3,1:4");
    }
  }
  return pairs;
}

std::vector<Int> sorted_unique(std::vector<Int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Json manifest_json(const Context& ctx, const Json& config, std::uint64_t budget,
                   const std::vector<std::string>& certificates, const std::vector<std::string>& other) {
  Json m;
  m["schema"] = kSchemaVersion;
  m["tool_version"] = kToolVersion;
  m["command"] = ctx.args;
  m["config"] = config;
  m["budget"] = budget;
  m["wall_time_s"] = std::chrono::duration<double>(Clock::now() - ctx.start).count();
  m["certificates"] = certificates;
  m["files"] = other;
  return m;
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

void write_with_manifest(const Context& ctx, const std::string& path, const Json& body, const Json& config,
                         std::uint64_t budget, bool is_certificate, const std::vector<std::string>& extra) {
  write_file_atomic(path, dump(body));
  std::vector<std::string> certs, files = extra;
  (is_certificate ? certs : files).push_back(path);
  write_file_atomic(manifest_path(path), dump(manifest_json(ctx, config, budget, certs, files)));
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  EquationSpec equation;
  std::vector<Int> set;
  std::string set_file;
  std::string cert;
  std::string mode;
  std::string pairs;
  std::optional<std::uint64_t> budget;
};

int run_verify(Context& ctx, const VerifyArgs& a) {
  const std::uint64_t budget = a.budget.value_or(default_budget());
  const int sources = static_cast<int>(!a.set.empty()) + !a.set_file.empty() + !a.cert.empty();
  if (sources != 1) throw UsageError("give exactly one of --set, --set-file, --cert");

  Json report;
  report["schema"] = kSchemaVersion;
  report["command"] = "verify";

  std::optional<Certificate> cert;
  Equation eq;
  std::vector<Int> set;
  SolutionMode mode = SolutionMode::NonTrivial;
  std::vector<IndexPair> pairs = parse_pairs(a.pairs);
  if (!a.cert.empty()) {
    try {
      cert = certificate_from_json(Json::parse(read_file(a.cert)));
    } catch (const Json::exception& e) {
      throw UsageError(std::string("certificate is not valid JSON: ") + e.what());
    }
    if (a.equation.given()) throw UsageError("--cert already carries its equation");
    eq = cert->digit_set.equation;
    set = cert->digit_set.digits;
    mode = cert->mode;
    if (pairs.empty()) pairs = cert->pairs;
    report["certificate"] = a.cert;
    report["base"] = std::to_string(cert->digit_set.base);
    report["no_carry"] = cert->digit_set.no_carry();
  } else {
    eq = a.equation.build();
    set = !a.set.empty() ? a.set : parse_integer_lines(read_file(a.set_file));
  }
  if (!a.mode.empty()) mode = solution_mode_from_string(a.mode);
  set = sorted_unique(std::move(set));
  if (set.empty()) throw UsageError("the set is empty");

  report["equation"] = equation_json(eq);
  report["mode"] = to_string(mode);
  report["set_size"] = set.size();

  std::uint64_t nodes = 0;
  std::optional<SolutionClass> witness;
  auto probe = [&](SolutionMode m) {
    SolutionQuery q{eq, set, m, {}, budget};
    if (m == SolutionMode::Paired) q.pairs = pairs;
    SearchStats stats;
    witness = find_nontrivial_solution(q, &stats);
    nodes += stats.nodes;
  };
  try {
    probe(mode);
    if (!witness && mode != SolutionMode::Paired && !pairs.empty()) probe(SolutionMode::Paired);
  } catch (const BudgetExhausted& e) {
    report["status"] = "budget_exhausted";
    report["nodes"] = e.nodes();
    ctx.out << dump(report);
    return kBudget;
  }
  report["nodes"] = nodes;
  const bool carry_ok = !cert || cert->digit_set.no_carry();
  if (witness) {
    report["status"] = "witness";
    report["witness"] = int_array(witness->assignment);
  } else {
    report["status"] = carry_ok ? "clean" : "no_carry_violated";
  }
  ctx.out << dump(report);
  return witness || !carry_ok ? kWitness : kClean;
}

// --------------------------------------------------------------- construct

struct ConstructArgs {
  std::string recipe;
  Int m = 0, k = 0, a = 0, b = 0, c = 0, s = 0, d = 0, L = 0;
  std::vector<Int> gens, i, j, set;
  std::string cert, set_file, out, set_out;
  std::optional<double> alpha;
  bool proof_constants = false;
  std::optional<Int> N;
  std::optional<std::uint64_t> budget;
  Int oracle_limit = 200;
  EquationSpec equation;
};

int run_construct(Context& ctx, const ConstructArgs& a) {
  ConstructionOptions opt;
  opt.budget = a.budget.value_or(default_budget());
  opt.oracle_digit_limit = a.oracle_limit;

  Json config{{"recipe", a.recipe}, {"budget", opt.budget}, {"oracle_digit_limit", a.oracle_limit}};
  Json summary{{"schema", kSchemaVersion}, {"command", "construct"}, {"recipe", a.recipe}};
  Certificate cert;
  if (a.recipe == "geometric") {
    cert = geometric_digits(a.m, a.k, opt);
    config["m"] = a.m, config["k"] = a.k;
  } else if (a.recipe == "two-var") {
    cert = two_var_digits(a.a, a.b, opt);
    config["a"] = a.a, config["b"] = a.b;
  } else if (a.recipe == "coprime-power") {
    cert = coprime_power_digits(a.a, a.b, a.k, opt);
    config["a"] = a.a, config["b"] = a.b, config["k"] = a.k;
  } else if (a.recipe == "spaced") {
    cert = spaced_digits(a.gens, a.s, opt);
    config["gens"] = int_array(a.gens), config["s"] = a.s;
  } else if (a.recipe == "three-gen") {
    ThreeCoefficientConfig tc = a.proof_constants ? ThreeCoefficientConfig::proof_constants()
                                                  : ThreeCoefficientConfig{};
    tc.budget = opt.budget;
    auto outcome = three_generator_pipeline(a.a, a.b, a.c, a.alpha, tc);
    cert = outcome.certificate;
    summary["pipeline"] = outcome_json(outcome);
    config["a"] = a.a, config["b"] = a.b, config["c"] = a.c, config["proof_constants"] = a.proof_constants;
    if (a.alpha) config["alpha"] = *a.alpha;
  } else if (a.recipe == "ap-free") {
    cert = ap_free_digits(a.d, opt);
    config["d"] = a.d;
  } else if (a.recipe == "distinct-var") {
    cert = distinct_var_digits(a.m, opt);
    config["m"] = a.m;
  } else if (a.recipe == "shift") {
    if (a.cert.empty()) throw UsageError("shift needs --cert");
    const Certificate base = certificate_from_json(Json::parse(read_file(a.cert)));
    cert = shift_transfer(base, a.i, a.j, opt);
    config["cert"] = a.cert, config["i"] = int_array(a.i), config["j"] = int_array(a.j);
  } else if (a.recipe == "window") {
    const auto set = sorted_unique(!a.set.empty() ? a.set : parse_integer_lines(read_file(a.set_file)));
    cert = window_extract(set, a.L, a.equation.build(), opt);
    config["L"] = a.L;
  } else {
    throw UsageError("unknown recipe " + a.recipe);
  }

  const std::string out = a.out.empty() ? a.recipe + ".cert.json" : a.out;
  std::vector<std::string> extra;
  if (a.N) {
    const LiftedSet lifted = lift(cert, *a.N);
    const auto elements = lifted.elements();
    std::string text;
    for (Int e : elements) text += std::to_string(e) + "\n";
    const std::string set_out = a.set_out.empty() ? out + ".set.txt" : a.set_out;
    write_file_atomic(set_out, text);
    extra.push_back(set_out);
    summary["lifted"] = {{"N", std::to_string(*a.N)}, {"size", std::to_string(elements.size())}, {"path", set_out}};
    config["N"] = *a.N;
  }
  write_with_manifest(ctx, out, certificate_json(cert), config, opt.budget, true, extra);

  summary["certificate"] = out;
  summary["manifest"] = manifest_path(out);
  summary["verified"] = cert.verified;
  summary["base"] = std::to_string(cert.digit_set.base);
  summary["digits"] = int_array(cert.digit_set.digits);
  summary["rate"] = rate_json(cert.rate());
  const long double r = cert.rate().value();
  summary["inverse_rate"] = r > 0 ? Json(static_cast<double>(1 / r)) : Json(nullptr);
  ctx.out << dump(summary);
  return cert.verified ? kClean : kBudget;
}

// ------------------------------------------------------------------ search

struct SearchArgs {
  EquationSpec equation;
  std::string grid = "auto";
  std::vector<Int> L;
  bool exact = false, greedy = false, extended = false, progress = false;
  std::uint64_t progress_interval = 1'000'000;
  std::string mode = "all";
  std::string pairs;
  std::optional<std::uint64_t> budget;
  std::optional<double> target;
  std::string out;
};

struct GridRow {
  Int L = 0;
  DigitSearchResult result;
};

std::vector<Int> auto_grid(Int s, bool extended) {
  std::vector<Int> grid;
  for (Int M = 4; M <= (extended ? 512 : 128); M *= 2) grid.push_back(checked_add(checked_mul(s, M), 1));
  return grid;
}

Rate tight_rate(const Equation& eq, const std::vector<Int>& digits) {
  if (digits.empty()) return Rate{0, 2};
  return Rate{static_cast<Int>(digits.size()), std::max<Int>(2, eq.side_sum() * digits.back() + 1)};
}

void run_grid(Context& ctx, const Equation& eq, const SearchConfig& base, const std::vector<Int>& grid,
              std::vector<GridRow>& rows, bool progress) {
  const std::size_t first = rows.size();
  rows.resize(first + grid.size());
  std::mutex io;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < grid.size();) {
      try {
        SearchConfig cfg = base;
        if (progress) {
          const Int L = grid[t];
          cfg.on_progress = [&io, &ctx, L](const SearchProgress& p) {
            std::lock_guard lock(io);
            ctx.err << Json{{"event", "progress"}, {"L", std::to_string(L)}, {"best_size", p.best_size},
                            {"nodes", p.nodes}, {"depth", p.depth}}
                           .dump()
                    << "\n";
          };
        }
        rows[first + t] = {grid[t], max_digit_set(eq, grid[t], cfg)};
      } catch (...) {
        std::lock_guard lock(io);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                            static_cast<unsigned>(grid.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);
}

int run_search(Context& ctx, const SearchArgs& a) {
  const Equation eq = a.equation.build();
  SearchConfig cfg;
  cfg.budget = a.budget.value_or(default_budget());
  cfg.mode = a.greedy ? SearchMode::Greedy : (a.exact ? SearchMode::Exact : SearchMode::Anytime);
  cfg.solution_mode = solution_mode_from_string(a.mode);
  cfg.pairs = parse_pairs(a.pairs);
  cfg.report_interval = a.progress ? a.progress_interval : 0;

  std::vector<Int> grid;
  const bool use_auto = a.L.empty() && a.grid == "auto";
  if (!a.L.empty()) {
    grid = a.L;
  } else if (use_auto) {
    grid = auto_grid(eq.side_sum(), a.extended);
  } else {
    std::stringstream ss(a.grid);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        grid.push_back(std::stoll(item));
      } catch (const std::exception&) {
        throw UsageError("--L-grid takes 'auto' or a comma-separated list");
      }
    }
  }
  if (grid.empty()) throw UsageError("the L grid is empty");

  std::vector<GridRow> rows;
  run_grid(ctx, eq, cfg, grid, rows, a.progress);
  auto best_index = [&] {
    std::size_t best = 0;
    for (std::size_t t = 1; t < rows.size(); ++t)
      if (tight_rate(eq, rows[best].result.digits) < tight_rate(eq, rows[t].result.digits)) best = t;
    return best;
  };
  bool extended = a.extended;
  if (use_auto && !extended && a.target &&
      static_cast<double>(tight_rate(eq, rows[best_index()].result.digits).value()) < *a.target) {
    std::vector<Int> more;
    for (Int L : auto_grid(eq.side_sum(), true))
      if (std::find(grid.begin(), grid.end(), L) == grid.end()) more.push_back(L);
    run_grid(ctx, eq, cfg, more, rows, a.progress);
    extended = true;
  }

  Json table = Json::array();
  bool any_complete = false;
  for (const auto& row : rows) {
    const auto& r = row.result;
    any_complete = any_complete || r.exhausted;
    const Rate at_grid{static_cast<Int>(r.digits.size()), row.L};
    const Rate tight = tight_rate(eq, r.digits);
    table.push_back({{"L", std::to_string(row.L)},
                     {"size", r.digits.size()},
                     {"rate", static_cast<double>(at_grid.value())},
                     {"tight_base", std::to_string(tight.base)},
                     {"tight_rate", static_cast<double>(tight.value())},
                     {"exhausted", r.exhausted},
                     {"nodes", r.nodes},
                     {"digits", int_array(r.digits)}});
  }
  const auto& best = rows[best_index()];
  const Rate best_rate = tight_rate(eq, best.result.digits);

  Json report{{"schema", kSchemaVersion}, {"command", "search"}, {"equation", equation_json(eq)},
              {"mode", a.mode},           {"budget_per_L", cfg.budget}, {"extended", extended},
              {"table", table}};
  report["best"] = {{"L", std::to_string(best.L)},
                    {"digits", int_array(best.result.digits)},
                    {"rate", rate_json(best_rate)}};
  if (a.target) report["target_met"] = static_cast<double>(best_rate.value()) >= *a.target;

  const bool liftable_all = cfg.solution_mode != SolutionMode::NonTrivial || is_primitive(eq);
  if (liftable_all && best.result.digits.size() >= 1) {
    DigitSet ds{best_rate.base, best.result.digits, eq};
    Certificate cert = certify(std::move(ds), cfg.solution_mode, cfg.pairs, default_budget());
    cert.recipe = "search";
    cert.bound_label = "computer search";
    const std::string out = a.out.empty() ? "search.cert.json" : a.out;
    Json config{{"grid", int_array(grid)}, {"mode", a.mode}, {"search_mode", a.greedy ? "greedy" : a.exact ? "exact" : "anytime"},
                {"extended", extended}};
    write_with_manifest(ctx, out, certificate_json(cert), config, cfg.budget, true, {});
    report["certificate"] = out;
    report["verified"] = cert.verified;
  } else {
    report["certificate"] = nullptr;
    report["note"] = "equation is not primitive; exploratory search only";
  }
  ctx.out << dump(report);
  return any_complete ? kClean : kBestEffort;
}

// ------------------------------------------------------ sweep, alpha, rate

struct SweepArgs {
  int k = 2;
  Int C = 100;
  double eps = 0.3;
  bool exhaustive = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget;
  std::string out;
};

int run_sweep(Context& ctx, const SweepArgs& a) {
  const std::uint64_t budget = a.budget.value_or(default_budget());
  if (a.exhaustive == (a.samples > 0)) throw UsageError("give exactly one of --exhaustive or --samples");
  const Sampling sampling = a.exhaustive ? Sampling::exhaustive() : Sampling::monte_carlo(a.samples, a.seed);
  Json report;
  int code = kClean;
  try {
    report = sweep_json(random_tuple_sweep(a.k, a.C, a.eps, sampling, budget));
  } catch (const BudgetExhausted& e) {
    report = {{"schema", kSchemaVersion}, {"status", "budget_exhausted"}, {"required", e.nodes()}};
    code = kBudget;
  }
  report["thresholds"] = epsilon_json(c_epsilon(a.k, a.eps));
  if (!a.out.empty())
    write_with_manifest(ctx, a.out, report,
                        {{"k", a.k}, {"C", a.C}, {"epsilon", a.eps}, {"samples", a.samples}, {"seed", a.seed}},
                        budget, false, {});
  ctx.out << dump(report);
  return code;
}

int run_alpha(Context& ctx, double beta, double q, const std::string& out) {
  const Json report = alpha_json(alpha_optimal(beta, q));
  if (!out.empty()) write_with_manifest(ctx, out, report, {{"beta", beta}, {"q", q}}, 0, false, {});
  ctx.out << dump(report);
  return kClean;
}

int run_rate(Context& ctx, const std::string& path) {
  const Certificate cert = certificate_from_json(Json::parse(read_file(path)));
  Json report = rate_report_json(rate_report(cert));
  report["certificate"] = path;
  report["inverse_rate"] = report["rate"].get<double>() > 0 ? Json(1.0 / report["rate"].get<double>()) : Json(nullptr);
  ctx.out << dump(report);
  return kClean;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err, args};
  CLI::App app{"Constructions and verifiers for sets without solutions to invariant linear equations", "nosol"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a set for violating solutions");
  add_equation_options(verify, va.equation);
  verify->add_option("--set", va.set, "inline set")->delimiter(',');
  verify->add_option("--set-file", va.set_file, "file with one integer per line");
  verify->add_option("--cert", va.cert, "certificate JSON");
  verify->add_option("--mode", va.mode, "all | distinct | paired");
  verify->add_option("--pairs", va.pairs, "position pairs, e.g. 0:3,1:4");
  verify->add_option("--budget", va.budget, "node budget");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build and certify a digit set");
  construct->require_subcommand(1);
  auto recipe = [&](const char* name, const char* help) {
    auto* sub = construct->add_subcommand(name, help);
    sub->add_option("--out", ca.out, "certificate path");
    sub->add_option("--N", ca.N, "also write the lifted subset of [N]");
    sub->add_option("--set-out", ca.set_out, "path for the lifted set");
    sub->add_option("--budget", ca.budget, "oracle node budget");
    sub->add_option("--oracle-limit", ca.oracle_limit, "largest digit set re-checked by the oracle");
    sub->callback([&ca, name] { ca.recipe = name; });
    return sub;
  };
  auto* geo = recipe("geometric", "generators 1, m, ..., m^(k-1)");
  geo->add_option("--m", ca.m)->required();
  geo->add_option("--k", ca.k)->required();
  auto* tv = recipe("two-var", "ax + by = ax' + by'");
  tv->add_option("--a", ca.a)->required();
  tv->add_option("--b", ca.b)->required();
  auto* cp = recipe("coprime-power", "generators a, b, ..., b^(k-1)");
  cp->add_option("--a", ca.a)->required();
  cp->add_option("--b", ca.b)->required();
  cp->add_option("--k", ca.k)->required();
  auto* sp = recipe("spaced", "generators with s*a_i <= a_(i+1)");
  sp->add_option("--gens", ca.gens)->delimiter(',')->required();
  sp->add_option("--s", ca.s)->required();
  auto* tg = recipe("three-gen", "three generators a <= b <= c");
  tg->add_option("--a", ca.a)->required();
  tg->add_option("--b", ca.b)->required();
  tg->add_option("--c", ca.c)->required();
  tg->add_option("--alpha", ca.alpha);
  tg->add_flag("--proof-constants", ca.proof_constants, "use the literal proof thresholds");
  auto* af = recipe("ap-free", "x1 + x2 + d x3 + d x4 = 2 y1 + 2d y2");
  af->add_option("--d", ca.d)->required();
  auto* dv = recipe("distinct-var", "generators m, 2m-2, 3m-3 in distinct variables");
  dv->add_option("--m", ca.m)->required();
  auto* sh = recipe("shift", "shift generators by multiples of L");
  sh->add_option("--cert", ca.cert)->required();
  sh->add_option("--i", ca.i)->delimiter(',')->required();
  sh->add_option("--j", ca.j)->delimiter(',')->required();
  auto* wn = recipe("window", "best translate window of a solution-free set");
  add_equation_options(wn, ca.equation);
  wn->add_option("--set", ca.set)->delimiter(',');
  wn->add_option("--set-file", ca.set_file);
  wn->add_option("--L", ca.L)->required();

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "branch and bound over an L grid");
  add_equation_options(search, sa.equation);
  search->add_option("--L-grid", sa.grid, "auto or a comma-separated list of L");
  search->add_option("--L", sa.L, "single base (repeatable)")->delimiter(',');
  search->add_flag("--exact", sa.exact, "exact branch and bound");
  search->add_flag("--greedy", sa.greedy, "single greedy pass");
  search->add_flag("--extended", sa.extended, "extend the auto grid to M = 512");
  search->add_option("--target", sa.target, "extend the auto grid when the best rate is below this");
  search->add_option("--mode", sa.mode, "all | distinct | paired");
  search->add_option("--pairs", sa.pairs, "position pairs for paired mode");
  search->add_option("--budget", sa.budget, "node budget per L");
  search->add_flag("--progress", sa.progress, "stream progress events as JSON lines on stderr");
  search->add_option("--progress-interval", sa.progress_interval);
  search->add_option("--out", sa.out, "certificate path");

  SweepArgs wa;
  auto* sweep = app.add_subcommand("sweep", "count non-injective coefficient tuples");
  sweep->add_option("--k", wa.k);
  sweep->add_option("--C", wa.C);
  sweep->add_option("--eps", wa.eps);
  sweep->add_flag("--exhaustive", wa.exhaustive);
  sweep->add_option("--samples", wa.samples);
  sweep->add_option("--seed", wa.seed);
  sweep->add_option("--budget", wa.budget);
  sweep->add_option("--out", wa.out);

  double beta = 1.0, q = 0.499;
  std::string alpha_out;
  auto* alpha = app.add_subcommand("alpha", "solve the balancing quadratic");
  alpha->add_option("--beta", beta)->required();
  alpha->add_option("--q", q);
  alpha->add_option("--out", alpha_out);

  std::string rate_cert;
  auto* rate = app.add_subcommand("rate", "rate and analytic bound of a certificate");
  rate->add_option("--cert", rate_cert)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kClean;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kClean;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kClean;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const bool constructing = construct->parsed();
  try {
    if (verify->parsed()) return run_verify(ctx, va);
    if (constructing) return run_construct(ctx, ca);
    if (search->parsed()) return run_search(ctx, sa);
    if (sweep->parsed()) return run_sweep(ctx, wa);
    if (alpha->parsed()) return run_alpha(ctx, beta, q, alpha_out);
    if (rate->parsed()) return run_rate(ctx, rate_cert);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return constructing || rate->parsed() ? kPrecondition : kUsage;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace nosol::cli
