#include "nosol/serialization.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace nosol {
namespace {

Int parse_decimal(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used, 10);
  } catch (const std::exception&) {
    throw PreconditionError("not a decimal integer: '" + s + "'");
  }
  if (used != s.size()) throw PreconditionError("not a decimal integer: '" + s + "'");
  return static_cast<Int>(v);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json int_array(std::span<const Int> values) {
  Json out = Json::array();
  for (Int v : values) out.push_back(std::to_string(v));
  return out;
}

Int parse_int(const Json& j) {
  if (j.is_string()) return parse_decimal(j.get<std::string>());
  if (j.is_number_integer()) return j.get<Int>();
  throw PreconditionError("expected an integer");
}

std::vector<Int> parse_int_array(const Json& j) {
  if (!j.is_array()) throw PreconditionError("expected an array of integers");
  std::vector<Int> out;
  for (const auto& v : j) out.push_back(parse_int(v));
  return out;
}

Json equation_json(const Equation& eq) {
  Json j;
  j["coeffs"] = int_array(eq.coeffs());
  j["symmetric_gen"] = eq.is_symmetric() ? int_array(*eq.generators()) : Json(nullptr);
  j["text"] = eq.to_string();
  return j;
}

Equation equation_from_json(const Json& j) {
  const auto coeffs = parse_int_array(field(j, "coeffs"));
  if (j.contains("symmetric_gen") && !j.at("symmetric_gen").is_null()) {
    Equation eq = Equation::symmetric(parse_int_array(j.at("symmetric_gen")));
    if (!std::equal(coeffs.begin(), coeffs.end(), eq.coeffs().begin(), eq.coeffs().end()))
      throw PreconditionError("coeffs do not match symmetric_gen");
    return eq;
  }
  return Equation::from_ordered(coeffs);
}

Json rate_json(const Rate& r) {
  Json j;
  j["count"] = std::to_string(r.count);
  j["base"] = std::to_string(r.base);
  j["num_log"] = static_cast<double>(std::log(static_cast<long double>(std::max<Int>(r.count, 1))));
  j["den_log"] = static_cast<double>(std::log(static_cast<long double>(r.base)));
  j["decimal"] = static_cast<double>(r.value());
  return j;
}

Json certificate_json(const Certificate& cert) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["equation"] = equation_json(cert.digit_set.equation);
  j["base"] = std::to_string(cert.digit_set.base);
  j["digits"] = int_array(cert.digit_set.digits);
  j["rate"] = rate_json(cert.rate());
  j["verified"] = cert.verified;
  j["method"] = to_string(cert.method);
  j["oracle_nodes"] = cert.oracle_nodes;
  j["mode"] = to_string(cert.mode);
  Json pairs = Json::array();
  for (auto [a, b] : cert.pairs) pairs.push_back({a, b});
  j["pairs"] = pairs;
  j["recipe"] = cert.recipe;
  j["analytic_bound"] = cert.analytic_bound;
  j["bound_label"] = cert.bound_label;
  j["degenerate"] = cert.degenerate;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  try {
    if (field(j, "schema").get<int>() != kSchemaVersion) throw PreconditionError("unsupported certificate schema");
    Certificate cert;
    cert.digit_set.equation = equation_from_json(field(j, "equation"));
    cert.digit_set.base = parse_int(field(j, "base"));
    cert.digit_set.digits = parse_int_array(field(j, "digits"));
    cert.mode = solution_mode_from_string(field(j, "mode").get<std::string>());
    if (j.contains("pairs"))
      for (const auto& p : j.at("pairs")) {
        if (!p.is_array() || p.size() != 2) throw PreconditionError("pairs must be [i, j] entries");
        cert.pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
      }
    cert.verified = j.value("verified", false);
    const std::string method = j.value("method", std::string("none"));
    cert.method = method == "oracle" ? Verification::Oracle
                  : method == "analytic" ? Verification::Analytic
                                         : Verification::None;
    cert.oracle_nodes = j.value("oracle_nodes", std::uint64_t{0});
    cert.recipe = j.value("recipe", std::string());
    cert.analytic_bound = j.value("analytic_bound", 0.0);
    cert.bound_label = j.value("bound_label", std::string());
    cert.degenerate = j.value("degenerate", false);
    return cert;
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("malformed certificate: ") + e.what());
  }
}

Json dependency_json(const Dependency& d) {
  return Json::array({std::to_string(d.i), std::to_string(d.j), std::to_string(d.k)});
}

Json outcome_json(const ThreeCoefficientOutcome& o) {
  Json j;
  j["case"] = to_string(o.kind);
  j["alpha"] = o.alpha;
  j["radius"] = std::to_string(o.radius);
  j["dependency"] = o.dependency ? dependency_json(*o.dependency) : Json(nullptr);
  if (o.pair)
    j["pair"] = {{"positions", {o.pair->first, o.pair->second}},
                 {"small", std::to_string(o.pair->small)},
                 {"large", std::to_string(o.pair->large)}};
  else
    j["pair"] = nullptr;
  j["window"] = std::to_string(o.window);
  return j;
}

Json alpha_json(const AlphaParams& p) {
  return Json{{"schema", kSchemaVersion}, {"beta", p.beta},   {"q", p.q},
              {"alpha", p.alpha},         {"rate", p.rate},   {"inverse_rate", 1.0 / p.rate},
              {"residual", p.residual}};
}

Json epsilon_json(const EpsilonThresholds& t) {
  return Json{{"schema", kSchemaVersion}, {"k", t.k},
              {"epsilon", t.epsilon},     {"clamped", t.clamped},
              {"log_counting", t.log_counting}, {"log_density", t.log_density},
              {"counting", t.counting()},       {"density", t.density()}};
}

Json sweep_json(const SweepReport& r) {
  Json j{{"schema", kSchemaVersion},
         {"k", r.k},
         {"C", std::to_string(r.C)},
         {"epsilon", r.epsilon},
         {"B", std::to_string(r.B)},
         {"sampling", r.sampling.kind == Sampling::Kind::Exhaustive ? "exhaustive" : "monte_carlo"}};
  if (r.sampling.kind == Sampling::Kind::MonteCarlo) {
    j["samples"] = r.sampling.samples;
    j["seed"] = r.sampling.seed;
    j["rng"] = r.rng;
  }
  j["total"] = r.total;
  j["bad"] = r.bad;
  j["bad_estimate"] = r.bad_estimate;
  j["std_error"] = r.std_error;
  j["counting_bound"] = r.counting_bound;
  j["bound_ok"] = r.bound_ok;
  j["within_epsilon"] = r.within_epsilon;
  return j;
}

Json rate_report_json(const RateReport& r) {
  return Json{{"schema", kSchemaVersion},
              {"rate", r.rate},
              {"analytic_bound", r.analytic_bound},
              {"bound_label", r.bound_label},
              {"binding", r.binding}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  auto tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Int> parse_integer_lines(const std::string& text) {
  std::vector<Int> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.push_back(parse_decimal(line.substr(b, e - b + 1)));
  }
  return out;
}

}  // namespace nosol
