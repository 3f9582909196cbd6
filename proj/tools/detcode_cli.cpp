// detcode: command-line front end for determinantal codes.
//
//   detcode spectrum --q 2 --l 2 --m 2 --t 1 --path both
//   detcode ghw --q 2 --l 2 --m 3 --t 1 --r 1..6
//   detcode count --q 3 --l 2 --m 2 --t 1
//   detcode genmat --q 4 --l 2 --m 2 --t 1 --out g.txt
//   detcode rank1max --q 2 --l 2 --m 2 --r 3
//   detcode verify --q 2 --l 2 --m 3 --t 1
//
// Exit status: 0 ok, 1 verification failure, 2 bad parameters, 3 budget exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "detcode/counting.hpp"
#include "detcode/detcode.hpp"
#include "detcode/formulas.hpp"
#include "detcode/rank1.hpp"
#include "detcode/report.hpp"
#include "detcode/verify.hpp"

using namespace detcode;

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kParamError = 2;
constexpr int kBudgetError = 3;

struct RunConfig {
  std::string q = "2";
  std::size_t l = 2, m = 2, t = 1;
  std::string r;
  std::string mode = "projective";
  std::string path = "both";
  std::string format = "table";
  std::string out;
  std::string groups;
  unsigned threads = 1;
  std::uint64_t brute_budget = 200'000;

  Field field() const { return parse_field(q); }
  CodeParams code_params() const { return CodeParams(field(), l, m, t, parse_mode(mode)); }
};

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text, std::int64_t lo, std::int64_t hi) {
  if (text.empty()) return {lo, hi};
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const std::int64_t v = std::stoll(text);
      return {v, v};
    }
    return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadParameters, "bad --r value '" + text + "' (use n or a..b)");
  }
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw Error(ErrorCode::BadParameters, "cannot write " + cfg.out);
  f << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

SearchOptions search_options(const RunConfig& cfg) {
  SearchOptions o;
  o.threads = cfg.threads;
  return o;
}

int run_spectrum(const RunConfig& cfg) {
  const CodeParams p = cfg.code_params();
  if (cfg.path != "closed" && cfg.path != "brute" && cfg.path != "both")
    throw Error(ErrorCode::BadParameters, "--path must be closed, brute or both");
  const auto L = static_cast<std::int64_t>(p.l), M = static_cast<std::int64_t>(p.m), T = static_cast<std::int64_t>(p.t);
  std::optional<SpectrumReport> closed, brute;
  if (cfg.path != "brute") closed = closed_weight_enumerator(T, L, M, p.q(), p.mode);
  if (cfg.path != "closed") brute = DeterminantalCode(p).brute_weight_enumerator();
  const bool both = closed && brute;
  const bool match = !both || *closed == *brute;

  Report report = Report::for_code(p);
  report.spectrum = closed ? closed : brute;
  if (cfg.format == "json") {
    auto j = to_json(report);
    if (both) j["match"] = match;
    emit(cfg, dump(j));
  } else {
    std::ostringstream os;
    os << format_table(report);
    if (closed) os << "closed " << closed->to_string() << '\n';
    if (brute) os << "brute  " << brute->to_string() << '\n';
    if (both) os << (match ? "MATCH" : "MISMATCH") << '\n';
    emit(cfg, os.str());
  }
  return match ? 0 : kVerifyFailed;
}

int run_ghw(const RunConfig& cfg) {
  const CodeParams p = cfg.code_params();
  const auto k = static_cast<std::int64_t>(p.dimension());
  const auto [lo, hi] = parse_range(cfg.r, 1, k);
  if (lo < 1 || hi > k || lo > hi) throw Error(ErrorCode::BadParameters, "--r must lie in 1.." + std::to_string(k));
  const DeterminantalCode code(p);
  Report report = Report::for_code(p);
  bool ok = true;
  for (std::int64_t r = lo; r <= hi; ++r) {
    report.ghw.push_back(ghw_row(code, r, cfg.brute_budget, search_options(cfg)));
    if (report.ghw.back().brute && !report.ghw.back().brute_confirmed) ok = false;
  }
  emit(cfg, cfg.format == "json" ? dump(to_json(report)) : format_table(report));
  return ok ? 0 : kVerifyFailed;
}

int run_count(const RunConfig& cfg) {
  const CodeParams p = cfg.code_params();
  const auto L = static_cast<std::int64_t>(p.l), M = static_cast<std::int64_t>(p.m), T = static_cast<std::int64_t>(p.t);
  const Lengths len = lengths(L, M, T, p.q());
  if (cfg.format == "json") {
    nlohmann::json j;
    j["q"] = p.q();
    j["l"] = p.l;
    j["m"] = p.m;
    j["t"] = p.t;
    j["mode"] = std::string(to_string(p.mode));
    j["length"] = (p.mode == Mode::affine ? len.n : len.n_hat).str();
    j["n"] = len.n.str();
    j["n_hat"] = len.n_hat.str();
    j["dimension"] = p.dimension();
    auto& mus = j["mu"] = nlohmann::json::array();
    for (std::int64_t r = 0; r <= L; ++r) mus.push_back(mu(L, M, r, p.q()).str());
    emit(cfg, dump(j));
    return 0;
  }
  std::ostringstream os;
  os << "n_hat = " << len.n_hat << "\nn = " << len.n << "\nk = " << p.dimension() << "\n";
  os << "rank  count\n";
  for (std::int64_t r = 0; r <= L; ++r) os << r << "  " << mu(L, M, r, p.q()) << '\n';
  emit(cfg, os.str());
  return 0;
}

int run_genmat(const RunConfig& cfg) {
  const CodeParams p = cfg.code_params();
  const EvaluationDomain dom(p);
  emit(cfg, format_generator_matrix(p, generator_matrix(dom)));
  return 0;
}

int run_rank1max(const RunConfig& cfg) {
  const Field f = cfg.field();
  if (cfg.r.empty()) throw Error(ErrorCode::BadParameters, "rank1max needs --r");
  const auto [lo, hi] = parse_range(cfg.r, 0, 0);
  if (lo < 1 || lo > hi) throw Error(ErrorCode::BadParameters, "bad --r");
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream os;
  bool ok = true;
  for (std::int64_t r = lo; r <= hi; ++r) {
    const auto ext = max_rank1_exhaustive(f, cfg.l, cfg.m, static_cast<std::size_t>(r), search_options(cfg));
    ok = ok && ext.consistent;
    nlohmann::json e{{"r", r}, {"max_rank1", std::to_string(ext.max_count)}, {"consistent", ext.consistent}};
    os << "r=" << r << "  max rank-1 count " << ext.max_count;
    if (ext.bound) {
      e["bound"] = ext.bound->max_rank1.str();
      e["bound_applies"] = ext.bound->hypothesis_holds;
      e["min_higher_rank"] = ext.bound->min_higher_rank.str();
      os << "  bound " << ext.bound->max_rank1 << (ext.bound->hypothesis_holds ? "" : " (r <= m: all nonzero)");
    }
    os << (ext.consistent ? "" : "  INCONSISTENT") << "\nwitness basis:\n" << format_matrix(ext.witness.basis());
    std::vector<std::vector<Elem>> basis;
    for (std::size_t i = 0; i < ext.witness.dim(); ++i) {
      auto row = ext.witness.basis().row(i);
      basis.emplace_back(row.begin(), row.end());
    }
    e["witness"] = basis;
    rows.push_back(std::move(e));
  }
  if (cfg.format == "json") {
    nlohmann::json j{{"q", f.order()}, {"l", cfg.l}, {"m", cfg.m}, {"rank1max", rows}};
    emit(cfg, dump(j));
  } else {
    emit(cfg, os.str());
  }
  return ok ? 0 : kVerifyFailed;
}

int run_verify(const RunConfig& cfg) {
  VerifyOptions opt;
  opt.threads = cfg.threads;
  opt.subspace_budget = cfg.brute_budget;
  std::stringstream ss(cfg.groups);
  for (std::string g; std::getline(ss, g, ',');)
    if (!g.empty()) {
      if (std::find(groups::all().begin(), groups::all().end(), g) == groups::all().end())
        throw Error(ErrorCode::BadParameters, "unknown verify group '" + g + "'");
      opt.only.insert(g);
    }
  const VerifyReport report = verify(cfg.field(), cfg.l, cfg.m, cfg.t, opt);
  if (cfg.format == "json") {
    nlohmann::json j{{"params", report.params}, {"passed", report.all_passed()}};
    auto& arr = j["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks)
      arr.push_back({{"group", c.group}, {"name", c.name}, {"status", std::string(to_string(c.status))}, {"detail", c.detail}});
    emit(cfg, dump(j));
  } else {
    emit(cfg, format_verify_report(report));
  }
  return report.all_passed() ? 0 : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinantal codes over finite fields"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool needs_t) {
    sub->add_option("--q", cfg.q, "field order: q or p^e")->required();
    sub->add_option("--l", cfg.l, "rows")->required();
    sub->add_option("--m", cfg.m, "columns")->required();
    if (needs_t) sub->add_option("--t", cfg.t, "rank bound of the evaluation points")->required();
    sub->add_option("--format", cfg.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--out", cfg.out, "write the report to this file");
    sub->add_option("--threads", cfg.threads, "worker threads for exhaustive searches")->check(CLI::Range(1u, 1024u));
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "affine or projective")->check(CLI::IsMember({"affine", "projective"}));
  };

  auto* spectrum = app.add_subcommand("spectrum", "weight enumerator");
  add_common(spectrum, true);
  add_mode(spectrum);
  spectrum->add_option("--path", cfg.path, "closed, brute or both")->check(CLI::IsMember({"closed", "brute", "both"}));

  auto* ghw = app.add_subcommand("ghw", "generalized Hamming weights");
  add_common(ghw, true);
  add_mode(ghw);
  ghw->add_option("--r", cfg.r, "r or a..b (default 1..lm)");
  ghw->add_option("--brute-budget", cfg.brute_budget, "largest number of subcodes searched per r");

  auto* count = app.add_subcommand("count", "lengths and rank counts");
  add_common(count, true);
  add_mode(count);

  auto* genmat = app.add_subcommand("genmat", "generator matrix");
  add_common(genmat, true);
  add_mode(genmat);

  auto* rank1max = app.add_subcommand("rank1max", "largest number of rank-1 matrices in an r-dimensional space");
  add_common(rank1max, false);
  rank1max->add_option("--r", cfg.r, "r or a..b")->required();

  auto* verify_cmd = app.add_subcommand("verify", "run the cross-check suite");
  add_common(verify_cmd, true);
  verify_cmd->add_option("--groups", cfg.groups, "comma-separated subset of check groups");
  verify_cmd->add_option("--brute-budget", cfg.brute_budget, "largest number of subspaces searched per r");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParamError;
  }

  try {
    if (*spectrum) return run_spectrum(cfg);
    if (*ghw) return run_ghw(cfg);
    if (*count) return run_count(cfg);
    if (*genmat) return run_genmat(cfg);
    if (*rank1max) return run_rank1max(cfg);
    if (*verify_cmd) return run_verify(cfg);
  } catch (const Error& e) {
    std::cerr << "detcode: " << e.what() << '\n';
    if (e.code() == ErrorCode::BudgetExceeded) return kBudgetError;
    return is_parameter_error(e.code()) ? kParamError : kVerifyFailed;
  }
  return kParamError;
}
