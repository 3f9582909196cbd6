#pragma once

// Cross-checks of every closed form against an independent computation for
// one parameter set (q, l, m, t). Each check is skipped rather than run when
// its enumeration exceeds the configured budget.

#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "detcode/counting.hpp"
#include "detcode/detcode.hpp"
#include "detcode/formulas.hpp"
#include "detcode/gf.hpp"
#include "detcode/matq.hpp"
#include "detcode/rank1.hpp"

namespace detcode {

namespace groups {
inline constexpr const char* kField = "field";
inline constexpr const char* kCounting = "counting";
inline constexpr const char* kDomain = "domain";
inline constexpr const char* kPartialTrace = "partial-trace";
inline constexpr const char* kSpectrum = "spectrum";
inline constexpr const char* kDelsarte = "delsarte";
inline constexpr const char* kT1Weights = "t1-weights";
inline constexpr const char* kTransfer = "transfer";
inline constexpr const char* kGenerator = "generator";
inline constexpr const char* kGhw = "ghw";
inline constexpr const char* kWitness = "witness";
inline constexpr const char* kSimplex = "simplex";
inline constexpr const char* kSerre = "serre";
inline constexpr const char* kRank1 = "rank1";

inline const std::vector<std::string>& all() {
  static const std::vector<std::string> names = {kField, kCounting, kDomain,  kPartialTrace, kSpectrum,
                                                 kDelsarte, kT1Weights, kTransfer, kGenerator, kGhw,
                                                 kWitness, kSimplex, kSerre, kRank1};
  return names;
}
}  // namespace groups

struct VerifyOptions {
  std::set<std::string> only;  // empty: every group
  unsigned threads = 1;
  bool early_exit = true;
  std::uint64_t work_budget = 50'000'000;    // elementary steps for point-by-point evaluation
  std::uint64_t subspace_budget = 200'000;   // subspaces per exhaustive search
  std::uint64_t scan_budget = 1'000'000;     // matrices per full-space scan

  bool wants(const std::string& group) const { return only.empty() || only.count(group) > 0; }
};

enum class CheckStatus { pass, fail, skipped };

inline std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "SKIP";
  }
  return "?";
}

struct CheckResult {
  std::string group;
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct VerifyReport {
  std::string params;
  std::vector<CheckResult> checks;

  bool all_passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::fail; });
  }
  std::size_t count(CheckStatus s) const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [&](const auto& c) { return c.status == s; }));
  }
  const CheckResult* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

class Checker {
 public:
  explicit Checker(VerifyReport& report) : report_(report) {}

  void run(const std::string& group, const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{group, name, CheckStatus::pass, {}};
    try {
      r.detail = body();
    } catch (const Skip& s) {
      r.status = CheckStatus::skipped;
      r.detail = s.why;
    } catch (const Failure& f) {
      r.status = CheckStatus::fail;
      r.detail = f.why;
    } catch (const Error& e) {
      r.status = e.code() == ErrorCode::BudgetExceeded ? CheckStatus::skipped : CheckStatus::fail;
      r.detail = e.what();
    }
    report_.checks.push_back(std::move(r));
  }

  struct Skip {
    std::string why;
  };
  struct Failure {
    std::string why;
  };

 private:
  VerifyReport& report_;
};

template <class A, class B>
void expect_eq(const A& a, const B& b, const std::string& what) {
  if (!(a == b)) {
    std::ostringstream os;
    os << what << ": " << a << " != " << b;
    throw Checker::Failure{os.str()};
  }
}

inline void expect(bool ok, const std::string& what) {
  if (!ok) throw Checker::Failure{what};
}

inline void skip_unless(bool ok, const std::string& why) {
  if (!ok) throw Checker::Skip{why};
}

inline std::string str(const BigCount& v) { return v.str(); }

}  // namespace detail

/// Runs the requested groups of cross-checks for (q, l, m, t) in both modes.
inline VerifyReport verify(const Field& f, std::size_t l, std::size_t m, std::size_t t, const VerifyOptions& opt = {}) {
  using detail::expect;
  using detail::expect_eq;
  using detail::skip_unless;
  namespace g = groups;

  const CodeParams proj(f, l, m, t, Mode::projective);
  const std::uint64_t q = f.order();
  const auto L = static_cast<std::int64_t>(l), M = static_cast<std::int64_t>(m), T = static_cast<std::int64_t>(t);
  const std::size_t n = l * m;

  VerifyReport report;
  report.params = proj.describe();
  detail::Checker ck(report);

  std::optional<DeterminantalCode> pc, ac;
  auto code = [&](Mode mode) -> const DeterminantalCode& {
    auto& slot = mode == Mode::affine ? ac : pc;
    if (!slot) slot.emplace(proj.with_mode(mode));
    return *slot;
  };
  const BigCount space = big_pow(q, n);
  SearchOptions search;
  search.threads = opt.threads;
  search.early_exit = opt.early_exit;

  if (opt.wants(g::kField))
    ck.run(g::kField, "field axioms", [&] {
      skip_unless(q <= 16, "q > 16");
      for (Elem a = 0; a < q; ++a) {
        expect(f.add(a, f.neg(a)) == 0 && f.mul(a, 1) == a, "identities");
        if (a) expect(f.mul(a, f.inv(a)) == 1, "inverse");
        for (Elem b = 0; b < q; ++b)
          for (Elem c = 0; c < q; ++c) {
            expect(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)), "additive associativity");
            expect(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)), "multiplicative associativity");
            expect(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)), "distributivity");
          }
        expect(f.pow(a, q) == a, "Frobenius");
      }
      return f.name();
    });

  if (opt.wants(g::kCounting)) {
    ck.run(g::kCounting, "rank counts sum to q^(lm)", [&] {
      BigCount sum = 0;
      for (std::int64_t j = 0; j <= L; ++j) sum += mu(L, M, j, q);  // mu itself cross-checks its three forms
      expect_eq(sum, space, "sum of mu_j");
      return "sum = " + detail::str(sum);
    });
    ck.run(g::kCounting, "rank counts by enumeration", [&] {
      skip_unless(space <= opt.scan_budget, "matrix space too large to scan");
      std::vector<std::uint64_t> by_rank(l + 1, 0);
      for_each_bounded_rank(f, l, m, l, Mode::affine, [&](std::span<const Elem>, std::size_t rk) { ++by_rank[rk]; });
      for (std::size_t j = 0; j <= l; ++j)
        expect_eq(BigCount(by_rank[j]), mu(L, M, static_cast<std::int64_t>(j), q), "mu_" + std::to_string(j));
      return std::string("all ranks");
    });
  }

  if (opt.wants(g::kDomain))
    ck.run(g::kDomain, "domain sizes", [&] {
      const Lengths len = lengths(L, M, T, q);
      expect_eq(BigCount(code(Mode::projective).length()), len.n_hat, "projective length");
      expect_eq(BigCount(code(Mode::affine).length()), len.n, "affine length");
      expect_eq(len.n, 1 + len.n_hat * (q - 1), "n = 1 + n_hat (q-1)");
      return "n = " + detail::str(len.n) + ", n_hat = " + detail::str(len.n_hat);
    });

  if (opt.wants(g::kPartialTrace))
    for (Mode mode : {Mode::projective, Mode::affine})
      ck.run(g::kPartialTrace, std::string("weight depends only on rank (") + std::string(to_string(mode)) + ")", [&] {
        const auto& c = code(mode);
        skip_unless(space * c.length() * n <= opt.work_budget, "form-by-point evaluation exceeds work budget");
        const IndexCodec codec(static_cast<std::uint32_t>(q), n);
        std::vector<Elem> e(n);
        for (std::uint64_t idx = 0; idx < codec.total(); ++idx) {
          codec.decode(idx, e);
          const LinearForm form{Matrix(l, m, e)};
          expect_eq(c.evaluate(form).weight(), c.weight_of_form(form), "form " + std::to_string(idx));
        }
        return std::to_string(codec.total()) + " forms";
      });

  if (opt.wants(g::kSpectrum))
    for (Mode mode : {Mode::projective, Mode::affine}) {
      const std::string tag = std::string(" (") + std::string(to_string(mode)) + ")";
      ck.run(g::kSpectrum, "rank weights match closed forms" + tag, [&] {
        const auto table = weight_table(T, L, M, q);
        const auto& c = code(mode);
        for (std::size_t r = 0; r <= l; ++r)
          expect_eq(BigCount(c.rank_weights()[r]), table.in(mode)[r], "w_" + std::to_string(r));
        return std::string("ranks 0..l");
      });
      ck.run(g::kSpectrum, "closed enumerator = brute enumerator" + tag, [&] {
        const auto closed = closed_weight_enumerator(T, L, M, q, mode);
        const auto brute = code(mode).brute_weight_enumerator();
        expect(closed == brute, "closed " + closed.to_string() + " vs brute " + brute.to_string());
        return closed.to_string();
      });
      ck.run(g::kSpectrum, "naive enumerator = brute enumerator" + tag, [&] {
        const auto& c = code(mode);
        const auto naive = c.naive_weight_enumerator(opt.work_budget);
        const auto brute = c.brute_weight_enumerator();
        expect(naive == brute, "naive " + naive.to_string() + " vs brute " + brute.to_string());
        return naive.to_string();
      });
    }

  if (opt.wants(g::kDelsarte)) {
    ck.run(g::kDelsarte, "alternating sum = direct count", [&] {
      skip_unless(space <= opt.scan_budget, "matrix space too large to scan");
      std::vector<std::vector<std::uint64_t>> direct(l + 1, std::vector<std::uint64_t>(l + 1, 0));
      for_each_bounded_rank(f, l, m, l, Mode::affine, [&](std::span<const Elem> e, std::size_t rk) {
        Elem s = 0;
        for (std::size_t r = 1; r <= l; ++r) {
          s = f.add(s, e[(r - 1) * m + (r - 1)]);
          if (s != 0) ++direct[rk][r];
        }
      });
      for (std::size_t tt = 0; tt <= l; ++tt)
        for (std::size_t r = 0; r <= l; ++r)
          expect_eq(delsarte_N(static_cast<std::int64_t>(tt), static_cast<std::int64_t>(r), L, M, q),
                    BigCount(direct[tt][r]), "N_" + std::to_string(tt) + "(" + std::to_string(r) + ")");
      return "all t, r in 0.." + std::to_string(l);
    });
  }

  if (opt.wants(g::kT1Weights))
    ck.run(g::kT1Weights, "(q-1) w_hat_r = N_1(r)", [&] {
      const auto w = t1_weights(L, M, q);
      for (std::int64_t r = 1; r <= L; ++r) expect_eq(BigCount(q - 1) * w[r - 1], delsarte_N(1, r, L, M, q), "r = " + std::to_string(r));
      return std::string("r = 1..l");
    });
  if (opt.wants(g::kT1Weights))
    ck.run(g::kT1Weights, "measured t = 1 weights", [&] {
      skip_unless(t == 1, "t > 1");
      const auto w = t1_weights(L, M, q);
      for (std::size_t r = 1; r <= l; ++r)
        expect_eq(BigCount(code(Mode::projective).rank_weights()[r]), w[r - 1], "w_hat_" + std::to_string(r));
      return std::string("r = 1..l");
    });

  if (opt.wants(g::kTransfer)) {
    ck.run(g::kTransfer, "A_{i(q-1)} = A_hat_i and A_j = 0 otherwise", [&] {
      const auto a = code(Mode::affine).brute_weight_enumerator();
      const auto p = code(Mode::projective).brute_weight_enumerator();
      for (const auto& [w, c] : a.pairs) {
        expect(w % (q - 1) == 0, "affine weight " + detail::str(w) + " not divisible by q-1");
        expect_eq(c, p.count_of(w / (q - 1)), "count at affine weight " + detail::str(w));
      }
      expect_eq(a.pairs.size(), p.pairs.size(), "number of distinct weights");
      return a.to_string() + " vs " + p.to_string();
    });
    ck.run(g::kTransfer, "n = 1 + n_hat (q-1)", [&] {
      expect_eq(BigCount(code(Mode::affine).length()), 1 + BigCount(code(Mode::projective).length()) * (q - 1), "lengths");
      return std::string("measured lengths");
    });
    ck.run(g::kTransfer, "d_r = (q-1) d_hat_r", [&] {
      std::ostringstream os;
      std::size_t done = 0;
      for (std::size_t r = 1; r <= n; ++r) {
        if (gaussian_binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(r), q) > opt.subspace_budget) continue;
        const auto da = code(Mode::affine).brute_ghw(r, search);
        const auto dp = code(Mode::projective).brute_ghw(r, search);
        expect_eq(da, (q - 1) * dp, "r = " + std::to_string(r));
        os << (done++ ? " " : "") << "r" << r << ":" << da << "/" << dp;
      }
      skip_unless(done > 0, "no r within the subspace budget");
      return os.str();
    });
  }

  if (opt.wants(g::kGenerator))
    for (Mode mode : {Mode::projective, Mode::affine})
      ck.run(g::kGenerator, std::string("generator matrix (") + std::string(to_string(mode)) + ")", [&] {
        const auto& c = code(mode);
        const Matrix gm = generator_matrix(c.domain());
        expect_eq(rank(f, gm), n, "rank");
        std::size_t zero_cols = 0;
        for (std::size_t j = 0; j < gm.cols(); ++j) {
          bool z = true;
          for (std::size_t i = 0; i < gm.rows() && z; ++i) z = gm(i, j) == 0;
          zero_cols += z;
        }
        // only the affine code evaluates at the zero matrix
        expect_eq(zero_cols, std::size_t{mode == Mode::affine ? 1u : 0u}, "zero columns");
        const auto parsed = parse_generator_matrix(format_generator_matrix(c.params(), gm));
        expect(parsed.generator == gm, "text round trip");
        return std::to_string(gm.rows()) + " x " + std::to_string(gm.cols());
      });

  if (opt.wants(g::kGhw))
    ck.run(g::kGhw, "brute GHW vs closed forms", [&] {
      const auto& c = code(Mode::projective);
      const BigCount d1 = c.minimum_distance();
      std::ostringstream os;
      std::size_t done = 0;
      std::uint64_t prev = 0;
      std::size_t prev_r = 0;
      for (std::size_t r = 1; r <= n; ++r) {
        if (gaussian_binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(r), q) > opt.subspace_budget) continue;
        const std::uint64_t d = c.brute_ghw(r, search);
        const auto R = static_cast<std::int64_t>(r);
        expect(BigCount(d) >= griesmer_wei(d1, R, q), "below Griesmer-Wei at r = " + std::to_string(r));
        if (t == 1 && l >= 2) {
          const auto closed = ghw_t1(L, M, R, q);
          expect(closed.contains(d), "r = " + std::to_string(r) + ": brute " + std::to_string(d) + " outside [" +
                                         detail::str(closed.lower) + ", " + detail::str(closed.upper) + "]");
        }
        if (done && r == prev_r + 1) expect(d > prev, "hierarchy not increasing at r = " + std::to_string(r));
        prev = d;
        prev_r = r;
        os << (done++ ? " " : "") << "d" << r << "=" << d;
      }
      expect_eq(BigCount(c.brute_ghw(n, search)), BigCount(c.length()), "d_(lm) = length");
      skip_unless(done > 0, "no r within the subspace budget");
      return os.str();
    });

  if (opt.wants(g::kWitness))
    ck.run(g::kWitness, "witness subcode support weights", [&] {
      skip_unless(t == 1 && l >= 2, "witness subcodes are defined for t = 1");
      const auto& c = code(Mode::projective);
      for (std::int64_t r = 1; r < L + M && r <= static_cast<std::int64_t>(n); ++r) {
        const auto s = witness_subcode(L, M, r);
        const BigCount w = c.support_weight(s);
        expect_eq(w, witness_support_weight(L, M, r, q), "closed form at r = " + std::to_string(r));
        expect_eq(w, BigCount(c.support_weight_union(s)), "union of supports at r = " + std::to_string(r));
        const auto closed = ghw_t1(L, M, r, q);
        expect(w >= closed.lower, "witness below lower bound at r = " + std::to_string(r));
        if (r <= M + 1) expect_eq(w, closed.value, "exact value at r = " + std::to_string(r));
      }
      return "r < " + std::to_string(l + m);
    });

  if (opt.wants(g::kSimplex))
    ck.run(g::kSimplex, "t = l gives a simplex code", [&] {
      skip_unless(t == l, "t < l");
      const auto& c = code(Mode::projective);
      expect_eq(BigCount(c.length()), exact_div(space - 1, BigCount(q - 1), "simplex length"), "length");
      const auto s = c.brute_weight_enumerator();
      expect_eq(s.pairs.size(), std::size_t{2}, "number of distinct weights");
      expect_eq(s.pairs[1].first, big_pow(q, n - 1), "nonzero weight");
      return s.to_string();
    });

  if (opt.wants(g::kSerre))
    ck.run(g::kSerre, "hyperplane-section bound", [&] {
      skip_unless(l == m && t + 1 == l, "needs l = m = t + 1");
      const BigCount bound = serre_example_bound(L, q);
      const auto d = code(Mode::projective).minimum_distance();
      expect(bound <= d, "bound " + detail::str(bound) + " exceeds d = " + std::to_string(d));
      return "bound " + detail::str(bound) + " <= d = " + std::to_string(d);
    });

  if (opt.wants(g::kRank1)) {
    ck.run(g::kRank1, "factor round trip", [&] {
      skip_unless(space <= opt.scan_budget, "matrix space too large to scan");
      std::uint64_t seen = 0;
      for_each_bounded_rank(f, l, m, 1, Mode::affine, [&](std::span<const Elem> e, std::size_t rk) {
        if (rk != 1) return;
        const Matrix mat(l, m, std::vector<Elem>(e.begin(), e.end()));
        const auto fac = factor(f, mat);
        expect(outer(f, fac.u, fac.v) == mat, "outer(factor(M)) != M");
        ++seen;
      });
      expect_eq(BigCount(seen), mu(L, M, 1, q), "rank-1 count");
      return std::to_string(seen) + " matrices";
    });
    ck.run(g::kRank1, "rank-1 sum sweep", [&] {
      const BigCount pairs = (big_pow(q, l) - 1) * (big_pow(q, m) - 1);
      skip_unless(pairs * pairs <= opt.scan_budget, "sweep too large");
      const IndexCodec cu(static_cast<std::uint32_t>(q), l), cv(static_cast<std::uint32_t>(q), m);
      std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> factors;
      std::vector<Elem> u(l), v(m);
      for (std::uint64_t iu = 1; iu < cu.total(); ++iu)
        for (std::uint64_t iv = 1; iv < cv.total(); ++iv) {
          cu.decode(iu, u);
          cv.decode(iv, v);
          factors.emplace_back(u, v);
        }
      std::uint64_t valid = 0;
      for (const auto& [u1, v1] : factors)
        for (const auto& [a, b] : factors) {
          const Matrix sum = detail::add(f, outer(f, u1, v1), outer(f, a, b));
          if (rank(f, sum) != 1) continue;
          const auto xy = factor(f, sum);
          ++valid;
          expect(rank1_sum_check(f, u1, a, xy.u, v1, b, xy.v), "counterexample found");
        }
      return std::to_string(valid) + " valid inputs";
    });
    ck.run(g::kRank1, "maximum rank-1 count vs bound", [&] {
      skip_unless(l >= 2, "needs l >= 2");
      std::ostringstream os;
      std::size_t done = 0;
      for (std::size_t r = m + 1; r <= n; ++r) {
        if (gaussian_binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(r), q) > opt.subspace_budget) continue;
        const auto ext = max_rank1_exhaustive(f, l, m, r, search);
        const auto R = static_cast<std::int64_t>(r);
        const auto& b = *ext.bound;
        expect(BigCount(ext.max_count) <= b.max_rank1,
               "r = " + std::to_string(r) + ": max " + std::to_string(ext.max_count) + " > " + detail::str(b.max_rank1));
        expect(big_pow(q, r) - 1 - ext.max_count >= (big_pow(q, r - 1) - q) * (q - 1),
               "too few higher-rank elements at r = " + std::to_string(r));
        expect_eq(BigCount(count_rank1(f, ext.witness, l, m)), BigCount(ext.max_count), "witness count at r = " + std::to_string(R));
        os << (done++ ? " " : "") << "r" << r << ":" << ext.max_count << "<=" << b.max_rank1;
      }
      skip_unless(done > 0, "no r > m within the subspace budget");
      return os.str();
    });
  }

  return report;
}

inline std::string format_verify_report(const VerifyReport& report) {
  std::ostringstream os;
  os << "verify " << report.params << '\n';
  for (const auto& c : report.checks) {
    os << to_string(c.status) << "  [" << c.group << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
  }
  os << report.count(CheckStatus::pass) << " passed, " << report.count(CheckStatus::fail) << " failed, "
     << report.count(CheckStatus::skipped) << " skipped\n";
  return os.str();
}

}  // namespace detcode
