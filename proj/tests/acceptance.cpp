// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "detcode/counting.hpp"
#include "detcode/detcode.hpp"
#include "detcode/formulas.hpp"
#include "detcode/rank1.hpp"
#include "detcode/report.hpp"
#include "detcode/verify.hpp"

using namespace detcode;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream log;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "    failed: " << what << '\n';
    }
  }
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// (q, l, m) with q in {2,3,4}, l <= m, l*m <= 9.
std::vector<std::tuple<std::uint32_t, std::size_t, std::size_t>> small_family() {
  std::vector<std::tuple<std::uint32_t, std::size_t, std::size_t>> out;
  for (std::uint32_t q : {2u, 3u, 4u})
    for (std::size_t l = 1; l <= 3; ++l)
      for (std::size_t m = l; l * m <= 9; ++m) out.emplace_back(q, l, m);
  return out;
}

std::string describe(std::uint32_t q, std::size_t l, std::size_t m, std::size_t t) {
  return "q=" + std::to_string(q) + " l=" + std::to_string(l) + " m=" + std::to_string(m) + " t=" + std::to_string(t);
}

void require_checks(Outcome& o, const VerifyReport& report, const std::vector<std::string>& names) {
  for (const auto& name : names) {
    const CheckResult* c = report.find(name);
    o.require(c != nullptr, report.params + ": check '" + name + "' did not run");
    if (c) o.require(c->status == CheckStatus::pass, report.params + ": " + name + " -> " + std::string(to_string(c->status)) + " " + c->detail);
  }
}

void criterion_spectrum(Outcome& o) {
  VerifyOptions opt;
  opt.only = {groups::kSpectrum};
  opt.work_budget = 5'000'000;
  std::size_t sets = 0;
  for (auto [q, l, m] : small_family())
    for (std::size_t t = 1; t <= l; ++t) {
      const auto report = verify(field_of_order(q), l, m, t, opt);
      require_checks(o, report, {"closed enumerator = brute enumerator (projective)", "closed enumerator = brute enumerator (affine)"});
      o.require(report.all_passed(), describe(q, l, m, t) + " spectrum group\n" + format_verify_report(report));
      ++sets;
    }
  o.log << "    " << sets << " parameter sets, both modes\n";
}

void criterion_flagship(Outcome& o) {
  const DeterminantalCode c(CodeParams(field_of_order(2), 2, 2, 1));
  const auto brute = c.brute_weight_enumerator();
  const auto closed = closed_weight_enumerator(1, 2, 2, 2, Mode::projective);
  o.require(c.length() == 9, "length " + std::to_string(c.length()));
  o.require(c.dimension() == 4, "dimension " + std::to_string(c.dimension()));
  o.require(brute.to_string() == "{0:1, 4:9, 6:6}", "brute spectrum " + brute.to_string());
  o.require(closed.to_string() == "{0:1, 4:9, 6:6}", "closed spectrum " + closed.to_string());
  o.require(brute.minimum_distance() == 4 && c.minimum_distance() == 4, "minimum distance");
  o.require(c.naive_weight_enumerator() == brute, "naive enumerator");
  o.log << "    " << brute.to_string() << ", d = " << c.minimum_distance() << '\n';
}

void criterion_delsarte(Outcome& o) {
  VerifyOptions direct;
  direct.only = {groups::kDelsarte};
  std::size_t sets = 0;
  for (std::uint32_t q : {2u, 3u})
    for (std::size_t l = 1; l <= 3; ++l)
      for (std::size_t m = l; m <= 3; ++m) {
        require_checks(o, verify(field_of_order(q), l, m, 1, direct), {"alternating sum = direct count"});
        ++sets;
      }
  VerifyOptions weights;
  weights.only = {groups::kT1Weights};
  for (std::uint32_t q : {2u, 3u, 4u})
    for (std::size_t l = 1; l <= 4; ++l)
      for (std::size_t m = l; m <= 4; ++m) {
        // the identity is between two closed forms; t only selects which code is measured
        const auto report = verify(field_of_order(q), l, m, l, weights);
        require_checks(o, report, {"(q-1) w_hat_r = N_1(r)"});
        ++sets;
      }
  o.log << "    " << sets << " parameter sets\n";
}

void criterion_ghw(Outcome& o) {
  SearchOptions full;
  full.early_exit = false;
  full.threads = workers();
  {
    const DeterminantalCode c(CodeParams(field_of_order(2), 2, 2, 1));
    const std::vector<std::uint64_t> expected{4, 6, 8, 9};
    std::ostringstream got;
    for (std::size_t r = 1; r <= 4; ++r) {
      const auto d = c.brute_ghw(r, full);
      got << d << ' ';
      o.require(d == expected[r - 1], "(2,2) r=" + std::to_string(r) + ": " + std::to_string(d));
      o.require(ghw_t1(2, 2, static_cast<std::int64_t>(r), 2).contains(d), "(2,2) closed form at r=" + std::to_string(r));
    }
    o.log << "    (2,2): " << got.str() << '\n';
  }
  {
    const DeterminantalCode c(CodeParams(field_of_order(2), 2, 3, 1));
    std::ostringstream got;
    for (std::size_t r = 1; r <= 6; ++r) {
      const auto d = c.brute_ghw(r, full);
      const auto closed = ghw_t1(2, 3, static_cast<std::int64_t>(r), 2);
      got << d << (closed.is_exact() ? "" : "*") << ' ';
      o.require(closed.contains(d), "(2,3) r=" + std::to_string(r) + ": brute " + std::to_string(d) + " outside closed result");
      if (closed.is_exact()) o.require(closed.value == d, "(2,3) exact value at r=" + std::to_string(r));
    }
    const std::vector<std::uint64_t> pinned{8, 12, 14, 18};
    for (std::size_t r = 1; r <= 4; ++r) o.require(c.brute_ghw(r, full) == pinned[r - 1], "(2,3) pinned r=" + std::to_string(r));
    o.require(c.brute_ghw(6, full) == 21, "(2,3) r=6");
    o.log << "    (2,3): " << got.str() << "(* = inside bounds)\n";
  }
}

void criterion_griesmer_wei(Outcome& o) {
  std::size_t sets = 0;
  for (std::uint64_t q : {2u, 3u})
    for (std::int64_t l = 2; l <= 5; ++l)
      for (std::int64_t m = l; m <= 6; ++m) {
        const BigCount d1 = what_r(l, m, 1, q);
        for (std::int64_t r = 1; r <= m; ++r) {
          const auto g = ghw_t1(l, m, r, q);
          o.require(g.is_exact() && g.value == griesmer_wei(d1, r, q), "r <= m at q=" + std::to_string(q));
        }
        const auto next = ghw_t1(l, m, m + 1, q);
        o.require(next.is_exact() && next.value > griesmer_wei(d1, m + 1, q),
                  "r = m+1 not above the bound at l=" + std::to_string(l) + " m=" + std::to_string(m));
        ++sets;
      }
  // measured minimum distances agree with the closed d1 used above
  for (auto [q, l, m] : {std::tuple{2u, 2u, 2u}, {2u, 2u, 3u}, {3u, 2u, 2u}, {2u, 3u, 3u}}) {
    const DeterminantalCode c(CodeParams(field_of_order(q), l, m, 1));
    o.require(BigCount(c.minimum_distance()) == what_r(static_cast<std::int64_t>(l), static_cast<std::int64_t>(m), 1, q),
              "measured d1");
  }
  o.log << "    " << sets << " (q, l, m) triples\n";
}

void criterion_rank1_extremal(Outcome& o) {
  const Field f2 = field_of_order(2);
  SearchOptions search;
  search.threads = workers();
  const auto ext = max_rank1_exhaustive(f2, 2, 2, 3, search);
  o.require(ext.max_count == 5, "(2,2,3) max " + std::to_string(ext.max_count));
  o.require(ext.bound && ext.bound->max_rank1 == 5, "(2,2,3) bound");
  const auto witness = SubspaceBasis::span_of(
      f2, 4, {Matrix::unit(2, 2, 0, 0).entries(), Matrix::unit(2, 2, 0, 1).entries(), Matrix::unit(2, 2, 1, 0).entries()});
  o.require(ext.witness == witness, "(2,2,3) witness");

  VerifyOptions opt;
  opt.only = {groups::kRank1};
  opt.subspace_budget = 1'000'000;
  opt.threads = workers();
  std::size_t sets = 0;
  for (auto [q, l, m] : small_family()) {
    if (l < 2) continue;
    const auto report = verify(field_of_order(q), l, m, 1, opt);
    const CheckResult* c = report.find("maximum rank-1 count vs bound");
    o.require(c && c->status != CheckStatus::fail, report.params + ": " + (c ? c->detail : "missing"));
    if (c && c->status == CheckStatus::pass) {
      o.log << "    q=" << q << " " << l << "x" << m << ": " << c->detail << '\n';
      ++sets;
    }
  }
  o.require(sets > 0, "no enumerable parameter set");
}

void criterion_transfer(Outcome& o) {
  VerifyOptions opt;
  opt.only = {groups::kTransfer};
  opt.subspace_budget = 3000;
  std::size_t sets = 0, ghw_sets = 0;
  for (auto [q, l, m] : small_family())
    for (std::size_t t = 1; t <= l; ++t) {
      const auto report = verify(field_of_order(q), l, m, t, opt);
      require_checks(o, report, {"A_{i(q-1)} = A_hat_i and A_j = 0 otherwise", "n = 1 + n_hat (q-1)"});
      const CheckResult* d = report.find("d_r = (q-1) d_hat_r");
      o.require(d && d->status != CheckStatus::fail, report.params + ": d_r transfer " + (d ? d->detail : "missing"));
      ghw_sets += d && d->status == CheckStatus::pass;
      ++sets;
    }
  o.log << "    " << sets << " parameter sets, GHW transfer checked on " << ghw_sets << '\n';
}

void criterion_simplex(Outcome& o) {
  VerifyOptions opt;
  opt.only = {groups::kSimplex};
  std::size_t sets = 0;
  for (std::size_t l = 1; l <= 6; ++l)
    for (std::size_t m = l; l * m <= 6; ++m) {
      require_checks(o, verify(field_of_order(2), l, m, l, opt), {"t = l gives a simplex code"});
      const auto len = lengths(static_cast<std::int64_t>(l), static_cast<std::int64_t>(m), static_cast<std::int64_t>(l), 2);
      o.require(len.n_hat == big_pow(2, l * m) - 1, "length formula");
      ++sets;
    }
  o.log << "    " << sets << " parameter sets\n";
}

void criterion_counting(Outcome& o) {
  VerifyOptions opt;
  opt.only = {groups::kCounting};
  for (auto [q, l, m] : small_family())
    require_checks(o, verify(field_of_order(q), l, m, 1, opt), {"rank counts sum to q^(lm)", "rank counts by enumeration"});
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u})
    for (std::int64_t l = 1; l <= 5; ++l)
      for (std::int64_t m = l; m <= 6; ++m) {
        BigCount sum = 0;
        try {
          for (std::int64_t j = 0; j <= l; ++j) sum += mu(l, m, j, q);  // throws if the three forms disagree
        } catch (const Error& e) {
          o.require(false, e.what());
        }
        o.require(sum == big_pow(q, static_cast<std::uint64_t>(l * m)), "sum of rank counts");
      }
  VerifyOptions sweep;
  sweep.only = {groups::kRank1};
  const auto report = verify(field_of_order(2), 2, 2, 1, sweep);
  require_checks(o, report, {"rank-1 sum sweep", "factor round trip"});
  if (const auto* c = report.find("rank-1 sum sweep")) o.log << "    GF(2) 2x2 sweep: " << c->detail << '\n';
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"1 spectrum: closed form = brute force, q in {2,3,4}, lm <= 9", criterion_spectrum},
      {"2 q=2 (1;2,2): length 9, dimension 4, {0:1, 4:9, 6:6}, d = 4", criterion_flagship},
      {"3 alternating rank sum = direct count; (q-1) w_hat_r = N_1(r)", criterion_delsarte},
      {"4 GHW hierarchy for (2,2) and (2,3) at q=2", criterion_ghw},
      {"5 Griesmer-Wei met for r <= m, exceeded at r = m+1", criterion_griesmer_wei},
      {"6 rank-1 extremal counts within the bound", criterion_rank1_extremal},
      {"7 affine/projective transfer identities", criterion_transfer},
      {"8 t = l gives the simplex code", criterion_simplex},
      {"9 counting identities and rank-1 sum sweep", criterion_counting},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.log << "    exception: " << e.what() << '\n';
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << " (" << timing << ")\n" << o.log.str() << std::flush;
    failed += !o.ok;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << '\n';
  return failed ? 1 : 0;
}
