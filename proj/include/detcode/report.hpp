#pragma once

// Serializable run results: code parameters, weight spectrum and GHW rows.
// Counts travel as decimal strings so no consumer loses precision.

#include "json.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "detcode/bigcount.hpp"
#include "detcode/detcode.hpp"
#include "detcode/formulas.hpp"

namespace detcode {

inline constexpr const char* kBruteSource = "brute";

struct GhwRow {
  GhwResult closed;
  std::optional<BigCount> brute;
  bool brute_confirmed = false;

  bool operator==(const GhwRow&) const = default;
};

struct Report {
  std::uint32_t q = 0;
  std::size_t l = 0, m = 0, t = 0;
  Mode mode = Mode::projective;
  BigCount length = 0;
  std::size_t dimension = 0;
  std::optional<SpectrumReport> spectrum;
  std::vector<GhwRow> ghw;

  bool operator==(const Report&) const = default;

  static Report for_code(const CodeParams& p) {
    Report r;
    r.q = p.q();
    r.l = p.l;
    r.m = p.m;
    r.t = p.t;
    r.mode = p.mode;
    const Lengths len = lengths(static_cast<std::int64_t>(p.l), static_cast<std::int64_t>(p.m),
                                static_cast<std::int64_t>(p.t), p.q());
    r.length = p.mode == Mode::affine ? len.n : len.n_hat;
    r.dimension = p.dimension();
    return r;
  }
};

/// Closed-form GHW for the code's mode. Only t = 1 has closed values; other t
/// get the Griesmer-Wei lower bound from the closed minimum distance. Affine
/// values are the projective ones times q - 1.
inline GhwResult closed_ghw(const CodeParams& p, std::int64_t r) {
  const auto l = static_cast<std::int64_t>(p.l), m = static_cast<std::int64_t>(p.m), t = static_cast<std::int64_t>(p.t);
  const std::uint64_t q = p.q();
  const std::int64_t k = l * m;
  if (r < 1 || r > k) throw Error(ErrorCode::BadParameters, "need 1 <= r <= lm");
  GhwResult g;
  if (t == 1) {
    g = ghw_t1(l, m, r, q);
  } else {
    const BigCount n_hat = lengths(l, m, t, q).n_hat;
    if (r == k) {
      g = GhwResult::exact(r, n_hat, sources::kFullSupport);
    } else {
      g.r = r;
      g.kind = GhwResult::Kind::bounds;
      g.lower = griesmer_wei(closed_weight_enumerator(t, l, m, q, Mode::projective).minimum_distance(), r, q);
      g.upper = n_hat - (k - r);
      g.source = std::string(sources::kGriesmerWei) + "/" + sources::kMonotonicity;
    }
  }
  if (p.mode == Mode::affine) {
    g.value *= q - 1;
    g.lower *= q - 1;
    g.upper *= q - 1;
  }
  return g;
}

/// One GHW row; the brute search runs when the number of r-dimensional
/// subcodes is within `brute_budget`. A brute value replaces bounds that have
/// no closed form behind them.
inline GhwRow ghw_row(const DeterminantalCode& code, std::int64_t r, std::uint64_t brute_budget,
                      const SearchOptions& options = {}) {
  const CodeParams& p = code.params();
  GhwRow row;
  row.closed = closed_ghw(p, r);
  const auto k = static_cast<std::int64_t>(p.dimension());
  if (gaussian_binomial(k, r, p.q()) <= brute_budget) {
    row.brute = BigCount(code.brute_ghw(static_cast<std::size_t>(r), options));
    row.brute_confirmed = row.closed.contains(*row.brute);
    if (row.brute_confirmed && p.t != 1 && !row.closed.is_exact()) row.closed = GhwResult::exact(r, *row.brute, kBruteSource);
  }
  return row;
}

namespace detail {

inline nlohmann::json weight_to_json(const BigCount& w) {
  if (fits_u64(w)) return static_cast<std::uint64_t>(w);
  return w.str();
}

inline BigCount weight_from_json(const nlohmann::json& j) {
  if (j.is_number_unsigned() || j.is_number_integer()) return BigCount(j.get<std::uint64_t>());
  return parse_decimal(j.get<std::string>());
}

}  // namespace detail

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["q"] = r.q;
  j["l"] = r.l;
  j["m"] = r.m;
  j["t"] = r.t;
  j["mode"] = std::string(to_string(r.mode));
  j["length"] = r.length.str();
  j["dimension"] = r.dimension;
  if (r.spectrum) {
    auto& arr = j["spectrum"] = nlohmann::json::array();
    for (const auto& [w, c] : r.spectrum->pairs) arr.push_back({{"w", detail::weight_to_json(w)}, {"count", c.str()}});
  }
  if (!r.ghw.empty()) {
    auto& arr = j["ghw"] = nlohmann::json::array();
    for (const auto& row : r.ghw) {
      nlohmann::json e;
      e["r"] = row.closed.r;
      e["kind"] = row.closed.is_exact() ? "exact" : "bounds";
      if (row.closed.is_exact()) {
        e["value"] = row.closed.value.str();
      } else {
        e["lower"] = row.closed.lower.str();
        e["upper"] = row.closed.upper.str();
      }
      e["source"] = row.closed.source;
      e["brute_confirmed"] = row.brute_confirmed;
      if (row.brute) e["brute"] = row.brute->str();
      arr.push_back(std::move(e));
    }
  }
  return j;
}

inline Report report_from_json(const nlohmann::json& j) {
  try {
    Report r;
    r.q = j.at("q").get<std::uint32_t>();
    r.l = j.at("l").get<std::size_t>();
    r.m = j.at("m").get<std::size_t>();
    r.t = j.at("t").get<std::size_t>();
    r.mode = parse_mode(j.at("mode").get<std::string>());
    r.length = parse_decimal(j.at("length").get<std::string>());
    r.dimension = j.at("dimension").get<std::size_t>();
    if (j.contains("spectrum")) {
      std::vector<std::pair<BigCount, BigCount>> terms;
      for (const auto& e : j.at("spectrum"))
        terms.emplace_back(detail::weight_from_json(e.at("w")), parse_decimal(e.at("count").get<std::string>()));
      r.spectrum = SpectrumReport::from_terms(r.mode, terms);
    }
    if (j.contains("ghw"))
      for (const auto& e : j.at("ghw")) {
        GhwRow row;
        const std::string kind = e.at("kind").get<std::string>();
        const auto rr = e.at("r").get<std::int64_t>();
        const std::string source = e.at("source").get<std::string>();
        if (kind == "exact") {
          row.closed = GhwResult::exact(rr, parse_decimal(e.at("value").get<std::string>()), source);
        } else if (kind == "bounds") {
          row.closed.r = rr;
          row.closed.kind = GhwResult::Kind::bounds;
          row.closed.lower = parse_decimal(e.at("lower").get<std::string>());
          row.closed.upper = parse_decimal(e.at("upper").get<std::string>());
          row.closed.source = source;
        } else {
          throw Error(ErrorCode::ParseError, "unknown ghw kind " + kind);
        }
        row.brute_confirmed = e.at("brute_confirmed").get<bool>();
        if (e.contains("brute")) row.brute = parse_decimal(e.at("brute").get<std::string>());
        r.ghw.push_back(std::move(row));
      }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline std::string format_table(const Report& r) {
  std::ostringstream os;
  os << "code  q=" << r.q << " l=" << r.l << " m=" << r.m << " t=" << r.t << " " << to_string(r.mode)
     << "  length=" << r.length << " dimension=" << r.dimension << '\n';
  if (r.spectrum) {
    os << "weight  count\n";
    for (const auto& [w, c] : r.spectrum->pairs) os << w << "  " << c << '\n';
  }
  if (!r.ghw.empty()) {
    os << "r  kind    value          source                            brute\n";
    for (const auto& row : r.ghw) {
      std::string value = row.closed.is_exact() ? row.closed.value.str()
                                                : "[" + row.closed.lower.str() + ", " + row.closed.upper.str() + "]";
      std::string brute = row.brute ? row.brute->str() + (row.brute_confirmed ? " ok" : " MISMATCH") : "-";
      os << row.closed.r << "  " << (row.closed.is_exact() ? "exact " : "bounds") << "  " << value;
      for (std::size_t pad = value.size(); pad < 13; ++pad) os << ' ';
      os << "  " << row.closed.source;
      for (std::size_t pad = row.closed.source.size(); pad < 32; ++pad) os << ' ';
      os << "  " << brute << '\n';
    }
  }
  return os.str();
}

}  // namespace detcode
