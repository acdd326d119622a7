#pragma once

// JSON views of the constructions and reports. Rationals are "p/q" strings,
// intervals use their bracket notation, interval sets are arrays of those.
// Keys keep insertion order so output bytes are reproducible.

#include <json.hpp>

#include "affcopy/avoider.hpp"
#include "affcopy/cantor.hpp"
#include "affcopy/mixed_radix.hpp"
#include "affcopy/slow_sequence.hpp"

namespace affcopy::json {

using Json = nlohmann::ordered_json;

inline Json of(const Rational& x) { return x.str(); }
inline Json of(const BigInt& x) { return x.get_str(); }
inline Json of(const Interval& I) { return I.str(); }
inline Json of(const IntervalSet& s) { return s.strs(); }

inline Json of(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(of(x));
  return a;
}

inline Json of(const std::vector<Interval>& v) {
  Json a = Json::array();
  for (const auto& I : v) a.push_back(of(I));
  return a;
}

inline Json of(const CantorConstruction& c) {
  Json levels = Json::array();
  for (const auto& lev : c.levels)
    levels.push_back({{"n", lev.n}, {"l", of(lev.l)}, {"gaps", of(lev.gaps)}, {"remnants", of(lev.remnants)}});
  return {{"depth", c.depth}, {"oracle", c.oracle}, {"levels", std::move(levels)}};
}

inline Json of(const InvariantReport& r) {
  Json checks = Json::object();
  for (const auto& [name, n] : r.checks) checks[name] = n;
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back({{"check", v.check}, {"n", v.n}, {"j", v.j}, {"detail", v.detail}});
  return {{"checks", std::move(checks)}, {"violations", std::move(violations)}, {"pass", r.pass()}};
}

inline Json of(const CoverReport& r) {
  return {{"N", r.N},
          {"kmax", r.k_max},
          {"uncovered", of(r.uncovered)},
          {"uncovered_measure", of(r.uncovered_measure)},
          {"bound", of(r.bound)},
          {"within_tails", r.within_tails},
          {"pass", r.pass()}};
}

inline Json of(const SlowSequence& s) {
  std::vector<Rational> mu;
  for (int n = 1; n <= s.levels(); ++n) mu.push_back(s.mu(n));
  return {{"levels", s.levels()}, {"mu", of(mu)}, {"breakpoints", s.breakpoints()}, {"horizon", s.horizon()}};
}

inline Json of(const TranslateDecomposition& d) {
  return {{"M", d.M}, {"U1", of(d.U1)}, {"U2_truncated", of(d.U2_truncated)}, {"U2_limit", of(d.U2_limit)}};
}

inline Json of(const DddReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n}, {"M", row.M}, {"alpha_M", of(row.alpha_M)}, {"N_n", row.N_n}, {"ok", row.ok}});
  return {{"n0", r.n0}, {"n1", r.n1}, {"rows", std::move(rows)}, {"pass", r.pass()}};
}

inline Json of(const DeficitReport& r) {
  return {{"N", r.N},
          {"M", r.M},
          {"delta", of(r.delta)},
          {"uncovered_measure", of(r.uncovered_measure)},
          {"residual_measure", of(r.residual_measure)},
          {"bound", of(r.bound)},
          {"pass", r.pass()}};
}

inline Json of(const AvoiderConstruction& a) {
  Json holes = Json::array();
  for (const auto& h : a.holes)
    holes.push_back({{"n", h.budget.n},
                     {"V", of(h.V)},
                     {"J", of(h.J)},
                     {"lambda", of(h.budget.lambda)},
                     {"K", h.budget.K},
                     {"T", h.budget.T}});
  return {{"depth", a.depth}, {"holes", std::move(holes)}};
}

inline Json of(const UnionMeasure& u) {
  return {{"T", u.T},
          {"kernel", of(u.kernel)},
          {"closed_form", of(u.closed_form)},
          {"limit", of(u.limit)},
          {"identity_holds", u.identity_holds()}};
}

inline Json of(const SummabilityReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.budget.n},
                    {"K", row.budget.K},
                    {"T", row.budget.T},
                    {"lambda", of(row.budget.lambda)},
                    {"eta_half_T", of(row.eta_half_T)},
                    {"eta_half_K", of(row.eta_half_K)},
                    {"T_lambda", of(row.T_lambda)},
                    {"telescope", of(row.telescope)},
                    {"ok", row.ok}});
  return {{"rows", std::move(rows)},
          {"sum_eta_half_T", of(r.sum_eta_half_T)},
          {"sum_inv_square", of(r.sum_inv_square)},
          {"sum_measure", of(r.sum_measure)},
          {"pass", r.pass()}};
}

inline Json of(const EmbeddingCertificate& c) {
  return {{"delta", of(c.delta)},
          {"t", of(c.t)},
          {"checked_points", c.checked_points},
          {"residual_measure", of(c.residual_measure)},
          {"ladder_index", c.ladder_index}};
}

inline Json of(const MixedRadixSystem& s) {
  Json radices = Json::array(), verified = Json::array(), status = Json::array();
  for (int n = 1; n <= s.depth(); ++n) {
    radices.push_back(of(s.M(n)));
    verified.push_back(s.h_status(n) == HStatus::verified);
    status.push_back(to_string(s.h_status(n)));
  }
  return {{"radices", std::move(radices)}, {"h_verified", std::move(verified)}, {"h_status", std::move(status)}};
}

inline Json of(const NestedChain& c) {
  Json alphas = Json::array(), branch = Json::array();
  for (const auto& s : c.steps) {
    alphas.push_back(of(s.alpha));
    branch.push_back(s.j);
  }
  return {{"U", static_cast<int>(c.steps.size())},
          {"interval", of(c.result())},
          {"alphas", std::move(alphas)},
          {"branch", std::move(branch)}};
}

inline Json of(const PremeasureBound& b) {
  return {{"level", b.level},
          {"cover_count", of(b.cover_count)},
          {"length", of(b.length)},
          {"middle", of(b.middle)},
          {"closed_form", of(b.closed_form)},
          {"target", of(b.target)},
          {"certified", b.certified},
          {"met", b.met()}};
}

/// Rationals from a JSON array of "p/q" strings (bare integers accepted).
inline std::vector<Rational> rationals_from(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of rationals");
  std::vector<Rational> out;
  for (const auto& e : j) {
    if (e.is_string()) out.push_back(Rational::parse(e.get<std::string>()));
    else if (e.is_number_integer()) out.emplace_back(e.get<std::int64_t>());
    else throw std::invalid_argument("rational entries must be \"p/q\" strings");
  }
  return out;
}

}  // namespace affcopy::json
