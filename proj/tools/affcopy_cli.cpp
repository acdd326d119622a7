// Command-line front end: one subcommand per construction or check, each
// writing a JSON report. Exit 0 when every check in the report holds, 1 when
// one fails, 2 on bad input.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "affcopy/report_json.hpp"
#include "kernel_properties.hpp"

namespace {

using namespace affcopy;
using json::Json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& text, const std::string& flag) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw InputError(flag + ": " + e.what());
  }
}

std::vector<Rational> parse_rational_list(const std::string& text, const std::string& flag) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item, flag));
  if (out.empty()) throw InputError(flag + ": empty list");
  return out;
}

std::vector<BigInt> parse_schedule(const std::string& text) {
  std::vector<BigInt> out;
  for (const auto& r : parse_rational_list(text, "--schedule")) {
    if (!r.is_integer()) throw InputError("--schedule: radix " + r.str() + " is not an integer");
    out.push_back(r.numerator());
  }
  return out;
}

Sequence sequence_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open sequence file " + path);
  try {
    return Sequence::from_values(path, json::rationals_from(Json::parse(in)));
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

/// harmonic, geometric:r, polynomial:s, iterlog:d, or a JSON file of "p/q" strings.
Sequence parse_sequence(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto int_arg = [&]() {
    const Rational r = parse_rational(arg, text);
    if (!r.is_integer()) throw InputError(text + ": expected an integer parameter");
    return static_cast<int>(to_int64(r.numerator()));
  };
  if (name == "harmonic" && arg.empty()) return presets::harmonic();
  if (name == "geometric") return presets::geometric(parse_rational(arg, text));
  if (name == "polynomial") return presets::polynomial(int_arg());
  if (name == "iterlog") return presets::iterlog(int_arg());
  return sequence_from_file(text);
}

GapOracle parse_oracle(const std::string& name) {
  if (name == "middle") return oracles::middle_splitter();
  if (name == "ternary") return oracles::ternary_cantor_avoider();
  throw InputError("unknown oracle '" + name + "' (middle, ternary)");
}

void emit(const Json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  const std::filesystem::path target(out);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write " + tmp.string());
    f << text;
    if (!f.flush()) throw InputError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

struct Options {
  int depth = 8;
  std::int64_t horizon = presets::kUnbounded;
  int N = 1;
  std::int64_t M = 100;
  int kmax = 4;
  std::string delta = "1";
  std::int64_t m0 = 1;
  std::string beta = "harmonic";
  std::string alpha = "geometric:1/2";
  std::string alphas;
  std::string schedule;
  std::string interval;
  std::string oracle = "middle";
  int U = 1;
  int j = 1;
  int k = 1;
  int imax = 40;
  std::int64_t count = 1000;
  std::uint64_t seed = 1;
  std::string out;
};

Json with_pass(Json j, bool pass) {
  j["pass"] = pass;
  return j;
}

MixedRadixSystem schedule_of(const Options& o) {
  if (o.schedule.empty()) return default_schedule(o.depth);
  return MixedRadixSystem(parse_schedule(o.schedule));
}

SlowSequence slow_sequence_of(const Options& o, const CantorConstruction& c) {
  return build_mu({{0, gap_lengths(c)}}, o.horizon);
}

// Each handler returns the report and whether its checks hold.
using Handler = std::function<std::pair<Json, bool>(const Options&)>;

std::pair<Json, bool> cantor_build(const Options& o) {
  return {json::of(build_cantor(parse_oracle(o.oracle), o.depth)), true};
}

std::pair<Json, bool> cantor_verify(const Options& o) {
  const GapOracle oracle = parse_oracle(o.oracle);
  const auto r = verify_cantor(build_cantor(oracle, o.depth), o.kmax, &oracle);
  return {json::of(r), r.pass()};
}

std::pair<Json, bool> cover(const Options& o) {
  const auto r = truncated_union_cover(build_cantor(parse_oracle(o.oracle), o.depth), o.N, o.kmax);
  return {json::of(r), r.pass()};
}

std::pair<Json, bool> seq_build(const Options& o) {
  const auto c = build_cantor(parse_oracle(o.oracle), o.depth);
  const auto s = slow_sequence_of(o, c);
  Json j = json::of(s);
  const std::int64_t shown = std::min<std::int64_t>(o.M, s.horizon());
  std::vector<Rational> prefix;
  bool convex = true;
  for (std::int64_t m = 1; m <= shown; ++m) prefix.push_back(s.alpha_at(m));
  // Gaps are constant inside a block, so comparing across block boundaries suffices.
  for (int n = 1; n < s.levels() && convex; ++n) {
    const std::int64_t m = s.breakpoint(n);
    convex = s.alpha_gap(m).sign() > 0 && s.alpha_gap(m + 1) <= s.alpha_gap(m);
  }
  j["alpha"] = json::of(prefix);
  return {with_pass(std::move(j), convex), convex};
}

std::pair<Json, bool> seq_decompose(const Options& o) {
  if (o.interval.empty()) throw InputError("--interval is required");
  const Interval I = Interval::parse(o.interval);
  const Rational delta = parse_rational(o.delta, "--delta");
  const auto c = build_cantor(parse_oracle(o.oracle), o.depth);
  const Sequence s = o.alpha == "slow" ? slow_sequence_of(o, c).as_sequence() : parse_sequence(o.alpha);
  const auto d = decompose_translates(I, s, delta, o.m0, o.M);
  std::vector<Interval> raw;
  for (std::int64_t m = o.m0; m <= o.M; ++m) raw.push_back(translate(I, -delta * s(m)));
  const bool equal = normalize(std::move(raw)) == set_union(d.U1, IntervalSet(d.U2_truncated));
  Json j = json::of(d);
  j["brute_force_equal"] = equal;
  return {with_pass(std::move(j), equal), equal};
}

std::pair<Json, bool> coverage(const Options& o) {
  const auto c = build_cantor(parse_oracle(o.oracle), o.depth);
  const auto r = coverage01(c, slow_sequence_of(o, c), parse_rational(o.delta, "--delta"), o.m0, o.N, o.M);
  return {json::of(r), r.pass()};
}

std::pair<Json, bool> avoider_build(const Options& o) {
  const auto t = thresholdize(parse_sequence(o.beta));
  const auto a = build_avoider(t, o.depth);
  const auto sum = summability_report(t, o.depth);
  Json j = json::of(a);
  j["avoider"] = json::of(a.avoider);
  j["summability"] = json::of(sum);
  return {with_pass(std::move(j), sum.pass()), sum.pass()};
}

std::pair<Json, bool> avoider_measure(const Options& o) {
  if (o.interval.empty()) throw InputError("--interval is required");
  const auto u = measure_union_translates(Interval::parse(o.interval), thresholdize(parse_sequence(o.beta)), o.M);
  return {with_pass(json::of(u), u.identity_holds()), u.identity_holds()};
}

std::pair<Json, bool> avoider_embed(const Options& o) {
  const auto t = thresholdize(parse_sequence(o.beta));
  const auto a = build_avoider(t, o.depth);
  const Sequence alpha = parse_sequence(o.alpha);
  if (o.M < 1 || o.M > alpha.horizon()) throw InputError("--M outside 1.." + std::to_string(alpha.horizon()));
  const auto values = alpha.values(o.M);
  try {
    return {with_pass(json::of(find_embedding(a, values, t, o.imax)), true), true};
  } catch (const EmbeddingError& e) {
    Json trace = Json::array();
    for (const auto& s : e.trace()) trace.push_back({{"delta", json::of(s.delta)}, {"measure", json::of(s.measure)}});
    return {{{"error", e.what()}, {"trace", std::move(trace)}, {"pass", false}}, false};
  }
}

std::pair<Json, bool> appendix_schedule(const Options& o) {
  const auto s = schedule_of(o);
  bool none_fail = true;
  for (int n = 1; n <= s.depth(); ++n) none_fail = none_fail && s.h_status(n) != HStatus::fails;
  return {with_pass(json::of(s), none_fail), none_fail};
}

std::pair<Json, bool> appendix_intersect(const Options& o) {
  if (o.alphas.empty()) throw InputError("--alphas is required");
  const auto s = schedule_of(o);
  const auto chain = nested_intersect(parse_rational_list(o.alphas, "--alphas"), s, o.U);
  const Interval& r = chain.result();
  bool admits = true;
  for (int i = 0; i <= 16; ++i) admits = admits && chain_admits(chain, r.lo() + r.length() * Rational(i, 16), s);
  return {with_pass(json::of(chain), admits), admits};
}

std::pair<Json, bool> appendix_premeasure(const Options& o) {
  const auto b = premeasure_bound(schedule_of(o), o.j, o.k);
  return {with_pass(json::of(b), b.met()), b.met()};
}

std::pair<Json, bool> prop_suite(const Options& o) {
  using Check = bool (*)(testing::Gen&);
  const std::vector<std::pair<std::string, Check>> checks{
      {"neighborhood_of_interval", testing::neighborhood_of_interval},
      {"neighborhood_of_union", testing::neighborhood_of_union},
      {"neighborhood_of_star", testing::neighborhood_of_star},
      {"neighborhood_monotone_in_set", testing::neighborhood_monotone_in_set},
      {"neighborhood_monotone_in_radius", testing::neighborhood_monotone_in_radius},
      {"translation_algebra", testing::translation_algebra},
  };
  Json results = Json::object();
  bool pass = true;
  std::uint64_t seed = o.seed;
  for (const auto& [name, check] : checks) {
    testing::Gen g(seed++);
    std::int64_t passed = 0;
    for (std::int64_t i = 0; i < o.count; ++i)
      if (check(g)) ++passed;
    results[name] = passed;
    pass = pass && passed == o.count;
  }
  return {{{"seed", o.seed}, {"count", o.count}, {"passed", std::move(results)}, {"pass", pass}}, pass};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact constructions of sets avoiding affine copies of null sequences"};
  app.require_subcommand(1);
  Options o;

  struct Entry {
    const char* name;
    const char* help;
    Handler run;
  };
  const std::vector<Entry> entries{
      {"cantor-build", "Build the Cantor-type construction", cantor_build},
      {"cantor-verify", "Check every structural invariant of the construction", cantor_verify},
      {"cover", "Measure of the stage-N remnants left after finitely many left neighbourhoods", cover},
      {"seq-build", "Build the slowly decreasing sequence from the gap tables", seq_build},
      {"seq-decompose", "Split a union of translates into disjoint and overlapping parts", seq_decompose},
      {"coverage01", "Truncated coverage of [0,1) by translated gaps", coverage},
      {"avoider-build", "Build the avoider set for a threshold sequence", avoider_build},
      {"avoider-measure", "Measure of a union of translates against its closed form", avoider_measure},
      {"avoider-embed", "Find t and delta placing a scaled pattern inside the avoider", avoider_embed},
      {"appendix-schedule", "Certify the radix schedule condition level by level", appendix_schedule},
      {"appendix-intersect", "Nested-interval point of the shifted digit constraints", appendix_intersect},
      {"appendix-premeasure", "Cover count and premeasure bound at one level", appendix_premeasure},
      {"prop-suite", "Randomized kernel identities", prop_suite},
  };

  Handler chosen;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--depth", o.depth, "Construction depth");
    sub->add_option("--horizon", o.horizon, "Sequence horizon");
    sub->add_option("--N", o.N, "Stage N");
    sub->add_option("--M", o.M, "Index bound M");
    sub->add_option("--kmax", o.kmax, "Generations k_max");
    sub->add_option("--delta", o.delta, "Scale delta as p/q");
    sub->add_option("--m0", o.m0, "First index m0");
    sub->add_option("--beta", o.beta, "Sequence preset or JSON file");
    sub->add_option("--alpha", o.alpha, "Pattern preset, JSON file, or 'slow'");
    sub->add_option("--alphas", o.alphas, "Comma-separated offsets alpha_1,alpha_2,...");
    sub->add_option("--schedule", o.schedule, "Comma-separated radices");
    sub->add_option("--interval", o.interval, "Interval such as (0,1/10)");
    sub->add_option("--oracle", o.oracle, "Gap oracle: middle or ternary");
    sub->add_option("--U", o.U, "Nested-interval steps");
    sub->add_option("--j", o.j, "Branch j");
    sub->add_option("--k", o.k, "Index k");
    sub->add_option("--imax", o.imax, "Scale ladder length");
    sub->add_option("--count", o.count, "Instances per identity");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--out", o.out, "Report path (stdout when omitted)");
    sub->callback([&chosen, run = e.run] { chosen = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    parse_rational(o.delta, "--delta");
    auto [report, pass] = chosen(o);
    emit(report, o.out);
    return pass ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
}
