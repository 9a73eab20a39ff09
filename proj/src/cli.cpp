#include "sievelab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sievelab/errors.hpp"
#include "sievelab/serialize.hpp"

namespace sievelab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

/// Accepts plain integers and exact scientific forms such as 1e6.
std::uint64_t parse_count(const std::string& text, const char* what) {
  const std::string s = trim(text);
  try {
    std::size_t used = 0;
    if (s.find_first_of("eE.") == std::string::npos) {
      if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
      const auto v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } else {
      const double d = std::stod(s, &used);
      if (used == s.size() && d >= 0 && d < 1.8e19 && std::floor(d) == d) return static_cast<std::uint64_t>(d);
    }
  } catch (const std::logic_error&) {
  }
  throw PreconditionError(std::string(what) + ": not a non-negative integer: '" + text + "'");
}

double parse_real(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double d = std::stod(trim(text), &used);
    if (used == trim(text).size()) return d;
  } catch (const std::logic_error&) {
  }
  throw PreconditionError(std::string(what) + ": not a number: '" + text + "'");
}

std::vector<std::int64_t> parse_offsets(const std::string& text) {
  std::string s = text;
  for (char& c : s)
    if (c == ',' || c == ';' || c == '{' || c == '}' || c == '[' || c == ']') c = ' ';
  std::istringstream in(s);
  std::vector<std::int64_t> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw PreconditionError("bad tuple offset: '" + tok + "'");
    }
  }
  return out;
}

std::vector<std::int64_t> read_tuple_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open tuple file: " + path);
  return read_tuple(in);
}

void write_tuple_file(const std::string& path, const AdmissibleTuple& t) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write tuple file: " + path);
  write_tuple(out, t);
}

const std::map<std::string, std::set<std::string>>& command_table() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"sieve", {}},
      {"gaps", {}},
      {"tuple", {"verify", "search", "prime-offset"}},
      {"stats", {"pnt", "mertens", "hardy-ramanujan", "erdos-kac", "pigeonhole"}},
      {"gpy", {"sums", "error", "levels"}},
      {"mk", {"poly", "gbound", "chain", "montecarlo"}},
      {"largegap", {"primorial", "cover", "scan"}},
  };
  return table;
}

const std::set<std::string> kGlobalValued = {"--seed", "--segment-size", "--basis-cap", "--format",
                                             "--threads", "--config", "--tolerance"};

std::string usage() {
  std::ostringstream u;
  u << "usage: sievelab [global options] <command> [<subcommand>] [options]\n\ncommands:\n";
  for (const auto& [cmd, subs] : command_table()) {
    u << "  " << cmd;
    if (!subs.empty()) {
      u << " ";
      bool first = true;
      for (const auto& s : subs) u << (first ? "" : "|") << s, first = false;
    }
    u << "\n";
  }
  u << "\nglobal options: --seed --segment-size --basis-cap --format json|csv --threads --config FILE\n"
       "                --tolerance NAME=VALUE (repeatable)\n"
       "config file path may also be given in $"
    << kConfigEnv << "\n";
  return u.str();
}

/// The offending words if argv does not name a known command (and subcommand).
std::optional<std::string> unknown_command(int argc, const char* const* argv) {
  std::vector<std::string> words;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("-", 0) == 0) {
      if (words.empty() && kGlobalValued.count(a)) ++i;
      continue;
    }
    words.push_back(a);
    if (words.size() == 2) break;
  }
  if (words.empty()) return std::string("<none>");
  const auto it = command_table().find(words[0]);
  if (it == command_table().end()) return words[0];
  if (it->second.empty()) return std::nullopt;
  if (words.size() < 2) return words[0] + " <none>";
  if (!it->second.count(words[1])) return words[0] + " " + words[1];
  return std::nullopt;
}

struct Outcome {
  Outcome() = default;
  Outcome(Json r, int code = 0) : result(std::move(r)), exit_code(code) {}

  Json result;
  int exit_code = 0;
  Json stat_rows;  // non-null for stats commands
};

Json option_echo(const CLI::App* app) {
  Json params = Json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt == app->get_help_ptr()) continue;
    std::string name = opt->get_name(false, true);
    while (!name.empty() && name[0] == '-') name.erase(0, 1);
    if (opt->get_expected_max() == 0) {
      params[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto values = opt->results();
      params[name] = values.size() == 1 ? Json(values[0]) : Json(values);
    } else {
      params[name] = opt->get_default_str().empty() ? Json(nullptr) : Json(opt->get_default_str());
    }
  }
  return params;
}

Json config_echo(const RunConfig& c) {
  Json tol = Json::object();
  for (const auto& [k, v] : c.tolerances) tol[k] = v;
  return {{"seed", c.seed},
          {"segment_size", c.segment_size},
          {"basis_cap", c.basis_cap},
          {"output_format", c.output_format},
          {"threads", c.threads},
          {"tolerances", tol}};
}

SieveConfig sieve_config(const RunConfig& c) {
  SieveConfig s;
  s.segment_size = c.segment_size;
  s.threads = c.threads;
  return s;
}

MkOptions mk_options(const RunConfig& c) {
  MkOptions o;
  o.forms.basis_cap = c.basis_cap;
  o.eigen.residual_tolerance = c.tolerance("eigen.residual", o.eigen.residual_tolerance);
  return o;
}

}  // namespace

double RunConfig::tolerance(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const std::string k = trim(key);
  if (k == "seed") {
    seed = parse_count(value, "seed");
  } else if (k == "segment_size") {
    segment_size = parse_count(value, "segment_size");
    if (segment_size == 0) throw PreconditionError("segment_size must be positive");
  } else if (k == "basis_cap") {
    basis_cap = parse_count(value, "basis_cap");
  } else if (k == "output_format") {
    const std::string f = trim(value);
    if (f != "json" && f != "csv") throw PreconditionError("output_format must be json or csv");
    output_format = f;
  } else if (k == "threads") {
    threads = static_cast<unsigned>(parse_count(value, "threads"));
  } else if (k.rfind("tolerance.", 0) == 0 && k.size() > 10) {
    const double t = parse_real(value, "tolerance");
    if (!(t > 0)) throw PreconditionError("tolerance must be positive");
    tolerances[k.substr(10)] = t;
  } else {
    throw PreconditionError("unknown config key: " + k);
  }
}

RunConfig load_config(std::istream& in, RunConfig base) {
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw PreconditionError("config line without '=': " + line);
    base.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  bool wants_help = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--version") {
      out << kVersion << "\n";
      return 0;
    }
    wants_help |= a == "--help" || a == "-h";
  }
  if (!wants_help) {
    if (const auto bad = unknown_command(argc, argv)) {
      err << "sievelab: unknown command: " << *bad << "\n" << usage();
      return 64;
    }
  }

  RunConfig config;
  CLI::App app{"Computational experiments on bounded gaps between primes", "sievelab"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string seed_s, segment_s, cap_s, format_s, threads_s, config_path;
  std::vector<std::string> tolerance_kv;
  app.add_option("--seed", seed_s, "RNG seed");
  app.add_option("--segment-size", segment_s, "Integers per sieve segment");
  app.add_option("--basis-cap", cap_s, "Largest polynomial basis accepted");
  app.add_option("--format", format_s, "json or csv");
  app.add_option("--threads", threads_s, "Worker threads (0 = all cores)");
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--tolerance", tolerance_kv, "NAME=VALUE tolerance override");

  std::function<Outcome()> run;
  CLI::App* chosen = nullptr;
  std::string command_name;

  auto bind = [&](CLI::App* sub, std::string name, std::function<Outcome()> fn) {
    sub->callback([&, sub, name, fn] {
      chosen = sub;
      command_name = name;
      run = fn;
    });
  };

  // sieve
  std::string lo_s = "0", hi_s;
  bool list = false;
  auto* sieve_cmd = app.add_subcommand("sieve", "Count (and optionally list) primes in [lo, hi)");
  sieve_cmd->add_option("--lo", lo_s, "Lower bound")->capture_default_str();
  sieve_cmd->add_option("--hi", hi_s, "Upper bound (exclusive)")->required();
  sieve_cmd->add_flag("--list", list, "Include the primes");
  bind(sieve_cmd, "sieve", [&] {
    const auto lo = parse_count(lo_s, "lo"), hi = parse_count(hi_s, "hi");
    if (hi < lo) throw PreconditionError("sieve: hi < lo");
    Json r = {{"lo", lo}, {"hi", hi}};
    if (list) {
      const PrimeTable t = sieve_range(lo, hi, false, sieve_config(config));
      const auto ps = t.primes();
      r["count"] = ps.size();
      r["primes"] = ps;
    } else if (lo == 0) {
      r["count"] = hi == 0 ? 0 : prime_count(hi - 1, sieve_config(config));
    } else {
      std::uint64_t count = 0;
      for_each_prime(lo, hi, [&](std::uint64_t) { ++count; }, sieve_config(config));
      r["count"] = count;
    }
    return Outcome{r};
  });

  // gaps
  std::string glo_s = "2", ghi_s;
  bool all_gaps = false;
  auto* gaps_cmd = app.add_subcommand("gaps", "Consecutive-prime gaps with both primes in [lo, hi]");
  gaps_cmd->add_option("--lo", glo_s, "Lower bound")->capture_default_str();
  gaps_cmd->add_option("--hi", ghi_s, "Upper bound")->required();
  gaps_cmd->add_flag("--all", all_gaps, "Include every gap");
  bind(gaps_cmd, "gaps", [&] {
    const auto lo = parse_count(glo_s, "lo"), hi = parse_count(ghi_s, "hi");
    const GapScan g = gap_scan(lo, hi, all_gaps, sieve_config(config));
    Json r = {{"lo", lo}, {"hi", hi}, {"gaps", g.gaps}, {"min", to_json(g.min)}, {"max", to_json(g.max)}};
    if (all_gaps) {
      Json a = Json::array();
      for (const auto& x : g.all) a.push_back(to_json(x));
      r["all"] = a;
    }
    return Outcome{r};
  });

  // tuple
  auto* tuple_cmd = app.add_subcommand("tuple", "Admissible k-tuples");
  tuple_cmd->require_subcommand(1);
  std::string tuple_file, tuple_offsets, tuple_out, k_s, window_s;

  auto* tv = tuple_cmd->add_subcommand("verify", "Check admissibility; exit 2 with a refuting prime otherwise");
  tv->add_option("--file", tuple_file, "Tuple file (whitespace/comma separated, # comments)");
  tv->add_option("--offsets", tuple_offsets, "Inline offsets, e.g. 0,2,6");
  bind(tv, "tuple verify", [&] {
    if (tuple_file.empty() == tuple_offsets.empty()) throw PreconditionError("tuple verify: give exactly one of --file, --offsets");
    const auto offsets = tuple_file.empty() ? parse_offsets(tuple_offsets) : read_tuple_file(tuple_file);
    const auto res = check_admissible(offsets);
    if (const auto* t = std::get_if<AdmissibleTuple>(&res)) {
      Json r = to_json(*t);
      r["admissible"] = true;
      return Outcome{r};
    }
    Json r = to_json(std::get<Refutation>(res));
    r["admissible"] = false;
    r["offsets"] = offsets;
    return Outcome{r, 2};
  });

  auto* ts = tuple_cmd->add_subcommand("search", "Greedy sieve search for a narrow admissible k-tuple");
  ts->add_option("--k", k_s, "Tuple length")->required();
  ts->add_option("--window", window_s, "Search window [0, window]")->required();
  ts->add_option("--out", tuple_out, "Write the tuple to this file");
  bind(ts, "tuple search", [&] {
    const auto k = parse_count(k_s, "k");
    const auto w = parse_count(window_s, "window");
    const TupleSearch s = greedy_narrow_tuple(k, static_cast<std::int64_t>(w));
    Json r = {{"found", s.tuple.has_value()}, {"survivors", s.survivors}};
    if (!s.tuple) return Outcome{r, 2};
    r["tuple"] = to_json(*s.tuple);
    if (!tuple_out.empty()) write_tuple_file(tuple_out, *s.tuple);
    return Outcome{r};
  });

  auto* tp = tuple_cmd->add_subcommand("prime-offset", "First k primes greater than k");
  tp->add_option("--k", k_s, "Tuple length")->required();
  tp->add_option("--out", tuple_out, "Write the tuple to this file");
  bind(tp, "tuple prime-offset", [&] {
    const AdmissibleTuple t = prime_offset_tuple(parse_count(k_s, "k"));
    if (!tuple_out.empty()) write_tuple_file(tuple_out, t);
    return Outcome{to_json(t)};
  });

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Empirical prime statistics");
  stats_cmd->require_subcommand(1);
  std::vector<std::string> xs;
  std::string a_s = "1", ea_s = "-1", b_s = "1", X_s, H_s, samples_s;

  auto stat_outcome = [](Json rows, Json detail) {
    Outcome o;
    o.result = {{"rows", rows}, {"detail", detail}};
    o.stat_rows = rows;
    return o;
  };

  auto* sp = stats_cmd->add_subcommand("pnt", "pi(x) log x / x");
  sp->add_option("--x", xs, "One or more x values")->required();
  bind(sp, "stats pnt", [&] {
    Json rows = Json::array();
    for (const auto& s : xs) {
      const auto x = parse_count(s, "x");
      rows.push_back(to_json(make_stat(x, "pi(x)log(x)/x", pnt_ratio(x, sieve_config(config)), 1.0)));
    }
    return stat_outcome(rows, Json::object());
  });

  auto* sm = stats_cmd->add_subcommand("mertens", "Mertens sums and their deviations d1, d2");
  sm->add_option("--n", xs, "One or more n values")->required();
  bind(sm, "stats mertens", [&] {
    Json rows = Json::array(), detail = Json::array();
    for (const auto& s : xs) {
      const auto n = parse_count(s, "n");
      const MertensSums m = mertens_sums(n, sieve_config(config));
      const double ln = std::log(static_cast<double>(n));
      rows.push_back(to_json(make_stat(n, "sum_log_p_over_p", m.sum_log_p_over_p, ln)));
      rows.push_back(to_json(make_stat(n, "sum_inv_p", m.sum_inv_p, std::log(ln))));
      detail.push_back(to_json(m));
    }
    return stat_outcome(rows, detail);
  });

  auto* sh = stats_cmd->add_subcommand("hardy-ramanujan", "Share of n with omega(n) within a sqrt(loglog x) of loglog x");
  sh->add_option("--n", xs, "One or more n values")->required();
  sh->add_option("--a", a_s, "Width multiplier")->capture_default_str();
  bind(sh, "stats hardy-ramanujan", [&] {
    const double a = parse_real(a_s, "a");
    Json rows = Json::array();
    for (const auto& s : xs) {
      const auto n = parse_count(s, "n");
      rows.push_back(to_json(make_stat(n, "hardy_ramanujan_proportion", hardy_ramanujan_proportion(n, a), 1.0)));
    }
    return stat_outcome(rows, {{"a", a}});
  });

  auto* se = stats_cmd->add_subcommand("erdos-kac", "Normalized omega(n) against the standard normal");
  se->add_option("--x", xs, "One or more x values")->required();
  se->add_option("--a", ea_s, "Interval start")->capture_default_str();
  se->add_option("--b", b_s, "Interval end")->capture_default_str();
  bind(se, "stats erdos-kac", [&] {
    const double a = parse_real(ea_s, "a");
    const double b = parse_real(b_s, "b");
    Json rows = Json::array(), detail = Json::array();
    for (const auto& s : xs) {
      const auto x = parse_count(s, "x");
      const ErdosKacResult e = erdos_kac(x, a, b);
      rows.push_back(to_json(make_stat(x, "erdos_kac_interval", e.empirical, e.gaussian)));
      rows.push_back(to_json(make_stat(x, "ks_distance", e.ks_distance, 0.0)));
      Json d = to_json(e);
      d["x"] = x;
      detail.push_back(d);
    }
    return stat_outcome(rows, {{"a", a}, {"b", b}, {"per_x", detail}});
  });

  auto* sg = stats_cmd->add_subcommand("pigeonhole", "Sum of P(n+h prime), h <= H, for n in [X, 2X)");
  sg->add_option("--X", X_s, "Interval start")->required();
  sg->add_option("--H", H_s, "Window length")->required();
  sg->add_option("--samples", samples_s, "Random draws (omit for exact frequencies)");
  bind(sg, "stats pigeonhole", [&] {
    const auto X = parse_count(X_s, "X"), H = parse_count(H_s, "H");
    std::optional<std::uint64_t> samples;
    if (!samples_s.empty()) samples = parse_count(samples_s, "samples");
    const PigeonholeReport p = pigeonhole_experiment(X, H, samples, config.seed, sieve_config(config));
    Json rows = Json::array();
    rows.push_back(to_json(make_stat(X, "prob_sum", p.prob_sum, static_cast<double>(H) / std::log(static_cast<double>(X)))));
    return stat_outcome(rows, to_json(p));
  });

  // gpy
  auto* gpy_cmd = app.add_subcommand("gpy", "GPY sieve weights and error sums");
  gpy_cmd->require_subcommand(1);
  std::string gx_s = "10000", gb_s = "0.25", gl_s = "1", gtuple = "0,2,6", gtuple_file, gi_s = "1", theta_s = "0.4",
              weighting_s = "pi";

  auto gpy_params = [&] {
    GpyParams p;
    p.x = parse_count(gx_s, "x");
    p.b = parse_real(gb_s, "b");
    p.l = static_cast<int>(parse_count(gl_s, "l"));
    const auto offsets = gtuple_file.empty() ? parse_offsets(gtuple) : read_tuple_file(gtuple_file);
    const auto res = check_admissible(offsets);
    if (const auto* r = std::get_if<Refutation>(&res))
      throw PreconditionError("gpy: tuple is not admissible (prime " + std::to_string(r->prime) + ")");
    p.tuple = std::get<AdmissibleTuple>(res);
    p.validate();
    return p;
  };
  auto add_gpy_opts = [&](CLI::App* sub) {
    sub->add_option("--x", gx_s, "Scale x (n ranges over [x, 2x))")->capture_default_str();
    sub->add_option("--b", gb_s, "Sieve level exponent")->capture_default_str();
    sub->add_option("--l", gl_s, "Extra weight exponent")->capture_default_str();
    sub->add_option("--tuple", gtuple, "Inline admissible tuple")->capture_default_str();
    sub->add_option("--tuple-file", gtuple_file, "Tuple file (overrides --tuple)");
  };

  auto* gs = gpy_cmd->add_subcommand("sums", "S1, S2 by direct and rearranged routes");
  add_gpy_opts(gs);
  gs->add_option("--e-index", gi_s, "Tuple index i for E")->capture_default_str();
  bind(gs, "gpy sums", [&] {
    GpyOptions o;
    o.e_index = static_cast<int>(parse_count(gi_s, "e-index"));
    o.tolerance = config.tolerance("gpy.rearranged", o.tolerance);
    return Outcome{to_json(weighted_sums(gpy_params(), o))};
  });

  auto* ge = gpy_cmd->add_subcommand("error", "E = sum |mu(d)| sum_{c in C_i(d)} |R(x; d, c)|");
  add_gpy_opts(ge);
  ge->add_option("--i", gi_s, "Tuple index (1-based)")->capture_default_str();
  bind(ge, "gpy error", [&] {
    const GpyParams p = gpy_params();
    const int i = static_cast<int>(parse_count(gi_s, "i"));
    return Outcome{{{"params", to_json(p)}, {"i", i}, {"E", error_sum_E(p, i)}}};
  });

  auto* gv = gpy_cmd->add_subcommand("levels", "Progression error terms E_q for q <= x^theta");
  gv->add_option("--x", gx_s, "Scale x")->capture_default_str();
  gv->add_option("--theta", theta_s, "Level exponent")->capture_default_str();
  gv->add_option("--weighting", weighting_s, "pi or lambda")->capture_default_str();
  bind(gv, "gpy levels", [&] {
    const auto x = parse_count(gx_s, "x");
    const double theta = parse_real(theta_s, "theta");
    Weighting w;
    if (weighting_s == "pi") w = Weighting::prime_count;
    else if (weighting_s == "lambda") w = Weighting::von_mangoldt;
    else throw PreconditionError("weighting must be pi or lambda");
    const auto terms = level_of_distribution_terms(x, theta, w);
    double sum = 0;
    for (double t : terms) sum += t;
    return Outcome{{{"x", x}, {"theta", theta}, {"weighting", weighting_s}, {"q_max", terms.size()},
                    {"terms", terms}, {"sum", sum}, {"normalized", sum / static_cast<double>(x)}}};
  });

  // mk
  auto* mk_cmd = app.add_subcommand("mk", "Lower bounds for M_k");
  mk_cmd->require_subcommand(1);
  std::string mk_k, deg_s = "3", A_s, T_s, variant_s = "ratio-squared", mtheta_s = "0.5", m_s = "1", msamples_s = "1e6",
              coeffs_s;
  bool no_verify = false;

  auto* mp = mk_cmd->add_subcommand("poly", "Symmetric polynomial basis and generalized eigenvalue");
  mp->add_option("--k", mk_k, "Dimension")->required();
  mp->add_option("--degree", deg_s, "Total degree d in a + 2b <= d")->capture_default_str();
  mp->add_flag("--no-verify", no_verify, "Skip the exact recertification pass");
  bind(mp, "mk poly", [&] {
    const MkOptions o = mk_options(config);
    const MkCertificate c = mk_lower_bound_poly(static_cast<int>(parse_count(mk_k, "k")),
                                                static_cast<int>(parse_count(deg_s, "degree")), o);
    Json r = to_json(c);
    if (!no_verify) {
      if (!verify_certificate(c, o)) throw ConsistencyError("mk poly: certificate failed recertification");
      r["recertified"] = true;
    }
    return Outcome{r};
  });

  auto* mg = mk_cmd->add_subcommand("gbound", "Bound from g(t) = 1/(1 + A t)");
  mg->add_option("--k", mk_k, "Dimension")->required();
  mg->add_option("--A", A_s, "Fix A (with --T); omit both to optimize");
  mg->add_option("--T", T_s, "Fix T (with --A)");
  mg->add_option("--variant", variant_s, "ratio-squared or as-printed")->capture_default_str();
  bind(mg, "mk gbound", [&] {
    const auto k = static_cast<std::int64_t>(parse_count(mk_k, "k"));
    const GVariant v = parse_g_variant(variant_s);
    GBoundResult g;
    if (A_s.empty() != T_s.empty()) throw PreconditionError("mk gbound: give both --A and --T or neither");
    if (A_s.empty()) {
      g = optimize_g_bound(k, v);
    } else {
      g = mk_lower_bound_g({parse_real(A_s, "A"), parse_real(T_s, "T"), k, v});
    }
    Json r = to_json(g);
    const double lk = std::log(static_cast<double>(k));
    r["target"] = k > 1 ? lk - 2 * std::log(lk) - 2 : 0.0;
    r["exceeds_target"] = g.bound > r["target"].get<double>();
    return Outcome{r};
  });

  auto* mc = mk_cmd->add_subcommand("chain", "M_k bound -> DHL(k, m+1) -> conditional gap bound");
  mc->add_option("--k", mk_k, "Dimension")->required();
  mc->add_option("--degree", deg_s, "Polynomial degree")->capture_default_str();
  mc->add_option("--theta", mtheta_s, "Level of distribution")->capture_default_str();
  mc->add_option("--m", m_s, "m in DHL(k, m+1)")->capture_default_str();
  mc->add_option("--tuple-file", tuple_file, "Admissible k-tuple (default: prime-offset tuple)");
  mc->add_option("--offsets", tuple_offsets, "Inline k-tuple");
  bind(mc, "mk chain", [&] {
    const int k = static_cast<int>(parse_count(mk_k, "k"));
    std::vector<std::int64_t> offsets;
    if (!tuple_file.empty()) offsets = read_tuple_file(tuple_file);
    else if (!tuple_offsets.empty()) offsets = parse_offsets(tuple_offsets);
    else offsets = prime_offset_tuple(k).offsets;
    return Outcome{to_json(gap_bound_chain(k, static_cast<int>(parse_count(deg_s, "degree")),
                                           parse_real(mtheta_s, "theta"), static_cast<int>(parse_count(m_s, "m")),
                                           offsets, mk_options(config)))};
  });

  auto* mm = mk_cmd->add_subcommand("montecarlo", "Monte Carlo I(F), J(F) against the exact certificate");
  mm->add_option("--k", mk_k, "Dimension")->required();
  mm->add_option("--degree", deg_s, "Polynomial degree")->capture_default_str();
  mm->add_option("--samples", msamples_s, "Simplex samples")->capture_default_str();
  mm->add_option("--coeffs", coeffs_s, "Basis coefficients (default: the certificate witness)");
  bind(mm, "mk montecarlo", [&] {
    const int k = static_cast<int>(parse_count(mk_k, "k"));
    const int degree = static_cast<int>(parse_count(deg_s, "degree"));
    const MkOptions o = mk_options(config);
    std::vector<double> coeffs;
    Json r = Json::object();
    if (coeffs_s.empty()) {
      const MkCertificate c = mk_lower_bound_poly(k, degree, o);
      for (const auto& w : c.witness) coeffs.push_back(w.get_d());
      r["exact_ratio"] = c.exact_value.get_d();
    } else {
      std::istringstream in(coeffs_s);
      std::string tok;
      while (std::getline(in, tok, ',')) coeffs.push_back(parse_real(tok, "coeffs"));
    }
    const IJEstimate e = ij_monte_carlo(k, coeffs, degree, parse_count(msamples_s, "samples"), config.seed);
    r["coefficients"] = coeffs;
    r["estimate"] = to_json(e);
    if (r.contains("exact_ratio"))
      r["z_score"] = (e.ratio() - r["exact_ratio"].get<double>()) / e.ratio_se();
    return Outcome{r};
  });

  // largegap
  auto* lg_cmd = app.add_subcommand("largegap", "Long runs of composites");
  lg_cmd->require_subcommand(1);
  std::string n_s, len_s, maxlen_s, split_s = "0.5", X2_s;

  auto run_json = [](const CompositeRun& run, std::uint64_t bound) {
    Json r = to_json(run);
    r["verified"] = verify_composite_run(run, bound);
    r["y_digits"] = run.y.get_str().size();
    const double log_y = std::log(run.y.get_d());
    r["length_over_log_y"] = static_cast<double>(run.length) / log_y;
    return r;
  };

  auto* lp = lg_cmd->add_subcommand("primorial", "P(n)+2, ..., P(n)+n");
  lp->add_option("--n", n_s, "n")->required();
  bind(lp, "largegap primorial", [&] {
    const auto n = parse_count(n_s, "n");
    return Outcome{run_json(primorial_run(n), n)};
  });

  auto* lc = lg_cmd->add_subcommand("cover", "Greedy covering system and CRT shift");
  lc->add_option("--n", n_s, "Primes p <= n are used")->required();
  lc->add_option("--len", len_s, "Target run length (omit to search for the longest)");
  lc->add_option("--max-len", maxlen_s, "Search limit (default 4n)");
  lc->add_option("--split", split_s, "Phase boundary as a fraction of n")->capture_default_str();
  bind(lc, "largegap cover", [&] {
    const auto n = parse_count(n_s, "n");
    CoverOptions o;
    o.phase_split = parse_real(split_s, "split");
    std::uint64_t len = 0;
    if (!len_s.empty()) {
      len = parse_count(len_s, "len");
    } else {
      const auto max_len = maxlen_s.empty() ? 4 * n : parse_count(maxlen_s, "max-len");
      len = longest_greedy_cover(n, max_len, o);
    }
    const CoveringSystem s = greedy_cover(n, len, o);
    Json r = {{"covering", to_json(s)}};
    if (s.complete() && len > 0) r["run"] = run_json(composite_run(s), n);
    return Outcome{r};
  });

  auto* ls = lg_cmd->add_subcommand("scan", "G(X): largest gap between primes up to X");
  ls->add_option("--X", X2_s, "X")->required();
  bind(ls, "largegap scan", [&] {
    const auto X = parse_count(X2_s, "X");
    return Outcome{{{"X", X}, {"G", to_json(max_gap_G(X))}}};
  });

  auto fail = [&](int code, const std::string& kind, const std::string& what) {
    err << "sievelab: " << kind << ": " << what << "\n";
    Json e = {{"version", kVersion}, {"command", command_name}, {"error", kind}, {"message", what}};
    out << e.dump(2) << "\n";
    return code;
  };

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "sievelab: " << e.what() << "\n";
      return 2;
    }

    if (const char* env = std::getenv(kConfigEnv); config_path.empty() && env && *env) config_path = env;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw PreconditionError("cannot open config file: " + config_path);
      config = load_config(in, config);
    }
    if (!seed_s.empty()) config.set("seed", seed_s);
    if (!segment_s.empty()) config.set("segment_size", segment_s);
    if (!cap_s.empty()) config.set("basis_cap", cap_s);
    if (!format_s.empty()) config.set("output_format", format_s);
    if (!threads_s.empty()) config.set("threads", threads_s);
    for (const auto& kv : tolerance_kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw PreconditionError("--tolerance expects NAME=VALUE");
      config.set("tolerance." + kv.substr(0, eq), kv.substr(eq + 1));
    }

    if (!run) {
      err << usage();
      return 64;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = run();
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Json report = {{"version", kVersion},
                   {"command", command_name},
                   {"params", option_echo(chosen)},
                   {"config", config_echo(config)},
                   {"seed", config.seed},
                   {"result", outcome.result},
                   {"elapsed_seconds", elapsed}};
    if (config.output_format == "csv") {
      out << (outcome.stat_rows.is_null() ? flatten_csv(report) : stat_rows_csv(outcome.stat_rows));
    } else {
      out << report.dump(2) << "\n";
    }
    if (outcome.exit_code != 0) err << "sievelab: " << command_name << ": exit " << outcome.exit_code << "\n";
    return outcome.exit_code;
  } catch (const PreconditionError& e) {
    return fail(2, "precondition", e.what());
  } catch (const CapacityError& e) {
    return fail(2, "capacity", e.what());
  } catch (const ConsistencyError& e) {
    return fail(3, "consistency", e.what());
  } catch (const StructuralError& e) {
    return fail(3, "structural", e.what());
  } catch (const ConvergenceError& e) {
    return fail(3, "convergence", e.what());
  }
}

}  // namespace sievelab
