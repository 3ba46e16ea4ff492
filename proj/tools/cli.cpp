#include "cli.hpp"

#include "cideal/bounds.hpp"
#include "cideal/construct.hpp"
#include "cideal/distributions.hpp"
#include "cideal/errors.hpp"
#include "cideal/lemmas.hpp"
#include "cideal/oracle.hpp"
#include "cideal/serialize.hpp"
#include "cideal/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace cideal::cli {

using nlohmann::json;

namespace {

struct RunConfig {
  std::string u;
  std::string m;
  std::string n;
  std::string c = "1";
  std::string eps = "0";
  std::string t = "2";
  std::uint64_t seed = 1;
  std::uint64_t trials = 100'000;
  std::uint64_t budget = Budget{}.max_sets;
  std::uint64_t pool = Budget{}.max_pool;
  unsigned workers = 1;
  std::string format;
  std::string out;

  // exact
  bool hc = false;
  std::size_t size_limit = 8;
  // verify
  std::string family_path;
  // construct
  std::string method = "greedy";
  std::string pool_kind = "balanced";
  std::size_t max_rounds = 1000;
  std::uint64_t load_target = 0;
  std::string family_out;

  [[nodiscard]] Budget limits() const { return Budget{budget, pool}; }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_count(const std::string& flag, const std::string& text) {
  std::uint64_t value = 0;
  std::size_t used = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw UsageError("--" + flag + ": expected a non-negative integer, got \"" + text + "\"");
  }
  return value;
}

Rational parse_exact(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--" + flag + ": expected a decimal or fraction, got \"" + text + "\"");
  }
}

// "123" or "2^256".
BigCount parse_universe(const std::string& text) {
  const auto caret = text.find('^');
  if (caret == std::string::npos) {
    return BigCount(parse_count("u", text));
  }
  const auto base = parse_count("u", text.substr(0, caret));
  const auto exponent = parse_count("u", text.substr(caret + 1));
  return power(BigCount(base), exponent);
}

// "2,3,5" or "2:6" (inclusive), or a mix.
std::vector<std::string> parse_list(const std::string& flag, const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.push_back(item);
      continue;
    }
    const auto lo = parse_count(flag, item.substr(0, colon));
    const auto hi = parse_count(flag, item.substr(colon + 1));
    for (auto v = lo; v <= hi; ++v) {
      out.push_back(std::to_string(v));
    }
  }
  if (out.empty()) {
    throw UsageError("--" + flag + ": empty list");
  }
  return out;
}

Params params_of(const RunConfig& cfg) {
  const BigCount u = parse_universe(cfg.u);
  if (u > std::numeric_limits<std::uint32_t>::max()) {
    throw DomainError("this command needs u < 2^32");
  }
  return Params::make(u.convert_to<std::uint64_t>(), parse_count("m", cfg.m),
                      parse_count("n", cfg.n), parse_exact("c", cfg.c));
}

BoundParams bound_params_of(const RunConfig& cfg) {
  return BoundParams::make(parse_universe(cfg.u), parse_count("m", cfg.m), parse_count("n", cfg.n),
                           parse_exact("c", cfg.c), parse_exact("eps", cfg.eps),
                           parse_exact("t", cfg.t));
}

// ---- output -------------------------------------------------------------

// Ordered JSON keeps row columns in insertion order for CSV headers.
using ordered = nlohmann::ordered_json;

std::string scalar_text(const json& v) {
  if (v.is_null()) {
    return "";
  }
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_array()) {
    std::string joined;
    for (const auto& item : v) {
      joined += (joined.empty() ? "" : " ") + scalar_text(item);
    }
    return joined;
  }
  return v.dump();
}

// Arrays of objects become indexed keys, or are skipped when a row table
// already shows them.
void flatten(const json& v, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out, bool skip_tables = false) {
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out, skip_tables);
    }
  } else if (v.is_array() && !v.empty() && v.front().is_object()) {
    if (skip_tables) {
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      flatten(v[i], prefix + "." + std::to_string(i), out);
    }
  } else {
    out.emplace_back(prefix, scalar_text(v));
  }
}

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) {
    return text;
  }
  std::string quoted = "\"";
  for (char ch : text) {
    quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  }
  return quoted + "\"";
}

std::vector<std::string> row_columns(const ordered& rows) {
  std::vector<std::string> columns;
  for (const auto& row : rows) {
    for (const auto& [key, value] : row.items()) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) {
        columns.push_back(key);
      }
    }
  }
  return columns;
}

void render_rows(const ordered& rows, bool csv, std::ostream& os) {
  // Keep the order of the first row, which callers build deliberately.
  std::vector<std::string> columns;
  if (!rows.empty()) {
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
      columns.push_back(it.key());
    }
    for (const auto& extra : row_columns(rows)) {
      if (std::find(columns.begin(), columns.end(), extra) == columns.end()) {
        columns.push_back(extra);
      }
    }
  }
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (const auto& col : columns) {
      line.push_back(row.contains(col) ? scalar_text(json::parse(row[col].dump())) : "");
    }
    cells.push_back(std::move(line));
  }
  if (csv) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      os << (i ? "," : "") << csv_cell(columns[i]);
    }
    os << '\n';
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        os << (i ? "," : "") << csv_cell(line[i]);
      }
      os << '\n';
    }
    return;
  }
  std::vector<std::size_t> width(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    width[i] = columns[i].size();
    for (const auto& line : cells) {
      width[i] = std::max(width[i], line[i].size());
    }
  }
  const auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << line[i];
    }
    os << '\n';
  };
  emit(columns);
  for (const auto& line : cells) {
    emit(line);
  }
}

void render(const json& payload, const ordered& rows, bool rows_in_json,
            const std::string& format, std::ostream& os) {
  if (format == "json") {
    json doc = payload;
    if (!rows.is_null() && rows_in_json) {
      doc["rows"] = json::parse(rows.dump());
    }
    os << doc.dump(2) << '\n';
    return;
  }
  const bool csv = format == "csv";
  if (!rows.is_null()) {
    if (!csv) {
      std::vector<std::pair<std::string, std::string>> pairs;
      flatten(payload, "", pairs, true);
      for (const auto& [key, value] : pairs) {
        os << key << ": " << value << '\n';
      }
      os << '\n';
    }
    render_rows(rows, csv, os);
    return;
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  flatten(payload, "", pairs);
  if (csv) {
    os << "key,value\n";
    for (const auto& [key, value] : pairs) {
      os << csv_cell(key) << ',' << csv_cell(value) << '\n';
    }
  } else {
    std::size_t width = 0;
    for (const auto& pair : pairs) {
      width = std::max(width, pair.first.size());
    }
    for (const auto& [key, value] : pairs) {
      os << std::left << std::setw(static_cast<int>(width)) << key << "  " << value << '\n';
    }
  }
}

struct Result {
  json payload;
  ordered rows;  // null when the command has no tabular part
  bool rows_in_json = true;
  int exit_code = ok;
};

// ---- commands -----------------------------------------------------------

ordered bound_rows(const BoundReport& report) {
  ordered rows = ordered::array();
  for (const auto& e : report.entries) {
    ordered row;
    row["name"] = e.name;
    row["kind"] = e.kind == BoundKind::lower ? "lower" : "upper";
    row["ln"] = e.value.is_zero() ? ordered(nullptr) : ordered(e.value.log());
    row["value"] = e.value.overflows() ? ordered(nullptr) : ordered(e.value.value());
    row["integer"] = e.integer ? ordered(to_string(*e.integer)) : ordered(nullptr);
    row["valid"] = e.valid;
    row["asymptotic"] = e.asymptotic;
    row["note"] = e.validity_note;
    rows.push_back(row);
  }
  return rows;
}

Result cmd_bounds(const RunConfig& cfg) {
  const auto report = bound_report(bound_params_of(cfg));
  const auto advice = advice_report(report);
  Result r;
  r.payload = envelope("bounds", json{{"bounds", to_json(report)}, {"advice", to_json(advice)}});
  r.rows = bound_rows(report);
  r.rows_in_json = false;
  return r;
}

Result cmd_exact(const RunConfig& cfg) {
  const auto p = params_of(cfg);
  json payload{{"params", to_json(p)}, {"ideal", to_json(exact_ideal_probability(p))}};
  if (cfg.hc) {
    payload["h_c"] = to_json(min_family_size_exact(p, cfg.size_limit, cfg.limits()));
  }
  return Result{envelope("exact", payload), nullptr};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot read " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Result cmd_verify(const RunConfig& cfg) {
  const auto p = params_of(cfg);
  const auto family = parse_family(read_file(cfg.family_path), static_cast<std::uint32_t>(p.m()));
  const auto report = verify_family(family, p, cfg.limits());
  json payload{{"params", to_json(p)},
               {"family_size", family.size()},
               {"coverage", to_json(report)},
               {"cost", family_cost(family, p, cfg.limits())}};
  return Result{envelope("verify", payload), nullptr};
}

Result cmd_construct(const RunConfig& cfg) {
  const auto p = params_of(cfg);
  const auto budget = cfg.limits();
  ConstructionLog log;
  if (cfg.method == "random") {
    log = random_balanced_family(p, cfg.seed, cfg.max_rounds, budget);
  } else {
    const auto kind = cfg.pool_kind == "all" ? PoolKind::all : PoolKind::balanced;
    const auto pool = make_pool(p, kind, budget);
    if (cfg.method == "greedy") {
      log = greedy_cover(p, pool, budget);
    } else {
      const auto target = cfg.load_target != 0 ? cfg.load_target : p.cap();
      log = yao_family(p, parse_exact("t", cfg.t), pool, target, budget);
    }
  }
  if (!cfg.family_out.empty()) {
    std::ofstream file(cfg.family_out);
    if (!file) {
      throw UsageError("cannot write " + cfg.family_out);
    }
    file << "# u=" << p.u() << " m=" << p.m() << " provenance="
         << to_string(log.family.provenance) << '\n'
         << format_family(log.family);
  }
  return Result{envelope("construct", json{{"params", to_json(p)}, {"log", to_json(log)}}),
                nullptr};
}

Result cmd_simulate(const RunConfig& cfg) {
  const auto p = params_of(cfg);
  json payload{{"params", to_json(p)}};
  payload["max_load"] = to_json(estimate_max_load(p.n(), p.m(), cfg.trials, cfg.seed, cfg.workers));
  payload["ideal_probability"] =
      to_json(estimate_ideal_probability(p, cfg.trials, cfg.seed, cfg.workers));
  if (binom(p.u(), p.n()) <= cfg.budget) {
    const auto exact = exact_ideal_probability(p);
    payload["exact_ideal_probability"] = to_string(exact.probability());
  }
  if (p.n() <= 200) {
    payload["exact_expected_max_load"] = to_string(expected_tmax(p.n(), p.m()));
  }
  return Result{envelope("simulate", payload), nullptr};
}

Result cmd_check_lemmas(const RunConfig& cfg) {
  const auto checks = check_all_lemmas(LemmaGrid{}, cfg.limits());
  ordered rows = ordered::array();
  std::size_t failed = 0;
  for (const auto& c : checks) {
    ordered row;
    row["lemma"] = c.lemma;
    row["instance"] = c.instance;
    row["lhs"] = c.lhs;
    row["relation"] = c.relation;
    row["rhs"] = c.rhs;
    row["pass"] = c.pass;
    rows.push_back(row);
    failed += c.pass ? 0 : 1;
  }
  Result r;
  r.payload = envelope("check-lemmas", json{{"checks", checks.size()}, {"failed", failed}});
  r.rows = rows;
  r.exit_code = failed == 0 ? ok : lemma_failure;
  return r;
}

Result cmd_report(const RunConfig& cfg) {
  const auto us = parse_list("u", cfg.u);
  const auto ms = parse_list("m", cfg.m);
  const auto ns = parse_list("n", cfg.n);
  const auto cs = parse_list("c", cfg.c);
  const Rational eps = parse_exact("eps", cfg.eps);
  const Rational t = parse_exact("t", cfg.t);
  ordered rows = ordered::array();
  for (const auto& u_text : us) {
    const BigCount u = parse_universe(u_text);
    for (const auto& m_text : ms) {
      const auto m = parse_count("m", m_text);
      for (const auto& n_text : ns) {
        const auto n = parse_count("n", n_text);
        if (m < 1 || m > n || BigCount(n) > u) {
          continue;
        }
        for (const auto& c_text : cs) {
          const auto report = bound_report(BoundParams::make(u, m, n, parse_exact("c", c_text), eps, t));
          const auto advice = advice_report(report);
          ordered row;
          row["u"] = to_string(u);
          row["m"] = m;
          row["n"] = n;
          row["c"] = to_string(report.params.c);
          row["alpha"] = to_string(report.params.alpha());
          row["p_exact"] = report.m_c && report.sets
                               ? ordered(to_string(Rational(*report.m_c, *report.sets)))
                               : ordered(nullptr);
          for (const auto& e : report.entries) {
            row[e.name] = e.valid && !e.value.is_zero() ? ordered(e.value.log()) : ordered(nullptr);
          }
          const auto opt = [](const std::optional<double>& x) {
            return x ? ordered(*x) : ordered(nullptr);
          };
          row["advice.lower_easy_nats"] = opt(advice.lower_easy);
          row["advice.lower_easy_bits"] = opt(advice.lower_easy_bits);
          row["advice.lower_main"] = opt(advice.lower_main);
          row["advice.upper_main"] = opt(advice.upper_main);
          row["advice.upper_yao"] = opt(advice.upper_yao);
          rows.push_back(row);
        }
      }
    }
  }
  Result r;
  r.payload = envelope("report", json{{"points", rows.size()}, {"values", "natural log of each bound"}});
  r.rows = rows;
  return r;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool with_lists, bool needs_size = true) {
  const std::string list_note = with_lists ? " (list: 2,3 or range 2:6)" : "";
  sub->add_option("--u", cfg.u, "universe size; accepts 2^k" + list_note)
      ->envname("CIDEAL_U")
      ->required(needs_size);
  sub->add_option("--m", cfg.m, "table size" + list_note)->envname("CIDEAL_M")->required(needs_size);
  sub->add_option("--n", cfg.n, "key-set size" + list_note)->envname("CIDEAL_N")->required(needs_size);
  sub->add_option("--c", cfg.c, "ideality factor, decimal or fraction" + list_note)
      ->envname("CIDEAL_C");
  sub->add_option("--eps", cfg.eps, "epsilon for asymptotic bounds")->envname("CIDEAL_EPS");
  sub->add_option("--t", cfg.t, "Markov factor t > 1")->envname("CIDEAL_T");
  sub->add_option("--seed", cfg.seed, "random seed")->envname("CIDEAL_SEED");
  sub->add_option("--trials", cfg.trials, "Monte Carlo trials")->envname("CIDEAL_TRIALS");
  sub->add_option("--budget", cfg.budget, "max key sets to enumerate")->envname("CIDEAL_BUDGET");
  sub->add_option("--pool", cfg.pool, "max candidate functions")->envname("CIDEAL_POOL");
  sub->add_option("--workers", cfg.workers, "Monte Carlo worker threads")
      ->envname("CIDEAL_WORKERS");
  sub->add_option("--format", cfg.format, "json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->envname("CIDEAL_FORMAT");
  sub->add_option("--out", cfg.out, "write the report to this file")->envname("CIDEAL_OUT");
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact and analytic tools for c-ideal hash families", "cideal"};
  app.require_subcommand(1);

  auto* bounds = app.add_subcommand("bounds", "named bounds on H_c and advice bits");
  add_common(bounds, cfg, false);
  auto* exact = app.add_subcommand("exact", "exact M_c and ideality probability");
  add_common(exact, cfg, false);
  exact->add_flag("--hc", cfg.hc, "also search for the exact H_c");
  exact->add_option("--size-limit", cfg.size_limit, "largest family size to try");
  auto* verify = app.add_subcommand("verify", "check a family file against every key set");
  add_common(verify, cfg, false);
  verify->add_option("--family", cfg.family_path, "family file")->required();
  auto* construct = app.add_subcommand("construct", "build and verify a c-ideal family");
  add_common(construct, cfg, false);
  construct->add_option("--method", cfg.method, "random, greedy or yao")
      ->check(CLI::IsMember({"random", "greedy", "yao"}));
  construct->add_option("--pool-kind", cfg.pool_kind, "balanced or all")
      ->check(CLI::IsMember({"balanced", "all"}));
  construct->add_option("--max-rounds", cfg.max_rounds, "round limit for random sampling");
  construct->add_option("--load-target", cfg.load_target, "yao load target (default floor(c alpha))");
  construct->add_option("--family-out", cfg.family_out, "write the family to this file");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo max load and ideality probability");
  add_common(simulate, cfg, false);
  auto* lemmas = app.add_subcommand("check-lemmas", "exact checks of every inequality on the grid");
  add_common(lemmas, cfg, false, false);
  auto* report = app.add_subcommand("report", "bound sweep over a parameter grid");
  add_common(report, cfg, true);

  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what(), usage_error);
    return usage_error;
  }

  try {
    Result result;
    std::string default_format = "json";
    if (bounds->parsed()) {
      result = cmd_bounds(cfg);
    } else if (exact->parsed()) {
      result = cmd_exact(cfg);
    } else if (verify->parsed()) {
      result = cmd_verify(cfg);
    } else if (construct->parsed()) {
      result = cmd_construct(cfg);
    } else if (simulate->parsed()) {
      result = cmd_simulate(cfg);
    } else if (lemmas->parsed()) {
      result = cmd_check_lemmas(cfg);
      default_format = "table";
    } else {
      result = cmd_report(cfg);
      default_format = "csv";
    }
    const std::string format = cfg.format.empty() ? default_format : cfg.format;
    if (cfg.out.empty()) {
      render(result.payload, result.rows, result.rows_in_json, format, out);
    } else {
      std::ofstream file(cfg.out);
      if (!file) {
        throw UsageError("cannot write " + cfg.out);
      }
      render(result.payload, result.rows, result.rows_in_json, format, file);
    }
    if (result.exit_code == lemma_failure) {
      emit_error(err, "lemma-failure", "at least one inequality check failed", lemma_failure);
    }
    return result.exit_code;
  } catch (const UsageError& e) {
    emit_error(err, "usage", e.what(), usage_error);
    return usage_error;
  } catch (const BudgetExceeded& e) {
    emit_error(err, "budget", e.what(), domain_error);
    return domain_error;
  } catch (const DimensionMismatch& e) {
    emit_error(err, "dimension", e.what(), domain_error);
    return domain_error;
  } catch (const DomainError& e) {
    emit_error(err, "domain", e.what(), domain_error);
    return domain_error;
  } catch (const std::invalid_argument& e) {
    emit_error(err, "input", e.what(), domain_error);
    return domain_error;
  }
}

}  // namespace cideal::cli
