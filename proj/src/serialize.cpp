#include "cideal/serialize.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace cideal {

using nlohmann::json;

std::string format_function(const HashFunction& h) {
  std::string out;
  for (auto cell : h.cells()) {
    if (!out.empty()) {
      out += ' ';
    }
    out += std::to_string(cell);
  }
  return out;
}

HashFunction parse_function(std::string_view line, std::uint32_t m) {
  std::vector<std::uint32_t> cells;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) {
      ++pos;
    }
    if (pos == line.size()) {
      break;
    }
    std::uint32_t cell = 0;
    const auto [end, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), cell);
    if (ec != std::errc{} ||
        (end != line.data() + line.size() && !std::isspace(static_cast<unsigned char>(*end)))) {
      throw std::invalid_argument("bad cell index in \"" + std::string(line) + "\"");
    }
    cells.push_back(cell);
    pos = static_cast<std::size_t>(end - line.data());
  }
  if (cells.empty()) {
    throw std::invalid_argument("empty function line");
  }
  return HashFunction(std::move(cells), m);
}

std::string format_family(const Family& f) {
  std::string out;
  for (const auto& h : f.functions) {
    out += format_function(h);
    out += '\n';
  }
  return out;
}

Family parse_family(std::string_view text, std::uint32_t m) {
  Family f;
  f.provenance = Provenance::explicit_list;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    auto line = text.substr(start, end - start);
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      f.functions.push_back(parse_function(line, m));
      if (f.functions.back().u() != f.functions.front().u()) {
        throw std::invalid_argument("family lines have different lengths");
      }
    }
    start = end + 1;
  }
  return f;
}

json to_json(const LogReal& x) {
  json j;
  if (x.is_zero()) {
    j["ln"] = nullptr;
    j["value"] = 0.0;
    return j;
  }
  j["ln"] = x.log();
  if (x.overflows()) {
    j["value"] = nullptr;
  } else {
    j["value"] = x.value();
  }
  return j;
}

json to_json(const Params& p) {
  return json{{"u", p.u()},         {"m", p.m()},           {"n", p.n()},
              {"c", to_string(p.c())}, {"alpha", to_string(p.alpha())}, {"cap", p.cap()}};
}

json to_json(const BoundParams& p) {
  return json{{"u", to_string(p.u)},      {"m", p.m},
              {"n", p.n},                 {"c", to_string(p.c)},
              {"alpha", to_string(p.alpha())}, {"eps", to_string(p.eps)},
              {"t", to_string(p.t)}};
}

json to_json(const KeySet& s) {
  return json(std::vector<std::uint32_t>(s.keys().begin(), s.keys().end()));
}

json to_json(const IdealCount& c) {
  return json{{"m_c", to_string(c.m_c)},
              {"total", to_string(c.total)},
              {"fraction", c.fraction_text()},
              {"probability", to_string(c.probability())}};
}

json to_json(const CoverageReport& r) {
  json j{{"covered", to_string(r.covered)},
         {"total", to_string(r.total)},
         {"is_ideal_family", r.is_ideal_family}};
  j["uncovered_witness"] = r.uncovered_witness ? to_json(*r.uncovered_witness) : json(nullptr);
  return j;
}

json to_json(const MinFamilyResult& r) {
  json j{{"pool_size", r.pool_size}, {"reduced_pool", r.reduced_pool}, {"nodes", r.nodes}};
  j["size"] = r.size ? json(*r.size) : json(nullptr);
  if (r.family) {
    json functions = json::array();
    for (const auto& h : r.family->functions) {
      functions.push_back(format_function(h));
    }
    j["family"] = functions;
  } else {
    j["family"] = nullptr;
  }
  return j;
}

json to_json(const BoundEntry& e) {
  json j{{"name", e.name},
         {"kind", e.kind == BoundKind::lower ? "lower" : "upper"},
         {"value", to_json(e.value)},
         {"valid", e.valid},
         {"asymptotic", e.asymptotic},
         {"validity_note", e.validity_note},
         {"epsilon", to_string(e.epsilon)}};
  j["integer"] = e.integer ? json(to_string(*e.integer)) : json(nullptr);
  return j;
}

json to_json(const BoundReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back(to_json(e));
  }
  json j{{"params", to_json(r.params)}, {"ln_sets", r.ln_sets}, {"entries", entries}};
  j["sets"] = r.sets ? json(to_string(*r.sets)) : json(nullptr);
  j["m_c"] = r.m_c ? json(to_string(*r.m_c)) : json(nullptr);
  return j;
}

json to_json(const AdviceReport& r) {
  const auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
  return json{{"lower_easy_nats", opt(r.lower_easy)},
              {"lower_easy_bits", opt(r.lower_easy_bits)},
              {"lower_main", opt(r.lower_main)},
              {"upper_main", opt(r.upper_main)},
              {"upper_yao", opt(r.upper_yao)},
              {"upper_main_rate", r.upper_main_rate},
              {"notes", r.notes}};
}

json to_json(const ConstructionLog& log) {
  json functions = json::array();
  for (const auto& h : log.family.functions) {
    functions.push_back(format_function(h));
  }
  json j{{"method", log.method},
         {"rounds", log.rounds},
         {"pool_size", log.pool_size},
         {"uncovered_per_round", log.uncovered_per_round},
         {"size", log.family.size()},
         {"provenance", std::string(to_string(log.family.provenance))},
         {"family", functions},
         {"verified", log.verified},
         {"advice_bits", log.advice_bits()},
         {"notes", log.notes}};
  j["seed"] = log.seed ? json(*log.seed) : json(nullptr);
  j["witness"] = log.witness ? to_json(*log.witness) : json(nullptr);
  if (log.load_target) {
    json fractions = json::array();
    for (const auto& f : log.exceed_fractions) {
      fractions.push_back(to_string(f));
    }
    j["load_target"] = *log.load_target;
    j["exceed_fractions"] = fractions;
    j["fallbacks"] = log.fallbacks;
    j["residual_bound_held"] = log.residual_bound_held;
  }
  return j;
}

json to_json(const Estimate& e) {
  return json{{"mean", e.mean},       {"ci95_halfwidth", e.ci95_halfwidth},
              {"trials", e.trials},   {"seed", e.seed},
              {"workers", e.workers}, {"interval", e.interval}};
}

json to_json(const LemmaCheck& c) {
  return json{{"lemma", c.lemma}, {"instance", c.instance}, {"relation", c.relation},
              {"lhs", c.lhs},     {"rhs", c.rhs},           {"pass", c.pass}};
}

json envelope(std::string_view command, json payload) {
  json j{{"schema_version", kSchemaVersion}, {"command", std::string(command)}};
  for (auto& [key, value] : payload.items()) {
    j[key] = value;
  }
  return j;
}

}  // namespace cideal
