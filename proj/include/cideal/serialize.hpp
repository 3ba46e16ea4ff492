#pragma once

// Text formats for functions and families, and JSON for every report.
//
// A function is one line of whitespace-separated cells for keys 1..u. A family
// file holds one function per line; blank lines and lines starting with '#'
// are skipped. In JSON, exact rationals and big integers are strings
// ("36/70" style for unreduced counts, "18/35" for reduced probabilities);
// log-space reals carry "ln" and, when finite, "value".

#include "cideal/bounds.hpp"
#include "cideal/construct.hpp"
#include "cideal/lemmas.hpp"
#include "cideal/oracle.hpp"
#include "cideal/simulate.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace cideal {

inline constexpr int kSchemaVersion = 1;

std::string format_function(const HashFunction& h);
HashFunction parse_function(std::string_view line, std::uint32_t m);

std::string format_family(const Family& f);
/// Throws std::invalid_argument on malformed lines or ragged lengths.
Family parse_family(std::string_view text, std::uint32_t m);

nlohmann::json to_json(const LogReal& x);
nlohmann::json to_json(const Params& p);
nlohmann::json to_json(const BoundParams& p);
nlohmann::json to_json(const KeySet& s);
nlohmann::json to_json(const IdealCount& c);
nlohmann::json to_json(const CoverageReport& r);
nlohmann::json to_json(const MinFamilyResult& r);
nlohmann::json to_json(const BoundEntry& e);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const AdviceReport& r);
nlohmann::json to_json(const ConstructionLog& log);
nlohmann::json to_json(const Estimate& e);
nlohmann::json to_json(const LemmaCheck& c);

/// Wraps a payload as {"schema_version": ..., "command": ..., <payload keys>}.
nlohmann::json envelope(std::string_view command, nlohmann::json payload);

}  // namespace cideal
