#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "ect/instance.hpp"
#include "ect/primal_dual.hpp"

namespace ect {

/// Parses the instance text format:
///   ect 1 <n> <m>
///   name <text>                  (optional)
///   v <cost|inf> <x|-> <y|->     (n lines, node ids 0..n-1)
///   e <u> <v>                    (m lines, edge ids 0..m-1)
///   rot <v> <edge ids...>        (optional, counterclockwise)
/// Blank lines and lines starting with '#' are skipped. Throws ParseError.
Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::string& path);

/// Canonical text form; parse_instance(serialize_instance(i)) reproduces i.
std::string serialize_instance(const Instance& inst);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// JSON report with rationals as "p/q" strings. Deterministic bytes.
std::string report_to_json(const SolveReport& report, const std::optional<CertificateCheck>& verdict = std::nullopt);

/// Reads the fields needed to re-verify a report (solution, cost, dual,
/// inequalities, order, pairs). Throws ParseError.
SolveReport parse_report(std::string_view json_text);

}  // namespace ect
