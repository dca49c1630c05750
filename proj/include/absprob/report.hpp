#pragma once

#include <string>
#include <string_view>

#include "absprob/abstraction.hpp"
#include "absprob/derivation.hpp"

namespace absprob {

enum class ReportFormat { Table, Json };

std::string render_report(const AbstractionReport& report, ReportFormat format);

/// Inverse of render_report(report, ReportFormat::Json).
AbstractionReport parse_report(std::string_view json);

std::string render_derivation(const DerivationResult& result, ReportFormat format);

/// Exact decimal when the expansion terminates within 12 digits, otherwise
/// "p/q (~decimal)" with 12 decimal places.
std::string format_probability(const Rational& value);

}  // namespace absprob
