#include "absprob/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "absprob/errors.hpp"

namespace absprob {

using json = nlohmann::ordered_json;

namespace {

std::string_view status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Holds: return "holds";
    case VerdictStatus::Fails: return "fails";
    case VerdictStatus::Skipped: return "skipped";
  }
  return "";
}

std::string_view path_name(DecisionPath p) { return p == DecisionPath::Exact ? "exact" : "fast-path"; }

std::string_view kind_name(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::None: return "none";
    case Witness::Kind::LowModel: return "low-model";
    case Witness::Kind::HighModel: return "high-model";
    case Witness::Kind::Literal: return "literal";
  }
  return "";
}

template <typename E, std::size_t N>
E lookup(const std::array<E, N>& values, std::string_view (*name)(E), const std::string& s, const char* what) {
  for (E v : values)
    if (name(v) == s) return v;
  throw Error(std::string("unknown ") + what + " '" + s + "'");
}

json literal_json(const Literal& l) {
  return json{{"predicate", l.atom.predicate}, {"args", l.atom.args}, {"positive", l.positive}};
}

Literal literal_from(const json& j) {
  return Literal{GroundAtom{j.at("predicate").get<std::string>(), j.at("args").get<std::vector<std::string>>()},
                 j.at("positive").get<bool>()};
}

std::string conjunction_text(const std::vector<Literal>& model) {
  if (model.empty()) return "true";
  std::string out;
  for (const auto& l : model) {
    if (!out.empty()) out += " & ";
    out += to_string(l);
  }
  return out;
}

std::string witness_text(const Verdict& v) {
  const Witness& w = v.witness;
  std::string out;
  switch (w.kind) {
    case Witness::Kind::None: break;
    case Witness::Kind::LowModel: out = "low-level model " + conjunction_text(w.model); break;
    case Witness::Kind::HighModel: out = "high-level model " + conjunction_text(w.model); break;
    case Witness::Kind::Literal: out = "literal " + to_string(*w.literal); break;
  }
  if (w.literal && w.kind != Witness::Kind::Literal) out = "literal " + to_string(*w.literal) + " in " + out;
  if (w.high_probability && w.low_probability)
    out += (out.empty() ? "" : ": ") + std::string("Pr high = ") + to_string(*w.high_probability) +
           ", Pr low = " + to_string(*w.low_probability);
  return out;
}

}  // namespace

std::string format_probability(const Rational& value) {
  std::string dec = to_decimal(value, 12);
  if (parse_rational(dec) == value) return dec;
  return to_string(value) + " (~" + dec + ")";
}

std::string render_report(const AbstractionReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    json verdicts = json::array();
    for (AbstractionClass c : kAbstractionClasses) {
      const Verdict& v = report[c];
      json j{{"class", class_name(c)}, {"status", status_name(v.status)}, {"path", path_name(v.path)},
             {"reason", v.reason}};
      if (v.witness.kind != Witness::Kind::None || v.witness.high_probability) {
        json w{{"kind", kind_name(v.witness.kind)}};
        if (!v.witness.model.empty() || v.witness.kind == Witness::Kind::LowModel ||
            v.witness.kind == Witness::Kind::HighModel) {
          json model = json::array();
          for (const auto& l : v.witness.model) model.push_back(literal_json(l));
          w["model"] = model;
        }
        if (v.witness.literal) w["literal"] = literal_json(*v.witness.literal);
        if (v.witness.high_probability) w["high_probability"] = to_string(*v.witness.high_probability);
        if (v.witness.low_probability) w["low_probability"] = to_string(*v.witness.low_probability);
        j["witness"] = w;
      }
      verdicts.push_back(j);
    }
    json doc{{"separable", report.separable}, {"fast_path_used", report.fast_path_used}, {"verdicts", verdicts}};
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  out << std::left << std::setw(18) << "class" << std::setw(9) << "verdict" << std::setw(11) << "path"
      << "detail\n";
  for (AbstractionClass c : kAbstractionClasses) {
    const Verdict& v = report[c];
    std::string detail = v.status == VerdictStatus::Fails ? witness_text(v) : v.reason;
    if (v.status == VerdictStatus::Fails && !v.reason.empty()) detail = v.reason + (detail.empty() ? "" : "; " + detail);
    out << std::setw(18) << class_name(c) << std::setw(9) << status_name(v.status) << std::setw(11)
        << (v.status == VerdictStatus::Skipped ? "-" : path_name(v.path)) << detail << "\n";
  }
  out << "separable: " << (report.separable ? "yes" : "no")
      << "  fast path used: " << (report.fast_path_used ? "yes" : "no") << "\n";
  return out.str();
}

AbstractionReport parse_report(std::string_view text) {
  json doc = json::parse(text);
  AbstractionReport report;
  report.separable = doc.at("separable").get<bool>();
  report.fast_path_used = doc.at("fast_path_used").get<bool>();
  const json& verdicts = doc.at("verdicts");
  if (verdicts.size() != kAbstractionClasses.size()) throw Error("report must list six verdicts");
  for (const json& j : verdicts) {
    auto c = parse_class_name(j.at("class").get<std::string>());
    if (!c) throw Error("unknown abstraction class " + j.at("class").dump());
    Verdict& v = report[*c];
    v.status = lookup<VerdictStatus, 3>({VerdictStatus::Holds, VerdictStatus::Fails, VerdictStatus::Skipped},
                                        status_name, j.at("status").get<std::string>(), "status");
    v.path = lookup<DecisionPath, 2>({DecisionPath::Exact, DecisionPath::FastPath}, path_name,
                                     j.at("path").get<std::string>(), "path");
    v.reason = j.at("reason").get<std::string>();
    if (!j.contains("witness")) continue;
    const json& w = j.at("witness");
    v.witness.kind = lookup<Witness::Kind, 4>(
        {Witness::Kind::None, Witness::Kind::LowModel, Witness::Kind::HighModel, Witness::Kind::Literal}, kind_name,
        w.at("kind").get<std::string>(), "witness kind");
    if (w.contains("model"))
      for (const json& l : w.at("model")) v.witness.model.push_back(literal_from(l));
    if (w.contains("literal")) v.witness.literal = literal_from(w.at("literal"));
    if (w.contains("high_probability")) v.witness.high_probability = parse_rational(w.at("high_probability").get<std::string>());
    if (w.contains("low_probability")) v.witness.low_probability = parse_rational(w.at("low_probability").get<std::string>());
  }
  return report;
}

std::string render_derivation(const DerivationResult& result, ReportFormat format) {
  if (format == ReportFormat::Json) {
    json doc{{"outcome", result.success() ? "success" : "failure"},
             {"candidates_tried", result.candidates_tried},
             {"search_order", result.search_order}};
    if (result.abstraction) {
      const Abstraction& a = *result.abstraction;
      json theory = json::array();
      for (const auto& s : a.high.theory.sentences()) theory.push_back(to_string(s));
      json weights = json::array();
      const Universe& u = a.high.theory.universe();
      auto resolved = a.high.weights.resolve(u);
      for (std::size_t i = 0; i < u.size(); ++i)
        weights.push_back(json{{"atom", to_string(u.atom(i))},
                               {"positive", to_string(resolved[i].first)},
                               {"negative", to_string(resolved[i].second)}});
      json mapping = json::array();
      for (std::size_t i = 0; i < u.size(); ++i)
        mapping.push_back(json{{"atom", to_string(u.atom(i))}, {"target", to_string(a.mapping.target(i))}});
      doc["theory"] = theory;
      doc["weights"] = weights;
      doc["mapping"] = mapping;
    }
    if (result.report) doc["report"] = json::parse(render_report(*result.report, ReportFormat::Json));
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "outcome: " << (result.success() ? "success" : "failure") << "\n"
      << "candidates tried: " << result.candidates_tried << " (" << result.search_order << ")\n";
  if (result.abstraction) {
    const Abstraction& a = *result.abstraction;
    const Universe& u = a.high.theory.universe();
    out << "theory:\n";
    if (a.high.theory.sentences().empty()) out << "  (no sentences)\n";
    for (const auto& s : a.high.theory.sentences()) out << "  " << to_string(s) << "\n";
    out << "mapping and weights:\n";
    auto resolved = a.high.weights.resolve(u);
    for (std::size_t i = 0; i < u.size(); ++i)
      out << "  " << to_string(u.atom(i)) << " -> " << to_string(a.mapping.target(i)) << "  w = "
          << format_probability(resolved[i].first) << " / " << format_probability(resolved[i].second) << "\n";
  }
  if (result.report) out << render_report(*result.report, ReportFormat::Table);
  return out.str();
}

}  // namespace absprob
