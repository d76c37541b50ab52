#include "gensys/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "gensys/errors.hpp"
#include "json.hpp"

namespace gensys {

using nlohmann::ordered_json;

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "structured" || text == "json") return ReportFormat::kStructured;
  return std::nullopt;
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

constexpr int kReportVersion = 1;

std::string cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string to_csv(const Report& report) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& step : report.steps) {
    out += std::to_string(step.n);
    out += ',' + cell(step.utility);
    out += ',' + cell(step.delta);
    out += ',' + cell(step.tau);
    if (step.bounds.empty()) {
      out += ",,,,";
    } else {
      const auto tight = std::min_element(
          step.bounds.begin(), step.bounds.end(),
          [](const BoundRecord& a, const BoundRecord& b) { return a.slack < b.slack; });
      const bool pass = std::all_of(step.bounds.begin(), step.bounds.end(),
                                    [](const BoundRecord& b) { return b.pass; });
      out += ',' + format_double(tight->lhs);
      out += ',' + format_double(tight->rhs);
      out += ',' + format_double(tight->slack);
      out += pass ? ",true" : ",false";
    }
    out += '\n';
  }
  return out;
}

template <class T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

template <class T>
std::optional<T> optional_from(const ordered_json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

ordered_json to_json(const Report& r) {
  ordered_json j;
  j["report_version"] = kReportVersion;
  j["scenario"] = r.scenario;
  j["kind"] = r.kind;
  j["seed"] = r.seed;
  j["n_max"] = r.n_max;
  j["epsilon"] = r.epsilon;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["metrics"] = ordered_json::object();
  for (const auto& [k, v] : r.metrics) j["metrics"][k] = v;

  j["steps"] = ordered_json::array();
  for (const auto& s : r.steps) {
    ordered_json js;
    js["n"] = s.n;
    js["utility"] = optional_json(s.utility);
    js["delta"] = optional_json(s.delta);
    js["tau"] = optional_json(s.tau);
    js["bounds"] = ordered_json::array();
    for (const auto& b : s.bounds) {
      js["bounds"].push_back(ordered_json{{"name", b.name},
                                          {"context", optional_json(b.context)},
                                          {"lhs", b.lhs},
                                          {"rhs", b.rhs},
                                          {"slack", b.slack},
                                          {"pass", b.pass}});
    }
    js["extras"] = ordered_json::object();
    for (const auto& [k, v] : s.extras) js["extras"][k] = v;
    j["steps"].push_back(std::move(js));
  }

  j["checks"] = ordered_json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back(ordered_json{{"name", c.name},
                                       {"lhs", c.lhs},
                                       {"rhs", c.rhs},
                                       {"slack", c.slack},
                                       {"pass", c.pass},
                                       {"detail", c.detail}});
  }

  j["verdicts"] = ordered_json::array();
  for (const auto& v : r.verdicts) {
    ordered_json jv;
    jv["formula"] = v.formula;
    jv["verdict"] = v.verdict;
    jv["expected"] = optional_json(v.expected);
    jv["proof"] = v.proof;
    if (v.countermodel) {
      const auto& m = *v.countermodel;
      jv["countermodel"] = ordered_json{{"worlds", m.worlds},
                                        {"relation", m.relation},
                                        {"valuation", m.valuation},
                                        {"world", m.world}};
    } else {
      jv["countermodel"] = nullptr;
    }
    j["verdicts"].push_back(std::move(jv));
  }
  return j;
}

}  // namespace

std::string emit_report(const Report& report, ReportFormat format) {
  if (format == ReportFormat::kCsv) return to_csv(report);
  return to_json(report).dump(2) + "\n";
}

void write_report(const Report& report, ReportFormat format,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report to " + path.string());
  const std::string bytes = emit_report(report, format);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing report to " + path.string());
}

Report parse_report(std::string_view structured) {
  try {
    const auto j = ordered_json::parse(structured);
    if (!j.contains("report_version")) {
      throw ParseError("not a structured report (missing report_version)");
    }
    Report r;
    r.scenario = j.at("scenario").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.n_max = j.at("n_max").get<std::size_t>();
    r.epsilon = j.at("epsilon").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.passed = j.at("passed").get<bool>();
    for (const auto& [k, v] : j.at("metrics").items()) r.metrics[k] = v.get<double>();
    for (const auto& js : j.at("steps")) {
      StepRecord s;
      s.n = js.at("n").get<std::size_t>();
      s.utility = optional_from<double>(js, "utility");
      s.delta = optional_from<double>(js, "delta");
      s.tau = optional_from<double>(js, "tau");
      for (const auto& jb : js.at("bounds")) {
        BoundRecord b;
        b.name = jb.at("name").get<std::string>();
        b.context = optional_from<std::size_t>(jb, "context");
        b.lhs = jb.at("lhs").get<double>();
        b.rhs = jb.at("rhs").get<double>();
        b.slack = jb.at("slack").get<double>();
        b.pass = jb.at("pass").get<bool>();
        s.bounds.push_back(std::move(b));
      }
      for (const auto& [k, v] : js.at("extras").items()) s.extras[k] = v.get<double>();
      r.steps.push_back(std::move(s));
    }
    for (const auto& jc : j.at("checks")) {
      r.checks.push_back(CheckRecord{jc.at("name").get<std::string>(),
                                     jc.at("lhs").get<double>(),
                                     jc.at("rhs").get<double>(),
                                     jc.at("slack").get<double>(),
                                     jc.at("pass").get<bool>(),
                                     jc.at("detail").get<std::string>()});
    }
    for (const auto& jv : j.at("verdicts")) {
      VerdictRecord v;
      v.formula = jv.at("formula").get<std::string>();
      v.verdict = jv.at("verdict").get<std::string>();
      v.expected = optional_from<std::string>(jv, "expected");
      v.proof = jv.at("proof").get<std::vector<std::string>>();
      if (!jv.at("countermodel").is_null()) {
        const auto& jm = jv.at("countermodel");
        CountermodelRecord m;
        m.worlds = jm.at("worlds").get<std::size_t>();
        m.relation = jm.at("relation").get<std::vector<std::pair<std::size_t, std::size_t>>>();
        m.valuation = jm.at("valuation").get<std::vector<std::vector<unsigned>>>();
        m.world = jm.at("world").get<std::size_t>();
        v.countermodel = std::move(m);
      }
      r.verdicts.push_back(std::move(v));
    }
    return r;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed structured report: ") + e.what());
  }
}

}  // namespace gensys
