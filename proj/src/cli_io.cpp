#include "ddrf/cli_io.hpp"

#include <json.hpp>

#include <sstream>

namespace ddrf {

namespace {

using nlohmann::json;

constexpr int kApproxDigits = 20;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool skippable(std::string_view line) {
  const std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

Index parse_count(std::string_view token, Index line_no,
                  const std::string& key) {
  auto value = Rational::parse(token);
  if (!value || value->denominator() != Rational(1) || value->sign() <= 0 ||
      *value > Rational(1000000000)) {
    throw ParseError(line_no, 0,
                     key + " must be a positive integer, got '" +
                         std::string(token) + "'");
  }
  return static_cast<Index>(std::strtol(std::string(token).c_str(), nullptr, 10));
}

Rational json_rational(const json& j, const std::string& where) {
  if (!j.is_string()) {
    throw ParseError(0, 0, where + ": expected a rational string");
  }
  auto value = Rational::parse(j.get<std::string>());
  if (!value) {
    throw ParseError(0, 0, where + ": bad rational '" +
                               j.get<std::string>() + "'");
  }
  return *value;
}

json ratio_to_json(const RatioReport& ratio, const std::string& objective) {
  json out;
  out["objective"] = objective;
  json rows = json::array();
  for (const RatioReport::Step& step : ratio.per_step) {
    json row;
    row["k"] = step.k;
    if (ratio.has_maxsum) {
      row["online_sum"] = step.online_sum.str();
      row["offline_maxsum"] = step.offline_maxsum.str();
      row["ratio1"] = step.ratio1.str();
      row["ratio1_approx"] = step.ratio1.decimal(kApproxDigits);
    }
    if (ratio.has_maxmin) {
      row["online_min"] = step.online_min.str();
      row["offline_maxmin"] = step.offline_maxmin.str();
      row["ratio2"] = step.ratio2.str();
      row["ratio2_approx"] = step.ratio2.decimal(kApproxDigits);
    }
    rows.push_back(std::move(row));
  }
  out["per_step"] = std::move(rows);
  if (ratio.has_maxsum) {
    out["cr1"] = ratio.cr1.str();
    out["cr1_approx"] = ratio.cr1.decimal(kApproxDigits);
  }
  if (ratio.has_maxmin) {
    out["cr2"] = ratio.cr2.str();
    out["cr2_approx"] = ratio.cr2.decimal(kApproxDigits);
  }
  return out;
}

RatioReport ratio_from_json(const json& j) {
  RatioReport ratio;
  ratio.has_maxsum = j.contains("cr1");
  ratio.has_maxmin = j.contains("cr2");
  for (const json& row : j.at("per_step")) {
    RatioReport::Step step;
    step.k = row.at("k").get<Index>();
    if (ratio.has_maxsum) {
      step.online_sum = json_rational(row.at("online_sum"), "online_sum");
      step.offline_maxsum =
          json_rational(row.at("offline_maxsum"), "offline_maxsum");
      step.ratio1 = json_rational(row.at("ratio1"), "ratio1");
    }
    if (ratio.has_maxmin) {
      step.online_min = json_rational(row.at("online_min"), "online_min");
      step.offline_maxmin =
          json_rational(row.at("offline_maxmin"), "offline_maxmin");
      step.ratio2 = json_rational(row.at("ratio2"), "ratio2");
    }
    ratio.per_step.push_back(std::move(step));
  }
  if (ratio.has_maxsum) ratio.cr1 = json_rational(j.at("cr1"), "cr1");
  if (ratio.has_maxmin) ratio.cr2 = json_rational(j.at("cr2"), "cr2");
  return ratio;
}

}  // namespace

ParseError::ParseError(Index line_in, Index column_in,
                       const std::string& message)
    : Error("parse error" +
            (line_in > 0
                 ? " at line " + std::to_string(line_in) +
                       (column_in > 0 ? ", column " + std::to_string(column_in)
                                      : "")
                 : std::string()) +
            ": " + message),
      line(line_in),
      column(column_in) {}

ParsedInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Index line_no = 0;

  bool have_n = false;
  bool have_m = false;
  Index n = 0;
  Index m = 0;
  std::optional<std::string> note;
  RawDemandMatrix raw;
  std::vector<Index> unnormalized;
  Index rows_seen = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const std::string_view t = trim(line);

    if (t.find('=') != std::string_view::npos && rows_seen == 0) {
      const auto eq = t.find('=');
      const std::string key{trim(t.substr(0, eq))};
      const std::string_view value = trim(t.substr(eq + 1));
      if (key == "n") {
        if (have_n) throw ParseError(line_no, 0, "duplicate n");
        n = parse_count(value, line_no, "n");
        have_n = true;
      } else if (key == "m") {
        if (have_m) throw ParseError(line_no, 0, "duplicate m");
        m = parse_count(value, line_no, "m");
        have_m = true;
      } else if (key == "note") {
        if (note) throw ParseError(line_no, 0, "duplicate note");
        note = std::string(value);
      } else {
        throw ParseError(line_no, 0, "unknown header key '" + key + "'");
      }
      continue;
    }

    if (!have_n || !have_m) {
      throw ParseError(line_no, 0,
                       "demand row before the n and m header entries");
    }
    if (rows_seen == n) {
      throw ParseError(line_no, 0, "unexpected content after the last row");
    }

    std::vector<Rational> row;
    row.reserve(m);
    Rational row_max;
    std::size_t pos = 0;
    const std::string whole(line);
    while (pos < whole.size()) {
      while (pos < whole.size() &&
             (whole[pos] == ' ' || whole[pos] == '\t' || whole[pos] == '\r')) {
        ++pos;
      }
      if (pos >= whole.size()) break;
      const std::size_t start = pos;
      while (pos < whole.size() && whole[pos] != ' ' && whole[pos] != '\t' &&
             whole[pos] != '\r') {
        ++pos;
      }
      const std::string token = whole.substr(start, pos - start);
      auto value = Rational::parse(token);
      if (!value) {
        throw ParseError(line_no, static_cast<Index>(start) + 1,
                         "bad rational '" + token + "'");
      }
      if (static_cast<Index>(row.size()) == m) {
        throw ParseError(line_no, static_cast<Index>(start) + 1,
                         "more than m = " + std::to_string(m) + " entries");
      }
      if (row.empty() || *value > row_max) row_max = *value;
      row.push_back(std::move(*value));
    }
    if (static_cast<Index>(row.size()) != m) {
      throw ParseError(line_no, static_cast<Index>(whole.size()) + 1,
                       "expected m = " + std::to_string(m) + " entries, got " +
                           std::to_string(row.size()));
    }
    if (row_max != Rational(1)) unnormalized.push_back(rows_seen);
    raw.rows.push_back(std::move(row));
    ++rows_seen;
  }

  if (!have_n || !have_m) {
    throw ParseError(line_no, 0, "missing n or m header entry");
  }
  if (rows_seen != n) {
    throw ParseError(line_no, 0,
                     "expected n = " + std::to_string(n) + " demand rows, got " +
                         std::to_string(rows_seen));
  }

  ParsedInstance out{Instance(n, normalize(raw)), std::move(note),
                     std::move(unnormalized)};
  return out;
}

std::string write_instance(const Instance& instance,
                           const std::optional<std::string>& note) {
  std::ostringstream os;
  os << "n = " << instance.agent_count() << "\n";
  os << "m = " << instance.resource_count() << "\n";
  if (note) os << "note = " << *note << "\n";
  for (Index i = 0; i < instance.arrived_count(); ++i) {
    for (Index r = 0; r < instance.resource_count(); ++r) {
      if (r > 0) os << ' ';
      os << instance.demand(i, r);
    }
    os << "\n";
  }
  return os.str();
}

RunReport make_run_report(const Instance& instance,
                          const std::vector<StepSolution>& steps,
                          const std::string& algo) {
  RunReport report;
  report.n = instance.agent_count();
  report.m = instance.resource_count();
  report.algo = algo;
  report.steps.reserve(steps.size());
  for (const StepSolution& sol : steps) {
    RunReport::StepRecord record;
    record.k = sol.shares.step;
    record.tau = sol.split + 1;
    record.water_level = sol.water_level;
    record.shares.assign(sol.shares.shares.begin(), sol.shares.shares.end());
    for (Index r : saturated_resources(instance, sol.shares)) {
      record.saturated_resources.push_back(r + 1);
    }
    report.steps.push_back(std::move(record));
  }
  return report;
}

std::string write_run_report(const RunReport& report) {
  json out;
  out["n"] = report.n;
  out["m"] = report.m;
  out["algo"] = report.algo;
  json steps = json::array();
  for (const RunReport::StepRecord& record : report.steps) {
    json step;
    step["k"] = record.k;
    step["tau"] = record.tau;
    step["water_level"] = record.water_level.str();
    json shares = json::array();
    for (const Rational& share : record.shares) shares.push_back(share.str());
    step["shares"] = std::move(shares);
    step["saturated_resources"] = record.saturated_resources;
    steps.push_back(std::move(step));
  }
  out["steps"] = std::move(steps);
  if (report.ratio) {
    out["ratio"] = ratio_to_json(*report.ratio, report.ratio_objective);
  }
  return out.dump(2) + "\n";
}

RunReport parse_run_report(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, 0, e.what());
  }
  try {
    RunReport report;
    report.n = in.at("n").get<Index>();
    report.m = in.at("m").get<Index>();
    report.algo = in.at("algo").get<std::string>();
    for (const json& step : in.at("steps")) {
      RunReport::StepRecord record;
      record.k = step.at("k").get<Index>();
      record.tau = step.at("tau").get<Index>();
      record.water_level =
          json_rational(step.at("water_level"), "water_level");
      for (const json& share : step.at("shares")) {
        record.shares.push_back(json_rational(share, "shares"));
      }
      record.saturated_resources =
          step.at("saturated_resources").get<std::vector<Index>>();
      report.steps.push_back(std::move(record));
    }
    if (in.contains("ratio")) {
      report.ratio = ratio_from_json(in.at("ratio"));
      report.ratio_objective =
          in.at("ratio").at("objective").get<std::string>();
    }
    return report;
  } catch (const json::exception& e) {
    throw ParseError(0, 0, e.what());
  }
}

std::vector<StepSolution> report_solutions(const RunReport& report) {
  std::vector<StepSolution> steps;
  steps.reserve(report.steps.size());
  for (const RunReport::StepRecord& record : report.steps) {
    if (static_cast<Index>(record.shares.size()) != record.k ||
        record.tau < 1 || record.tau > record.k) {
      throw ParseError(0, 0,
                       "malformed step record at k = " +
                           std::to_string(record.k));
    }
    StepSolution sol;
    sol.shares.step = record.k;
    sol.shares.shares.resize(record.k);
    for (Index i = 0; i < record.k; ++i) sol.shares.shares(i) = record.shares[i];
    sol.water_level = record.water_level;
    sol.split = record.tau - 1;
    steps.push_back(std::move(sol));
  }
  return steps;
}

}  // namespace ddrf
