#include "memeflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "memeflow/errors.hpp"

namespace memeflow::io {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

bool parse_double(const std::string& token, double& out) {
  if (token.empty()) return false;
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + token.size();
}

bool parse_long(const std::string& token, long& out) {
  if (token.empty()) return false;
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtol(begin, &end, 10);
  return end == begin + token.size();
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  return in;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

// JSON has no infinities; a perfect fit's aic comes out as null
std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_double(v);
}

std::string fit_report_json(const FitReport& r) {
  std::ostringstream out;
  out << "{\"model\":\"" << to_string(r.model) << "\",\"params\":{";
  out << "\"affinity\":" << json_number(r.affinity);
  if (r.model == FitModel::Logistic && r.delta_e)
    out << ",\"delta_e\":" << json_number(*r.delta_e);
  out << ",\"y0\":" << json_number(r.y0) << "}";
  out << ",\"sse\":" << json_number(r.sse);
  out << ",\"aic\":" << json_number(r.aic);
  out << ",\"converged\":" << (r.converged ? "true" : "false");
  out << ",\"iterations\":" << r.iterations << "}";
  return out.str();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

TimeSeries read_timeseries_csv(std::istream& in) {
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line)) throw CsvError("empty file: missing header row", 1);
  lineno = 1;

  TimeSeries series;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 2)
      throw CsvError("expected 2 fields, got " + std::to_string(fields.size()), lineno);
    double t, y;
    if (!parse_double(fields[0], t)) throw CsvError("bad t value '" + fields[0] + "'", lineno);
    if (!parse_double(fields[1], y)) throw CsvError("bad y value '" + fields[1] + "'", lineno);
    if (!std::isfinite(t) || !std::isfinite(y))
      throw CsvError("non-finite sample", lineno);
    if (!series.empty() && !(t > series.samples.back().t))
      throw CsvError("t values must be strictly increasing", lineno);
    series.samples.push_back({t, y});
  }
  return series;
}

TimeSeries read_timeseries_csv(const std::string& path) {
  auto in = open_or_throw(path);
  return read_timeseries_csv(in);
}

void write_timeseries_csv(std::ostream& out, const TimeSeries& series) {
  out << "t,y\n";
  for (const auto& s : series.samples)
    out << format_double(s.t) << ',' << format_double(s.y) << '\n';
}

void write_wide_csv(std::ostream& out, const std::vector<TimeSeries>& series) {
  if (series.empty()) throw ValidationError("write_wide_csv on an empty trajectory list");
  const std::size_t rows = series.front().size();
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i].size() != rows)
      throw ValidationError("trajectory " + std::to_string(i) + " is not grid-aligned");
    for (std::size_t r = 0; r < rows; ++r)
      if (series[i].samples[r].t != series[0].samples[r].t)
        throw ValidationError("trajectory " + std::to_string(i) + " is not grid-aligned");
  }
  out << 't';
  for (std::size_t i = 0; i < series.size(); ++i) out << ",y" << (i + 1);
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    out << format_double(series[0].samples[r].t);
    for (const auto& ts : series) out << ',' << format_double(ts.samples[r].y);
    out << '\n';
  }
}

ConstituentSet read_constituents_csv(std::istream& in) {
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line)) throw CsvError("empty file: missing header row", 1);
  lineno = 1;

  ConstituentSet set;
  std::vector<std::string> finished;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 3)
      throw CsvError("expected 3 fields (id,dof_index,energy), got " +
                         std::to_string(fields.size()),
                     lineno);
    const std::string& id = fields[0];
    long dof;
    double energy;
    if (id.empty()) throw CsvError("empty constituent id", lineno);
    if (!parse_long(fields[1], dof))
      throw CsvError("bad dof_index '" + fields[1] + "'", lineno);
    if (!parse_double(fields[2], energy))
      throw CsvError("bad energy '" + fields[2] + "'", lineno);

    if (set.constituents.empty() || set.constituents.back().id != id) {
      for (const auto& done : finished)
        if (done == id)
          throw CsvError("rows for id '" + id + "' are not contiguous", lineno);
      if (!set.constituents.empty()) finished.push_back(set.constituents.back().id);
      if (dof != 0)
        throw CsvError("dof_index for id '" + id + "' must start at 0", lineno);
      set.constituents.push_back({id, {energy}});
    } else {
      const auto expected = static_cast<long>(set.constituents.back().dof_energies.size());
      if (dof != expected)
        throw CsvError("dof_index for id '" + id + "' must be contiguous (expected " +
                           std::to_string(expected) + ", got " + std::to_string(dof) + ")",
                       lineno);
      set.constituents.back().dof_energies.push_back(energy);
    }
  }
  return set;
}

ConstituentSet read_constituents_csv(const std::string& path) {
  auto in = open_or_throw(path);
  return read_constituents_csv(in);
}

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty file: missing header row", 1);
  const auto names = split_csv(line);
  if (names.empty() || (names.size() == 1 && names[0].empty()))
    throw CsvError("header row has no column names", 1);

  Dataset data;
  for (const auto& name : names) data.columns.push_back({name, {}});

  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    std::vector<double> row(names.size());
    bool usable = fields.size() == names.size();
    for (std::size_t i = 0; usable && i < fields.size(); ++i)
      usable = parse_double(fields[i], row[i]) && std::isfinite(row[i]);
    if (!usable) {
      ++data.rows_dropped;  // missing or non-numeric cells drop the whole row
      continue;
    }
    for (std::size_t i = 0; i < row.size(); ++i) data.columns[i].values.push_back(row[i]);
  }
  if (data.columns.front().values.empty())
    throw CsvError("no usable data rows", lineno == 1 ? 1 : lineno);
  return data;
}

Dataset read_dataset_csv(const std::string& path) {
  auto in = open_or_throw(path);
  return read_dataset_csv(in);
}

std::string to_json(const FitReport& report) { return fit_report_json(report); }

std::string to_json(const BubbleVerdict& verdict) {
  std::ostringstream out;
  out << "{\"label\":\"" << to_string(verdict.label) << "\"";
  out << ",\"inflection\":";
  if (verdict.inflection)
    out << "{\"t\":" << json_number(verdict.inflection->t)
        << ",\"y\":" << json_number(verdict.inflection->y) << "}";
  else
    out << "null";
  out << ",\"logistic_fit\":"
      << (verdict.logistic_fit ? fit_report_json(*verdict.logistic_fit) : "null");
  out << ",\"exponential_fit\":"
      << (verdict.exponential_fit ? fit_report_json(*verdict.exponential_fit) : "null");
  out << ",\"disparity\":" << json_number(verdict.disparity);
  out << ",\"rationale\":\"" << json_escape(verdict.rationale) << "\"}";
  return out.str();
}

std::string to_json(const std::vector<FeatureScore>& scores) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto& s = scores[i];
    if (i) out << ',';
    out << "{\"name\":\"" << json_escape(s.name) << "\""
        << ",\"entropy_bits\":" << json_number(s.entropy_bits)
        << ",\"normalized\":" << json_number(s.normalized) << ",\"label\":\""
        << to_string(s.label) << "\"}";
  }
  out << ']';
  return out.str();
}

std::string features_csv(const std::vector<FeatureScore>& scores) {
  std::ostringstream out;
  out << "name,entropy_bits,normalized,label\n";
  for (const auto& s : scores)
    out << s.name << ',' << format_double(s.entropy_bits) << ','
        << format_double(s.normalized) << ',' << to_string(s.label) << '\n';
  return out.str();
}

CompetitionSystem read_system_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad system JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("system JSON must be an object");
  for (const char* key : {"affinities", "delta_es", "alpha"})
    if (!j.contains(key))
      throw ConfigError(std::string("system JSON is missing \"") + key + "\"");

  CompetitionSystem sys;
  try {
    sys.affinities = j.at("affinities").get<std::vector<double>>();
    sys.delta_es = j.at("delta_es").get<std::vector<double>>();
    const auto rows = j.at("alpha").get<std::vector<std::vector<double>>>();
    const std::size_t n = rows.size();
    sys.alpha = Matrix(n, n == 0 ? 0 : rows.front().size());
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != rows.front().size())
        throw ConfigError("alpha row " + std::to_string(i) + " has " +
                          std::to_string(rows[i].size()) + " entries, expected " +
                          std::to_string(rows.front().size()));
      for (std::size_t k = 0; k < rows[i].size(); ++k) sys.alpha(i, k) = rows[i][k];
    }
    sys.normalized = j.value("normalized", false);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad system JSON: ") + e.what());
  }
  sys.validate();
  return sys;
}

CompetitionSystem read_system_json(const std::string& path) {
  auto in = open_or_throw(path);
  return read_system_json(in);
}

std::map<std::string, std::string> read_config(std::istream& in) {
  std::map<std::string, std::string> config;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        " is not of the form key=value");
    const std::string key = trim(body.substr(0, eq));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
    config[key] = trim(body.substr(eq + 1));
  }
  return config;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  auto in = open_or_throw(path);
  return read_config(in);
}

}  // namespace memeflow::io
