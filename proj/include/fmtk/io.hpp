#ifndef FMTK_IO_HPP
#define FMTK_IO_HPP

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fmtk/errors.hpp"
#include "fmtk/fitting.hpp"
#include "fmtk/measure.hpp"
#include "fmtk/subsets.hpp"

namespace fmtk {

namespace detail {

inline std::size_t line_of_offset(const std::string& text, std::size_t byte) {
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n'));
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline double parse_number(const std::string& field, const std::string& origin, std::size_t line,
                           std::size_t col) {
  std::string t = field;
  const auto a = t.find_first_not_of(" \t");
  const auto b = t.find_last_not_of(" \t");
  t = a == std::string::npos ? "" : t.substr(a, b - a + 1);
  const char* begin = t.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (t.empty() || end != begin + t.size())
    throw parse_error(origin + ":" + std::to_string(line) + ": field " + std::to_string(col) +
                      ": not a number: \"" + field + "\"");
  return v;
}

/// One CSV record (quotes, doubled-quote escapes; no embedded newlines).
inline std::vector<std::string> split_csv(const std::string& line, const std::string& origin,
                                          std::size_t lineno) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted)
    throw parse_error(origin + ":" + std::to_string(lineno) + ": unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

} // namespace detail

/// Serializes a measure table: {"n": …, "name": …, "values": [2^n reals]},
/// ascending bitmask order, lossless on roundtrip. The optional label mode
/// adds a parallel "labels" array.
inline std::string measure_to_json(const SetFunction& sf, const std::string& name = "",
                                   std::optional<LabelMode> labels = std::nullopt) {
  nlohmann::ordered_json j;
  j["n"] = sf.n();
  if (!name.empty()) j["name"] = name;
  j["values"] = sf.values();
  if (labels) {
    std::vector<std::string> names;
    names.reserve(sf.size());
    for (Mask a = 0; a < sf.size(); ++a) names.push_back(subset_label(a, *labels));
    j["labels"] = names;
  }
  return j.dump(2) + "\n";
}

inline std::string measure_to_json(const FuzzyMeasure& mu, const std::string& name = "",
                                   std::optional<LabelMode> labels = std::nullopt) {
  return measure_to_json(mu.as_set_function(), name, labels);
}

/// Parses the measure JSON without validating monotonicity.
inline SetFunction parse_set_function(const std::string& text,
                                      const std::string& origin = "<input>",
                                      std::string* name_out = nullptr) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(origin + ":" + std::to_string(detail::line_of_offset(text, e.byte)) + ": " +
                      e.what());
  }
  if (!j.is_object()) throw parse_error(origin + ": expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw parse_error(origin + ": field \"n\" must be an integer");
  const int n = j["n"].get<int>();
  Universe u = [&] {
    try {
      return Universe(n);
    } catch (const std::invalid_argument& e) {
      throw parse_error(origin + ": " + e.what());
    }
  }();
  if (!j.contains("values") || !j["values"].is_array())
    throw parse_error(origin + ": field \"values\" must be an array");
  const auto& arr = j["values"];
  if (arr.size() != u.subset_count())
    throw parse_error(origin + ": \"values\" has " + std::to_string(arr.size()) + " entries, expected " +
                      std::to_string(u.subset_count()));
  std::vector<double> values;
  values.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw parse_error(origin + ": values[" + std::to_string(i) + "] is not a number");
    values.push_back(arr[i].get<double>());
  }
  if (name_out) *name_out = j.value("name", "");
  try {
    return SetFunction(u, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw parse_error(origin + ": " + e.what());
  }
}

inline FuzzyMeasure parse_measure(const std::string& text, const std::string& origin = "<input>",
                                  double tol = default_tolerance, std::string* name_out = nullptr) {
  return FuzzyMeasure::checked(parse_set_function(text, origin, name_out), tol);
}

inline SetFunction load_set_function(const std::string& path, std::string* name_out = nullptr) {
  return parse_set_function(detail::read_text_file(path), path, name_out);
}

inline FuzzyMeasure load_measure(const std::string& path, double tol = default_tolerance,
                                 std::string* name_out = nullptr) {
  return parse_measure(detail::read_text_file(path), path, tol, name_out);
}

/// CSV with a header row; columns: alternative id, n scores, desired overall
/// evaluation. n is inferred from the header width.
inline Dataset parse_dataset(const std::string& text, const std::string& origin = "<input>") {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  Dataset ds;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = detail::split_csv(line, origin, lineno);
    if (!have_header) {
      if (fields.size() < 3)
        throw parse_error(origin + ":" + std::to_string(lineno) +
                          ": header needs at least id, one score, desired");
      ds.n = static_cast<int>(fields.size()) - 2;
      have_header = true;
      continue;
    }
    if (fields.size() != static_cast<std::size_t>(ds.n) + 2)
      throw parse_error(origin + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(ds.n + 2) + " fields, got " + std::to_string(fields.size()));
    DataSample s;
    s.id = fields[0];
    for (int c = 0; c < ds.n; ++c)
      s.scores.push_back(detail::parse_number(fields[c + 1], origin, lineno, c + 2));
    s.desired = detail::parse_number(fields[ds.n + 1], origin, lineno, ds.n + 2);
    ds.samples.push_back(std::move(s));
  }
  if (!have_header) throw parse_error(origin + ": empty file");
  if (ds.samples.empty()) throw parse_error(origin + ": no data rows");
  return ds;
}

inline Dataset load_dataset(const std::string& path) {
  return parse_dataset(detail::read_text_file(path), path);
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

} // namespace fmtk

#endif // FMTK_IO_HPP
