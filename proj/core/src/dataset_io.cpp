#include "tfboost/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "tfboost/errors.hpp"
#include "tfboost/model_io.hpp"

namespace tfboost {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, int line_no, const std::string& origin) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(origin + ":" + std::to_string(line_no) + ": cannot parse number '" +
                     s + "'");
  }
  return value;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && s[i] == ' ') ++i;
  return s.substr(i);
}

}  // namespace

Dataset read_dataset_string(const std::string& text, const std::string& origin) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw ParseError(origin + ":1: empty file");

  const auto header = split_csv_line(trim(line));
  if (header.size() < 3 || header[0] != "id" || header[1] != "y") {
    throw ParseError(origin + ":1: header must start with 'id,y' followed by s:/t: columns");
  }

  std::vector<std::string> scalar_names;
  std::vector<double> times;
  for (std::size_t c = 2; c < header.size(); ++c) {
    const std::string col = trim(header[c]);
    if (col.rfind("s:", 0) == 0) {
      if (!times.empty()) {
        throw ParseError(origin + ":1: s: columns must precede t: columns");
      }
      scalar_names.push_back(col.substr(2));
    } else if (col.rfind("t:", 0) == 0) {
      times.push_back(parse_number(col.substr(2), 1, origin));
    } else {
      throw ParseError(origin + ":1: column '" + col + "' must carry an s: or t: prefix");
    }
  }
  if (times.size() < 2) throw ParseError(origin + ":1: need at least two t: columns");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] <= times[i - 1]) {
      throw ParseError(origin + ":1: grid times must be strictly increasing");
    }
  }

  const std::size_t width = header.size();
  const int q = static_cast<int>(scalar_names.size());
  const int m = static_cast<int>(times.size());

  std::vector<std::string> ids;
  std::vector<double> y_values;
  bool any_y = false, all_y = true;
  std::vector<double> flat_scalars, flat_values;
  int line_no = 1;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto fields = split_csv_line(trimmed);
    if (fields.size() != width) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(width) + " columns, got " +
                       std::to_string(fields.size()));
    }
    ids.push_back(trim(fields[0]));
    const std::string y_field = trim(fields[1]);
    if (y_field.empty()) {
      all_y = false;
      y_values.push_back(std::nan(""));
    } else {
      any_y = true;
      y_values.push_back(parse_number(y_field, line_no, origin));
    }
    for (int c = 0; c < q; ++c) {
      flat_scalars.push_back(parse_number(fields[2 + c], line_no, origin));
    }
    for (int c = 0; c < m; ++c) {
      flat_values.push_back(parse_number(fields[2 + q + c], line_no, origin));
    }
  }
  if (ids.empty()) throw ParseError(origin + ": no data rows");
  if (any_y && !all_y) {
    throw ParseError(origin + ": y must be present on every row or on none");
  }

  const int n = static_cast<int>(ids.size());
  Eigen::VectorXd grid_points(m);
  for (int i = 0; i < m; ++i) grid_points(i) = times[i];
  Eigen::MatrixXd values(n, m), scalars(n, q);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < m; ++c) values(i, c) = flat_values[i * m + c];
    for (int c = 0; c < q; ++c) scalars(i, c) = flat_scalars[i * q + c];
  }
  std::optional<Eigen::VectorXd> response;
  if (any_y) {
    response = Eigen::Map<Eigen::VectorXd>(y_values.data(), n);
  }

  try {
    return Dataset{std::move(ids), std::move(scalar_names),
                   FunctionalSample(Grid(std::move(grid_points)), std::move(values),
                                    std::move(scalars), std::move(response))};
  } catch (const std::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

Dataset read_dataset_file(const std::string& path) {
  return read_dataset_string(read_file(path), path);
}

std::string write_dataset_string(const Dataset& data) {
  std::ostringstream ss;
  ss.precision(17);
  ss << "id,y";
  for (const auto& name : data.scalar_names) ss << ",s:" << name;
  for (int j = 0; j < data.sample.m(); ++j) ss << ",t:" << data.sample.grid.points()(j);
  ss << "\n";
  for (int i = 0; i < data.sample.n(); ++i) {
    ss << data.ids[i] << ",";
    if (data.sample.has_response()) ss << (*data.sample.response)(i);
    for (int c = 0; c < data.sample.q(); ++c) ss << "," << data.sample.scalars(i, c);
    for (int c = 0; c < data.sample.m(); ++c) ss << "," << data.sample.values(i, c);
    ss << "\n";
  }
  return ss.str();
}

void write_dataset_file(const Dataset& data, const std::string& path) {
  atomic_write_file(path, write_dataset_string(data));
}

std::string predictions_csv(const std::vector<std::string>& ids,
                            const Eigen::VectorXd& predictions) {
  if (static_cast<Eigen::Index>(ids.size()) != predictions.size()) {
    throw DimensionError("predictions_csv: id/prediction length mismatch");
  }
  std::ostringstream ss;
  ss.precision(17);
  ss << "id,prediction\n";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ss << ids[i] << "," << predictions(i) << "\n";
  }
  return ss.str();
}

}  // namespace tfboost
