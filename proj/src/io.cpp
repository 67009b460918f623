#include "tern/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "tern/errors.hpp"

namespace tern {

Dataset Dataset::normal(std::vector<double> x_) {
  Dataset d;
  d.kind = Kind::Normal;
  d.x = std::move(x_);
  return d;
}

Dataset Dataset::two_sample(std::vector<double> a_, std::vector<double> b_) {
  Dataset d;
  d.kind = Kind::TwoSample;
  d.a = std::move(a_);
  d.b = std::move(b_);
  return d;
}

Dataset Dataset::gravity(std::vector<double> height_, std::vector<double> time_) {
  if (height_.size() != time_.size()) {
    throw DataError("gravity dataset: height and time lengths differ");
  }
  Dataset d;
  d.kind = Kind::Gravity;
  d.height = std::move(height_);
  d.time = std::move(time_);
  return d;
}

std::size_t Dataset::size() const {
  switch (kind) {
    case Kind::Normal:
      return x.size();
    case Kind::TwoSample:
      return a.size() + b.size();
    case Kind::Gravity:
      return height.size();
  }
  return 0;
}

const char* dataset_kind_name(Dataset::Kind kind) {
  switch (kind) {
    case Dataset::Kind::Normal:
      return "normal";
    case Dataset::Kind::TwoSample:
      return "two_sample";
    case Dataset::Kind::Gravity:
      return "gravity";
  }
  return "?";
}

std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, const std::string& what) {
  // Leading/trailing blanks are tolerated; anything else must parse fully.
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  if (text.empty()) {
    throw DataError(what + ": empty value");
  }
  if (text.front() == '+') {
    text.remove_prefix(1);  // from_chars rejects an explicit plus sign
    if (text.empty() || text.front() == '-') {
      throw DataError(what + ": cannot parse number '+" + std::string(text) +
                      "'");
    }
  }
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw DataError(what + ": cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

int find_column(const std::vector<std::string>& header, const std::string& name,
                const std::string& origin) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == name) return static_cast<int>(i);
  }
  throw DataError(origin + ": missing required column '" + name + "'");
}

}  // namespace

Dataset parse_dataset_csv(const std::string& text, Dataset::Kind kind,
                          const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(origin + ": empty file (header row required)");
  }
  const std::vector<std::string> header = split_csv_line(line);

  auto field = [&](const std::vector<std::string>& fields, int col,
                   long line_no) -> const std::string& {
    if (col >= static_cast<int>(fields.size())) {
      throw DataError(origin + ":" + std::to_string(line_no) +
                      ": row has too few fields");
    }
    return fields[static_cast<std::size_t>(col)];
  };

  long line_no = 1;
  if (kind == Dataset::Kind::Normal) {
    const int cx = find_column(header, "x", origin);
    std::vector<double> xs;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      const auto fields = split_csv_line(line);
      xs.push_back(parse_double(field(fields, cx, line_no),
                                origin + ":" + std::to_string(line_no) + " x"));
    }
    if (xs.empty()) throw DataError(origin + ": no data rows");
    return Dataset::normal(std::move(xs));
  }

  if (kind == Dataset::Kind::TwoSample) {
    const int cg = find_column(header, "group", origin);
    const int cy = find_column(header, "y", origin);
    std::vector<double> a, b;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      const auto fields = split_csv_line(line);
      const std::string g = trim(field(fields, cg, line_no));
      const double y = parse_double(
          field(fields, cy, line_no),
          origin + ":" + std::to_string(line_no) + " y");
      if (g == "a") {
        a.push_back(y);
      } else if (g == "b") {
        b.push_back(y);
      } else {
        throw DataError(origin + ":" + std::to_string(line_no) +
                        ": group must be 'a' or 'b', got '" + g + "'");
      }
    }
    if (a.empty() && b.empty()) throw DataError(origin + ": no data rows");
    return Dataset::two_sample(std::move(a), std::move(b));
  }

  const int ch = find_column(header, "height", origin);
  const int ct = find_column(header, "time", origin);
  std::vector<double> hs, ts;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    hs.push_back(parse_double(field(fields, ch, line_no),
                              origin + ":" + std::to_string(line_no) + " height"));
    ts.push_back(parse_double(field(fields, ct, line_no),
                              origin + ":" + std::to_string(line_no) + " time"));
  }
  if (hs.empty()) throw DataError(origin + ": no data rows");
  return Dataset::gravity(std::move(hs), std::move(ts));
}

Dataset read_dataset_csv(const std::string& path, Dataset::Kind kind) {
  return parse_dataset_csv(read_text_file(path), kind, path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open file '" + path + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write file '" + path + "'");
  }
  out << content;
  if (!out) {
    throw DataError("write failed for '" + path + "'");
  }
}

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace tern
