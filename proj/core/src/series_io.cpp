#include "ptw/series_io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include <json.hpp>

namespace ptw {

namespace {

bool parse_double(std::string_view field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SampleSeries read_series(const std::string& path, SeriesFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);

  SampleSeries series;
  std::string line;
  std::size_t line_no = 0;
  bool saw_data = false;
  bool two_column = (format == SeriesFormat::TimeValue);

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;

    const std::size_t comma = row.find(',');
    if (!saw_data && format == SeriesFormat::Auto) {
      two_column = comma != std::string_view::npos;
    }

    double time = 0.0, value = 0.0;
    bool ok;
    if (two_column) {
      if (comma == std::string_view::npos) {
        ok = false;
      } else {
        ok = parse_double(trim(row.substr(0, comma)), time) &&
             parse_double(trim(row.substr(comma + 1)), value);
      }
    } else {
      ok = parse_double(comma == std::string_view::npos ? row : trim(row.substr(0, comma)),
                        value) &&
           comma == std::string_view::npos;
    }

    if (!ok) {
      if (!saw_data && line_no == 1) continue;  // header row
      throw ParseError("unparseable row '" + std::string(row) + "'", line_no);
    }
    if (!std::isfinite(value) || (two_column && !std::isfinite(time))) {
      throw ParseError("non-finite value", line_no);
    }
    if (two_column) {
      if (!series.timestamps.empty() && time < series.timestamps.back()) {
        throw ParseError("time column must be nondecreasing", line_no);
      }
      series.timestamps.push_back(time);
    }
    series.values.push_back(value);
    saw_data = true;
  }

  if (series.values.empty()) throw IoError("no samples in: " + path);
  return series;
}

void write_series_csv(const std::string& path, std::span<const double> values) {
  auto out = open_out(path);
  for (double v : values) out << format_double(v) << '\n';
}

void write_labels_json(const std::string& path, const std::vector<SegmentLabel>& labels) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& l : labels) {
    doc.push_back({{"start", l.start}, {"length", l.length}, {"kind", l.kind}});
  }
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_trace_csv(const std::string& path, const DeltaTrace& trace) {
  auto out = open_out(path);
  out << "start_index,delta_L_bits,best_len,best_depth\n";
  for (const auto& p : trace) {
    out << p.start << ',' << format_double(p.delta_bits) << ',' << p.best_len << ','
        << p.best_depth << '\n';
  }
}

void write_segments_jsonl(const std::string& path,
                          const std::vector<AtypicalSegment>& segments) {
  auto out = open_out(path);
  for (const auto& s : segments) {
    nlohmann::ordered_json row{
        {"start", s.start}, {"length", s.length}, {"score_bits", s.score_bits}};
    out << row.dump() << '\n';
  }
}

void write_bits_csv(const std::string& path, std::size_t first_index,
                    std::span<const double> bits) {
  auto out = open_out(path);
  out << "index,bits\n";
  for (std::size_t i = 0; i < bits.size(); ++i) {
    out << (first_index + i) << ',' << format_double(bits[i]) << '\n';
  }
}

}  // namespace ptw
