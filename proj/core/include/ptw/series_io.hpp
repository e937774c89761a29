#ifndef PTW_SERIES_IO_HPP
#define PTW_SERIES_IO_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptw/atypicality.hpp"
#include "ptw/synth.hpp"

namespace ptw {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  std::size_t line;
  ParseError(const std::string& msg, std::size_t line_no)
      : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"),
        line(line_no) {}
};

/// Ordered finite real series, optionally with timestamps.
struct SampleSeries {
  std::vector<double> values;
  std::vector<double> timestamps;  // empty when the file had no time column

  std::size_t size() const { return values.size(); }
};

enum class SeriesFormat { Auto, Value, TimeValue };

/// Reads a CSV series: one value per line, or time,value rows whose time
/// column must be nondecreasing. A single non-numeric header row is
/// tolerated. Rejects non-finite values and empty files, citing the line.
SampleSeries read_series(const std::string& path, SeriesFormat format = SeriesFormat::Auto);

void write_series_csv(const std::string& path, std::span<const double> values);
void write_labels_json(const std::string& path, const std::vector<SegmentLabel>& labels);

/// Columns: start_index, delta_L_bits, best_len, best_depth.
void write_trace_csv(const std::string& path, const DeltaTrace& trace);

/// One JSON object per line: {"start":..,"length":..,"score_bits":..}.
void write_segments_jsonl(const std::string& path,
                          const std::vector<AtypicalSegment>& segments);

/// Columns: index, bits (per-sample conditional codelengths).
void write_bits_csv(const std::string& path, std::size_t first_index,
                    std::span<const double> bits);

/// Fixed shortest-round-trip formatting used by every writer, so identical
/// results serialize to identical bytes.
std::string format_double(double v);

}  // namespace ptw

#endif
