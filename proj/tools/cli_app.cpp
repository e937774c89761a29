#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ptw/atypicality.hpp"
#include "ptw/model_io.hpp"
#include "ptw/pattern_tree.hpp"
#include "ptw/series_io.hpp"
#include "ptw/synth.hpp"

namespace ptw::cli {

namespace {

SeriesFormat parse_format(const std::string& name) {
  if (name == "auto") return SeriesFormat::Auto;
  if (name == "value") return SeriesFormat::Value;
  if (name == "time-value") return SeriesFormat::TimeValue;
  throw CLI::ValidationError("--format", "expected auto|value|time-value");
}

double default_floor(std::span<const double> values) {
  GaussianStats s;
  for (double v : values) s.update(v);
  const double var = s.count >= 2 ? s.variance() : 0.0;
  return var > 0.0 ? 1e-8 * var : 1e-8;
}

std::vector<double> split_doubles(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, sep)) {
    out.push_back(std::stod(field));
  }
  return out;
}

SegmentSpec parse_segment(const std::string& text) {
  std::vector<std::string> fields;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ':')) fields.push_back(field);
  if (fields.size() < 2) throw std::invalid_argument("bad segment spec: " + text);

  const std::string& kind = fields[0];
  const auto length = static_cast<std::size_t>(std::stoull(fields[1]));
  if (kind == "gaussian") {
    if (fields.size() != 4) throw std::invalid_argument("gaussian:<len>:<mu>:<sigma2>");
    return {GaussianSegment{std::stod(fields[2]), std::stod(fields[3])}, length};
  }
  if (kind == "sin") {
    if (fields.size() < 4 || fields.size() > 5) {
      throw std::invalid_argument("sin:<len>:<amplitude>:<period>[:<phase>]");
    }
    const double phase = fields.size() == 5 ? std::stod(fields[4]) : 0.0;
    return {SinusoidSegment{std::stod(fields[2]), std::stod(fields[3]), phase}, length};
  }
  if (kind == "mixture") {
    if (fields.size() != 5) {
      throw std::invalid_argument("mixture:<len>:<w|w..>:<m|m..>:<v|v..>");
    }
    MixtureSpec spec;
    spec.weights = split_doubles(fields[2], '|');
    const auto means = split_doubles(fields[3], '|');
    const auto vars = split_doubles(fields[4], '|');
    if (means.size() != spec.weights.size() || vars.size() != spec.weights.size()) {
      throw std::invalid_argument("mixture fields must have equal arity");
    }
    for (std::size_t k = 0; k < means.size(); ++k) {
      spec.components.push_back({means[k], vars[k]});
    }
    return {MixtureSegment{std::move(spec)}, length};
  }
  throw std::invalid_argument("unknown segment kind: " + kind);
}

struct TrainArgs {
  std::string input;
  std::string format = "auto";
  std::string output;
  std::uint32_t depth = 3;
  std::string predictor = "ss";
  double floor = 0.0;  // 0 = derive from data
};

int cmd_train(const TrainArgs& a, std::ostream& out) {
  const SampleSeries series = read_series(a.input, parse_format(a.format));
  if (series.size() < static_cast<std::size_t>(a.depth) + 2) {
    throw std::invalid_argument("series shorter than depth+2");
  }
  const double floor = a.floor > 0.0 ? a.floor : default_floor(series.values);
  PatternTree tree(a.depth, std::span(series.values).first(a.depth),
                   predictor_kind_from_string(a.predictor), floor);
  double bits = 0.0;
  for (std::size_t i = a.depth; i < series.size(); ++i) bits -= tree.update(series.values[i]);
  tree.freeze();
  save_model(tree, a.output);
  out << "model=" << a.output << '\n';
  out << "depth=" << a.depth << '\n';
  out << "predictor=" << a.predictor << '\n';
  out << "floor=" << format_double(floor) << '\n';
  out << "train_samples=" << (series.size() - a.depth) << '\n';
  out << "train_bits=" << format_double(bits) << '\n';
  return 0;
}

struct EncodeArgs {
  std::string model;
  std::string input;
  std::string format = "auto";
  std::string bits_csv;
};

int cmd_encode(const EncodeArgs& a, std::ostream& out) {
  PatternTree tree = load_model(a.model);
  const SampleSeries series = read_series(a.input, parse_format(a.format));
  const std::size_t d = tree.depth();
  if (series.size() < d + 1) {
    throw std::invalid_argument("series shorter than model depth+1");
  }
  tree.reset_context(std::span(series.values).first(d));
  std::vector<double> bits(series.size() - d);
  double total = 0.0;
  for (std::size_t i = d; i < series.size(); ++i) {
    bits[i - d] = -tree.update(series.values[i]);
    total += bits[i - d];
  }
  if (!a.bits_csv.empty()) write_bits_csv(a.bits_csv, d, bits);
  out << "total_bits=" << format_double(total) << '\n';
  out << "coded_samples=" << bits.size() << '\n';
  out << "bits_per_sample=" << format_double(total / static_cast<double>(bits.size()))
      << '\n';
  return 0;
}

struct ScanArgs {
  std::string model;
  std::string input;
  std::string format = "auto";
  std::string trace_csv;
  std::string segments_jsonl;
  double tau = 40.0;
  std::string depths = "1,2,3,4,5,6";
  std::size_t max_len = 250;
  std::size_t stride = 1;
  double floor = 0.0;  // 0 = model floor
  std::string predictor;  // empty = model predictor
  unsigned workers = 1;
};

int cmd_scan(const ScanArgs& a, std::ostream& out) {
  const PatternTree tree = load_model(a.model);
  const SampleSeries series = read_series(a.input, parse_format(a.format));

  ScanConfig cfg;
  cfg.tau = a.tau;
  cfg.depths.clear();
  for (double d : split_doubles(a.depths, ',')) {
    cfg.depths.push_back(static_cast<std::uint32_t>(d));
  }
  cfg.max_len = a.max_len;
  cfg.stride = a.stride;
  cfg.floor = a.floor > 0.0 ? a.floor : tree.floor();
  cfg.predictor_kind =
      a.predictor.empty() ? tree.kind() : predictor_kind_from_string(a.predictor);
  cfg.workers = a.workers;

  const ScanResult result = scan(series.values, tree, cfg);
  if (!a.trace_csv.empty()) write_trace_csv(a.trace_csv, result.trace);
  if (!a.segments_jsonl.empty()) write_segments_jsonl(a.segments_jsonl, result.segments);

  out << "starts=" << result.trace.size() << '\n';
  out << "segments=" << result.segments.size() << '\n';
  for (const auto& s : result.segments) {
    out << "segment start=" << s.start << " length=" << s.length
        << " score_bits=" << format_double(s.score_bits) << '\n';
  }
  return 0;
}

struct SynthArgs {
  std::string kind = "gaussian";
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  double mu = 0.0;
  double sigma2 = 1.0;
  std::string weights = "1";
  std::string means = "0";
  std::string vars = "1";
  double amplitude = 1.0;
  double period = 50.0;
  double phase = 0.0;
  std::string segments;
  std::string output;
  std::string labels;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  Composite composite;
  if (a.kind == "gaussian") {
    composite = gen_composite({{GaussianSegment{a.mu, a.sigma2}, a.n}}, a.seed);
  } else if (a.kind == "sinusoid") {
    composite =
        gen_composite({{SinusoidSegment{a.amplitude, a.period, a.phase}, a.n}}, a.seed);
  } else if (a.kind == "mixture") {
    MixtureSpec spec;
    spec.weights = split_doubles(a.weights, ',');
    const auto means = split_doubles(a.means, ',');
    const auto vars = split_doubles(a.vars, ',');
    if (means.size() != spec.weights.size() || vars.size() != spec.weights.size()) {
      throw std::invalid_argument("--weights/--means/--vars must have equal arity");
    }
    for (std::size_t k = 0; k < means.size(); ++k) {
      spec.components.push_back({means[k], vars[k]});
    }
    composite = gen_composite({{MixtureSegment{std::move(spec)}, a.n}}, a.seed);
  } else if (a.kind == "composite") {
    std::vector<SegmentSpec> segs;
    std::stringstream ss(a.segments);
    std::string one;
    while (std::getline(ss, one, ';')) {
      if (!one.empty()) segs.push_back(parse_segment(one));
    }
    composite = gen_composite(segs, a.seed);
  } else {
    throw std::invalid_argument("unknown synth kind: " + a.kind);
  }

  write_series_csv(a.output, composite.values);
  if (!a.labels.empty()) write_labels_json(a.labels, composite.labels);
  out << "samples=" << composite.values.size() << '\n';
  out << "segments=" << composite.labels.size() << '\n';
  return 0;
}

struct ReportArgs {
  std::string trace_csv;
  double tau = 40.0;
};

int cmd_report(const ReportArgs& a, std::ostream& out) {
  std::ifstream in(a.trace_csv);
  if (!in) throw IoError("cannot open: " + a.trace_csv);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty trace: " + a.trace_csv);

  std::size_t count = 0, flagged = 0;
  double min_delta = std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  double sum = 0.0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::stringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    const auto start = static_cast<std::size_t>(std::stoull(field));
    std::getline(row, field, ',');
    const double delta = std::stod(field);
    ++count;
    sum += delta;
    if (delta < min_delta) {
      min_delta = delta;
      argmin = start;
    }
    if (delta < -a.tau) ++flagged;
  }
  if (count == 0) throw ParseError("trace has no rows", line_no);

  out << "starts=" << count << '\n';
  out << "min_delta_bits=" << format_double(min_delta) << '\n';
  out << "min_delta_start=" << argmin << '\n';
  out << "mean_delta_bits=" << format_double(sum / static_cast<double>(count)) << '\n';
  out << "flagged_starts=" << flagged << '\n';
  out << "tau=" << format_double(a.tau) << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pattern-tree weighting coder and atypicality scanner"};
  app.require_subcommand(1);
  app.set_config("--config")->expected(0, 1);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Train and freeze a coder on a series");
  t->add_option("--input", train.input, "Input series CSV")->required();
  t->add_option("--format", train.format, "auto|value|time-value");
  t->add_option("--output", train.output, "Model file to write")->required();
  t->add_option("--depth", train.depth, "Tree depth D");
  t->add_option("--predictor", train.predictor, "op|ss");
  t->add_option("--floor", train.floor, "Variance floor (default 1e-8 * data variance)");

  EncodeArgs encode;
  auto* e = app.add_subcommand("encode", "Codelength of a series under a frozen model");
  e->add_option("--model", encode.model, "Model file")->required();
  e->add_option("--input", encode.input, "Input series CSV")->required();
  e->add_option("--format", encode.format, "auto|value|time-value");
  e->add_option("--bits-csv", encode.bits_csv, "Per-sample conditional bits CSV");

  ScanArgs scan_args;
  auto* s = app.add_subcommand("scan", "Scan a series for atypical subsequences");
  s->add_option("--model", scan_args.model, "Frozen typical model")->required();
  s->add_option("--input", scan_args.input, "Input series CSV")->required();
  s->add_option("--format", scan_args.format, "auto|value|time-value");
  s->add_option("--trace", scan_args.trace_csv, "Delta-L trace CSV to write");
  s->add_option("--segments", scan_args.segments_jsonl, "Flagged segments JSONL to write");
  s->add_option("--tau", scan_args.tau, "Header cost in bits");
  s->add_option("--depths", scan_args.depths, "Candidate depths, e.g. 1,2,3");
  s->add_option("--max-len", scan_args.max_len, "Maximum subsequence length");
  s->add_option("--stride", scan_args.stride, "Start-index spacing");
  s->add_option("--floor", scan_args.floor, "Variance floor (default: model floor)");
  s->add_option("--predictor", scan_args.predictor, "op|ss (default: model predictor)");
  s->add_option("--workers", scan_args.workers, "Worker threads");

  SynthArgs synth;
  auto* y = app.add_subcommand("synth", "Generate synthetic series");
  y->add_option("--kind", synth.kind, "gaussian|mixture|sinusoid|composite");
  y->add_option("--n", synth.n, "Sample count (single-segment kinds)");
  y->add_option("--seed", synth.seed, "RNG seed");
  y->add_option("--mu", synth.mu, "Gaussian mean");
  y->add_option("--sigma2", synth.sigma2, "Gaussian variance");
  y->add_option("--weights", synth.weights, "Mixture weights, comma separated");
  y->add_option("--means", synth.means, "Mixture means, comma separated");
  y->add_option("--vars", synth.vars, "Mixture variances, comma separated");
  y->add_option("--amplitude", synth.amplitude, "Sinusoid amplitude");
  y->add_option("--period", synth.period, "Sinusoid period in samples");
  y->add_option("--phase", synth.phase, "Sinusoid phase in radians");
  y->add_option("--segments", synth.segments,
                "Composite spec: gaussian:<len>:<mu>:<s2>;sin:<len>:<amp>:<period>[:<ph>];"
                "mixture:<len>:<w|w>:<m|m>:<v|v>");
  y->add_option("--output", synth.output, "Series CSV to write")->required();
  y->add_option("--labels", synth.labels, "Segment label JSON sidecar");

  ReportArgs report;
  auto* r = app.add_subcommand("report", "Summarize a delta-L trace");
  r->add_option("--trace", report.trace_csv, "Trace CSV")->required();
  r->add_option("--tau", report.tau, "Header cost in bits");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      out << app.help() << '\n';
      return 0;
    }
    err << "error: usage: " << ex.what() << '\n';
    return 2;
  }

  try {
    if (t->parsed()) return cmd_train(train, out);
    if (e->parsed()) return cmd_encode(encode, out);
    if (s->parsed()) return cmd_scan(scan_args, out);
    if (y->parsed()) return cmd_synth(synth, out);
    if (r->parsed()) return cmd_report(report, out);
    err << "error: usage: no subcommand\n";
    return 2;
  } catch (const ParseError& ex) {
    err << "error: parse: " << ex.what() << '\n';
    return 65;
  } catch (const IoError& ex) {
    err << "error: io: " << ex.what() << '\n';
    return 66;
  } catch (const std::exception& ex) {
    err << "error: data: " << ex.what() << '\n';
    return 65;
  }
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ptw::cli
