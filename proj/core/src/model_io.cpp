#include "ptw/model_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace ptw {

namespace {

constexpr char kMagic[4] = {'P', 'T', 'W', 'M'};
constexpr std::uint32_t kVersion = 1;

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& buf, double v) { put_u64(buf, std::bit_cast<std::uint64_t>(v)); }

class Reader {
 public:
  explicit Reader(std::string data) : data_(std::move(data)) {}

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += 8;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  double f64() { return std::bit_cast<double>(u64()); }
  void raw(char* dst, std::size_t n) {
    need(n);
    std::memcpy(dst, data_.data() + pos_, n);
    pos_ += n;
  }
  bool exhausted() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > data_.size()) throw ModelError("truncated model file");
  }
  std::string data_;
  std::size_t pos_ = 0;
};

}  // namespace

class ModelCodec {
 public:
  static std::string encode(const PatternTree& t) {
    std::string buf;
    buf.append(kMagic, 4);
    put_u32(buf, kVersion);
    put_u32(buf, t.depth_);
    buf.push_back(static_cast<char>(t.kind_));
    buf.push_back(t.frozen_ ? 1 : 0);
    buf.push_back(0);
    buf.push_back(0);
    put_f64(buf, t.floor_);
    put_u64(buf, t.samples_coded_);
    put_u64(buf, t.node_count());
    for (std::size_t i = 1; i <= t.node_count(); ++i) {
      const NodeState& n = t.nodes_[i];
      put_u64(buf, n.stats.count);
      put_f64(buf, n.stats.mean);
      put_f64(buf, n.stats.ssd);
      put_f64(buf, n.log2_pe);
      put_f64(buf, n.log2_pw);
    }
    return buf;
  }

  static PatternTree decode(Reader& r) {
    char magic[4];
    r.raw(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) throw ModelError("not a model file");
    if (r.u32() != kVersion) throw ModelError("unsupported model version");
    const std::uint32_t depth = r.u32();
    if (depth > 30) throw ModelError("implausible tree depth");
    const std::uint8_t kind_raw = r.u8();
    if (kind_raw > 1) throw ModelError("unknown predictor kind");
    const bool frozen = r.u8() != 0;
    r.u8();
    r.u8();
    const double floor = r.f64();
    if (!(floor > 0.0) || !std::isfinite(floor)) throw ModelError("invalid variance floor");
    const std::uint64_t samples_coded = r.u64();
    const std::uint64_t node_count = r.u64();

    std::vector<double> zero_context(depth, 0.0);
    PatternTree t(depth, zero_context, static_cast<PredictorKind>(kind_raw), floor);
    if (node_count != t.node_count()) throw ModelError("node count mismatch");
    for (std::size_t i = 1; i <= t.node_count(); ++i) {
      NodeState& n = t.nodes_[i];
      n.stats.count = r.u64();
      n.stats.mean = r.f64();
      n.stats.ssd = r.f64();
      n.log2_pe = r.f64();
      n.log2_pw = r.f64();
    }
    if (!r.exhausted()) throw ModelError("trailing bytes in model file");
    t.frozen_ = frozen;
    t.samples_coded_ = samples_coded;
    t.context_ready_ = false;  // caller seeds the context from its series
    return t;
  }
};

void save_model(const PatternTree& tree, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const std::string buf = ModelCodec::encode(tree);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

PatternTree load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Reader r(std::move(data));
  return ModelCodec::decode(r);
}

}  // namespace ptw
