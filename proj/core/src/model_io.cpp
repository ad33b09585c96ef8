#include "ciliagraph/model_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "ciliagraph/errors.hpp"
#include "json.hpp"

namespace ciliagraph {

namespace {

constexpr std::array<std::uint8_t, 8> kMagic = {'C', 'I', 'L', 'I', 'A', 'H', 'D', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

std::uint32_t crc32(const std::uint8_t* data, std::size_t size) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < size; ++i) {
    crc = table[(crc ^ data[i]) & 0xFFu] ^ (crc >> 8);
  }
  return crc ^ 0xFFFFFFFFu;
}

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void bytes(const std::uint8_t* data, std::size_t size) {
    buf_.insert(buf_.end(), data, data + size);
  }
  [[nodiscard]] std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& buf) : buf_(buf) {}

  std::uint8_t u8() { return take(1)[0]; }
  std::uint32_t u32() {
    const auto* p = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    const auto* p = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  const std::uint8_t* take(std::size_t size) {
    if (pos_ + size > buf_.size()) {
      throw IntegrityError(IntegrityKind::truncated, "model file truncated");
    }
    const std::uint8_t* p = buf_.data() + pos_;
    pos_ += size;
    return p;
  }
  [[nodiscard]] std::size_t pos() const { return pos_; }

 private:
  const std::vector<std::uint8_t>& buf_;
  std::size_t pos_ = 0;
};

std::string hw_mode_name(HyperWeightMode mode) {
  return mode == HyperWeightMode::entrywise ? "entrywise" : "matmul";
}

HyperWeightMode hw_mode_from(const std::string& name) {
  if (name == "entrywise") return HyperWeightMode::entrywise;
  if (name == "matmul") return HyperWeightMode::matmul;
  throw IntegrityError(IntegrityKind::truncated, "model header: bad hyper-weight mode");
}

void write_packed_bits(Writer& w, const BipolarHV& hv) {
  const int dim = hv.dim();
  std::uint8_t byte = 0;
  for (int k = 0; k < dim; ++k) {
    if (hv.e[static_cast<std::size_t>(k)] > 0) byte |= static_cast<std::uint8_t>(1u << (k % 8));
    if (k % 8 == 7 || k == dim - 1) {
      w.u8(byte);
      byte = 0;
    }
  }
}

BipolarHV read_packed_bits(Reader& r, int dim) {
  BipolarHV hv(dim);
  const std::size_t n_bytes = (static_cast<std::size_t>(dim) + 7) / 8;
  const std::uint8_t* p = r.take(n_bytes);
  for (int k = 0; k < dim; ++k) {
    const bool bit = (p[static_cast<std::size_t>(k) / 8] >> (k % 8)) & 1u;
    hv.e[static_cast<std::size_t>(k)] = bit ? std::int8_t{1} : std::int8_t{-1};
  }
  return hv;
}

}  // namespace

std::vector<std::uint8_t> serialize_model(const TrainedModel& model) {
  if (model.config.variant == Variant::graphhd || model.config.variant == Variant::record) {
    throw CompatError("serialize_model: baseline variants are not persisted");
  }

  Writer w;
  w.bytes(kMagic.data(), kMagic.size());
  w.u32(kFormatVersion);

  nlohmann::json header;
  header["dim"] = model.config.dim;
  header["levels"] = model.config.levels;
  header["seed"] = model.config.seed;
  header["variant"] = to_string(model.config.variant);
  header["hw_mode"] = hw_mode_name(model.config.hw_mode);
  header["attr_count"] = model.attr_count;
  header["class_count"] = model.class_count;
  const std::string header_str = header.dump();
  w.u32(static_cast<std::uint32_t>(header_str.size()));
  w.bytes(reinterpret_cast<const std::uint8_t*>(header_str.data()), header_str.size());

  for (const auto& centers : model.centers) {
    w.u32(static_cast<std::uint32_t>(centers.centers.size()));
    for (const double mu : centers.centers) w.f64(mu);
    w.u8(centers.degenerate ? 1 : 0);
  }

  for (const auto& bank : model.banks) {
    write_packed_bits(w, bank.levels.front());
    w.u32(static_cast<std::uint32_t>(bank.flip_positions.size()));
    for (const auto& step : bank.flip_positions) {
      w.u32(static_cast<std::uint32_t>(step.size()));
      for (const int pos : step) w.u32(static_cast<std::uint32_t>(pos));
    }
  }

  w.u32(static_cast<std::uint32_t>(model.prototypes.prototypes.size()));
  for (const auto& proto : model.prototypes.prototypes) {
    w.u32(static_cast<std::uint32_t>(proto.e.size()));
    for (const double x : proto.e) w.f64(x);
  }

  auto bytes = w.take();
  const std::uint32_t checksum = crc32(bytes.data(), bytes.size());
  for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(checksum >> (8 * i)));
  return bytes;
}

TrainedModel deserialize_model(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kMagic.size() + 8) {
    throw IntegrityError(IntegrityKind::truncated, "model file too short");
  }
  if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    throw IntegrityError(IntegrityKind::bad_magic, "not a model file (bad magic)");
  }
  {
    std::uint32_t stored = 0;
    for (int i = 0; i < 4; ++i) {
      stored |= static_cast<std::uint32_t>(bytes[bytes.size() - 4 + static_cast<std::size_t>(i)])
                << (8 * i);
    }
    const std::uint32_t actual = crc32(bytes.data(), bytes.size() - 4);
    if (stored != actual) {
      throw IntegrityError(IntegrityKind::checksum_mismatch, "model file checksum mismatch");
    }
  }

  Reader r(bytes);
  r.take(kMagic.size());
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion) {
    throw IntegrityError(IntegrityKind::version_mismatch,
                         "unsupported model format version " + std::to_string(version));
  }

  const std::uint32_t header_len = r.u32();
  const std::uint8_t* header_bytes = r.take(header_len);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_bytes, header_bytes + header_len);
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError(IntegrityKind::truncated,
                         std::string("model header unreadable: ") + e.what());
  }

  TrainedModel model;
  model.config.dim = header.at("dim").get<int>();
  model.config.levels = header.at("levels").get<int>();
  model.config.seed = header.at("seed").get<std::uint64_t>();
  model.config.variant = variant_from_string(header.at("variant").get<std::string>());
  model.config.hw_mode = hw_mode_from(header.at("hw_mode").get<std::string>());
  model.attr_count = header.at("attr_count").get<int>();
  model.class_count = header.at("class_count").get<int>();

  model.centers.resize(static_cast<std::size_t>(model.attr_count));
  for (int a = 0; a < model.attr_count; ++a) {
    auto& centers = model.centers[static_cast<std::size_t>(a)];
    const std::uint32_t m = r.u32();
    centers.centers.resize(m);
    for (std::uint32_t i = 0; i < m; ++i) centers.centers[i] = r.f64();
    centers.degenerate = r.u8() != 0;
    centers.attr_index = a;
  }

  model.banks.resize(static_cast<std::size_t>(model.attr_count));
  for (int a = 0; a < model.attr_count; ++a) {
    auto& bank = model.banks[static_cast<std::size_t>(a)];
    bank.centers = model.centers[static_cast<std::size_t>(a)];
    BipolarHV level = read_packed_bits(r, model.config.dim);
    bank.levels.push_back(level);
    const std::uint32_t steps = r.u32();
    for (std::uint32_t s = 0; s < steps; ++s) {
      const std::uint32_t count = r.u32();
      std::vector<int> positions(count);
      for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint32_t pos = r.u32();
        if (pos >= static_cast<std::uint32_t>(model.config.dim)) {
          throw IntegrityError(IntegrityKind::truncated, "flip position out of range");
        }
        positions[i] = static_cast<int>(pos);
        level.e[pos] = static_cast<std::int8_t>(-level.e[pos]);
      }
      bank.flip_counts.push_back(static_cast<int>(count));
      bank.flip_positions.push_back(std::move(positions));
      bank.levels.push_back(level);
    }
  }

  const std::uint32_t class_count = r.u32();
  if (static_cast<int>(class_count) != model.class_count) {
    throw IntegrityError(IntegrityKind::truncated, "prototype count mismatch");
  }
  std::vector<RealHV> protos(class_count);
  for (std::uint32_t c = 0; c < class_count; ++c) {
    const std::uint32_t dim = r.u32();
    protos[c].e.resize(dim);
    for (std::uint32_t k = 0; k < dim; ++k) protos[c].e[k] = r.f64();
  }
  model.prototypes.prototypes = std::move(protos);
  for (const auto& proto : model.prototypes.prototypes) {
    model.prototypes.norms.push_back(l2_norm(proto));
    model.prototypes.normalized.push_back(l2_normalize(proto));
  }

  if (r.pos() != bytes.size() - 4) {
    throw IntegrityError(IntegrityKind::truncated, "model file has trailing bytes");
  }
  return model;
}

void save_model(const TrainedModel& model, const std::string& path) {
  const auto bytes = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open model file for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("failed writing model file: " + path);
}

TrainedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open model file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize_model(bytes);
}

}  // namespace ciliagraph
