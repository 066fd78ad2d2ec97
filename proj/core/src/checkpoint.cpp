#include "gnd/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace gnd {

namespace {

using nlohmann::json;

constexpr char kMagic[8] = {'G', 'N', 'D', 'C', 'K', 'P', 'T', '1'};
constexpr int kVersion = 1;

// Little-endian byte order is asserted at build time; this library does not
// target big-endian hosts.
static_assert(std::endian::native == std::endian::little,
              "checkpoint blobs are little-endian");

template <class Scalar>
const char* dtype_name() {
  return sizeof(Scalar) == 8 ? "f64" : "f32";
}

template <class Scalar>
json net_manifest(const DenseNet<Scalar>& net) {
  json tensors = json::array();
  for (std::size_t l = 0; l < net.w.size(); ++l) {
    tensors.push_back({{"name", "w" + std::to_string(l)},
                       {"rows", net.w[l].rows()},
                       {"cols", net.w[l].cols()},
                       {"dtype", dtype_name<Scalar>()}});
    tensors.push_back({{"name", "b" + std::to_string(l)},
                       {"rows", net.b[l].rows()},
                       {"cols", 1},
                       {"dtype", dtype_name<Scalar>()}});
  }
  return tensors;
}

template <class Scalar>
void write_blobs(std::ofstream& out, const DenseNet<Scalar>& net) {
  for (std::size_t l = 0; l < net.w.size(); ++l) {
    out.write(reinterpret_cast<const char*>(net.w[l].data()),
              static_cast<std::streamsize>(net.w[l].size() * sizeof(Scalar)));
    out.write(reinterpret_cast<const char*>(net.b[l].data()),
              static_cast<std::streamsize>(net.b[l].size() * sizeof(Scalar)));
  }
}

void write_file(const std::filesystem::path& path, const json& header,
                const std::function<void(std::ofstream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw CheckpointError("cannot write checkpoint: " + path.string());
  out.write(kMagic, 8);
  const std::string h = header.dump();
  const std::uint64_t len = h.size();
  out.write(reinterpret_cast<const char*>(&len), 8);
  out.write(h.data(), static_cast<std::streamsize>(h.size()));
  body(out);
  if (!out) throw CheckpointError("checkpoint write failed: " + path.string());
}

json made_config_json(const MadeConfig& c) {
  return {{"n_gamma", c.n_gamma},
          {"n_sector", c.n_sector},
          {"depth", c.depth},
          {"width", c.width},
          {"learning_rate", c.learning_rate},
          {"batch_size", c.batch_size},
          {"train_steps", c.train_steps},
          {"seed", c.seed},
          {"log_every", c.log_every}};
}

json mnd_config_json(const MndConfig& c) {
  json j = {{"n_gamma", c.n_gamma},     {"n_sector", c.n_sector},
            {"depth", c.depth},         {"hidden", c.hidden},
            {"learning_rate", c.learning_rate},
            {"batch_size", c.batch_size}, {"train_steps", c.train_steps},
            {"seed", c.seed},           {"log_every", c.log_every}};
  return j;
}

template <class Scalar>
void save_impl(const char* kind, const json& config_json,
               std::uint64_t fingerprint, const DenseNet<Scalar>& net,
               const std::filesystem::path& path) {
  json header = {{"version", kVersion},
                 {"kind", kind},
                 {"precision", dtype_name<Scalar>()},
                 {"fingerprint", fingerprint},
                 {"config", config_json},
                 {"tensors", net_manifest(net)}};
  write_file(path, header, [&net](std::ofstream& out) { write_blobs(out, net); });
}

struct RawFile {
  json header;
  std::string blobs;
};

RawFile read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint: " + path.string());
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
    throw CheckpointError("bad checkpoint magic in " + path.string());
  std::uint64_t len = 0;
  if (!in.read(reinterpret_cast<char*>(&len), 8) || len > (1ull << 30))
    throw CheckpointError("bad header length in " + path.string());
  std::string hbuf(len, '\0');
  if (!in.read(hbuf.data(), static_cast<std::streamsize>(len)))
    throw CheckpointError("truncated header in " + path.string());
  RawFile raw;
  try {
    raw.header = json::parse(hbuf);
  } catch (const json::exception& e) {
    throw CheckpointError("corrupt header JSON: " + std::string(e.what()));
  }
  std::ostringstream rest;
  rest << in.rdbuf();
  raw.blobs = rest.str();
  return raw;
}

template <class Scalar>
void read_blobs(const RawFile& raw, DenseNet<Scalar>& net) {
  std::size_t offset = 0;
  std::size_t tensor_idx = 0;
  const auto& manifest = raw.header.at("tensors");
  auto take = [&](auto& dst) {
    const auto& entry = manifest.at(tensor_idx++);
    const auto rows = entry.at("rows").get<Eigen::Index>();
    const auto cols = entry.at("cols").get<Eigen::Index>();
    if (entry.at("dtype").get<std::string>() != dtype_name<Scalar>())
      throw CheckpointError("tensor dtype mismatch");
    dst.resize(rows, cols);
    const std::size_t bytes =
        static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) *
        sizeof(Scalar);
    if (offset + bytes > raw.blobs.size())
      throw CheckpointError("truncated tensor data");
    std::memcpy(dst.data(), raw.blobs.data() + offset, bytes);
    offset += bytes;
  };
  const std::size_t layers = manifest.size() / 2;
  net.w.resize(layers);
  net.b.resize(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    take(net.w[l]);
    NnMatrix<Scalar> bcol;
    take(bcol);
    if (bcol.cols() != 1) throw CheckpointError("bias tensor not a column");
    net.b[l] = bcol.col(0);
  }
  if (offset != raw.blobs.size())
    throw CheckpointError("trailing bytes after tensor data");
}

MadeConfig made_config_from_json(const json& j, Precision prec) {
  MadeConfig c;
  c.n_gamma = j.at("n_gamma").get<std::size_t>();
  c.n_sector = j.at("n_sector").get<std::size_t>();
  c.depth = j.at("depth").get<std::size_t>();
  c.width = j.at("width").get<std::size_t>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.train_steps = j.at("train_steps").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.log_every = j.at("log_every").get<std::size_t>();
  c.precision = prec;
  return c;
}

MndConfig mnd_config_from_json(const json& j, Precision prec) {
  MndConfig c;
  c.n_gamma = j.at("n_gamma").get<std::size_t>();
  c.n_sector = j.at("n_sector").get<std::size_t>();
  c.depth = j.at("depth").get<std::size_t>();
  c.hidden = j.at("hidden").get<std::size_t>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.train_steps = j.at("train_steps").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.log_every = j.at("log_every").get<std::size_t>();
  c.precision = prec;
  return c;
}

template <class Scalar>
MadeNet<Scalar> load_made(const RawFile& raw, Precision prec) {
  MadeNet<Scalar> net;
  net.config = made_config_from_json(raw.header.at("config"), prec);
  net.fingerprint = raw.header.at("fingerprint").get<std::uint64_t>();
  read_blobs(raw, net.net);
  // Rebuild masks from the config; they are a pure function of it.
  MadeMasks masks = build_masks(net.config);
  for (const auto& m : masks.masks) {
    NnMatrix<Scalar> sm(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        sm(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            m.get(r, c) ? Scalar(1) : Scalar(0);
    net.net.mask.push_back(std::move(sm));
  }
  for (std::size_t l = 0; l < net.net.w.size(); ++l)
    if (net.net.w[l].rows() != net.net.mask[l].rows() ||
        net.net.w[l].cols() != net.net.mask[l].cols())
      throw CheckpointError("tensor shapes do not match the config");
  return net;
}

template <class Scalar>
MndNet<Scalar> load_mnd(const RawFile& raw, Precision prec) {
  MndNet<Scalar> net;
  net.config = mnd_config_from_json(raw.header.at("config"), prec);
  net.fingerprint = raw.header.at("fingerprint").get<std::uint64_t>();
  read_blobs(raw, net.net);
  return net;
}

}  // namespace

void save_checkpoint(const MadeNet<double>& net,
                     const std::filesystem::path& path) {
  save_impl("made", made_config_json(net.config), net.fingerprint, net.net,
            path);
}
void save_checkpoint(const MadeNet<float>& net,
                     const std::filesystem::path& path) {
  save_impl("made", made_config_json(net.config), net.fingerprint, net.net,
            path);
}
void save_checkpoint(const MndNet<double>& net,
                     const std::filesystem::path& path) {
  save_impl("mnd", mnd_config_json(net.config), net.fingerprint, net.net, path);
}
void save_checkpoint(const MndNet<float>& net,
                     const std::filesystem::path& path) {
  save_impl("mnd", mnd_config_json(net.config), net.fingerprint, net.net, path);
}

AnyNet load_checkpoint(const std::filesystem::path& path,
                       std::uint64_t expected_fingerprint) {
  RawFile raw = read_file(path);
  try {
    if (raw.header.at("version").get<int>() != kVersion)
      throw CheckpointError("unsupported checkpoint version");
    const std::string kind = raw.header.at("kind").get<std::string>();
    const std::string prec_s = raw.header.at("precision").get<std::string>();
    if (prec_s != "f64" && prec_s != "f32")
      throw CheckpointError("unknown precision '" + prec_s + "'");
    const Precision prec =
        prec_s == "f64" ? Precision::Double : Precision::Single;
    const auto fp = raw.header.at("fingerprint").get<std::uint64_t>();
    if (expected_fingerprint != 0 && fp != expected_fingerprint)
      throw CheckpointError(
          "checkpoint fingerprint does not match the target code/DEM "
          "(trained on something else?)");
    if (kind == "made")
      return prec == Precision::Double ? AnyNet(load_made<double>(raw, prec))
                                       : AnyNet(load_made<float>(raw, prec));
    if (kind == "mnd")
      return prec == Precision::Double ? AnyNet(load_mnd<double>(raw, prec))
                                       : AnyNet(load_mnd<float>(raw, prec));
    throw CheckpointError("unknown checkpoint kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw CheckpointError("malformed checkpoint header: " +
                          std::string(e.what()));
  }
}

CheckpointSummary checkpoint_summary(const std::filesystem::path& path) {
  AnyNet net = load_checkpoint(path);
  CheckpointSummary s;
  std::visit(
      [&s](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        s.fingerprint = n.fingerprint;
        s.precision = n.config.precision;
        s.depth = n.config.depth;
        if constexpr (std::is_same_v<T, MadeNet<double>> ||
                      std::is_same_v<T, MadeNet<float>>) {
          s.kind = "made";
          s.n_gamma = n.config.n_gamma;
          s.n_sector = n.config.n_sector;
          s.parameters = n.net.parameter_count(false);
        } else {
          s.kind = "mnd";
          s.n_gamma = n.config.n_gamma;
          s.n_sector = n.config.n_sector;
          s.parameters = n.net.parameter_count(true);
        }
      },
      net);
  return s;
}

}  // namespace gnd
