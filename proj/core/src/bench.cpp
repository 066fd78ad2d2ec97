#include "gnd/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "gnd/checkpoint.hpp"
#include "gnd/codes.hpp"
#include "gnd/decoder_bposd.hpp"
#include "gnd/decoder_gnd.hpp"
#include "gnd/decoder_mld.hpp"
#include "gnd/decoder_mnd.hpp"
#include "gnd/error.hpp"

namespace gnd {

using nlohmann::json;

WilsonInterval wilson_interval(std::size_t failures, std::size_t shots,
                               double z) {
  if (failures > shots)
    throw std::invalid_argument("wilson_interval: failures > shots");
  if (shots == 0) return {0.0, 1.0};
  const double n = static_cast<double>(shots);
  const double phat = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  // At the boundary counts, center and half are equal on paper but can
  // differ by one ulp; pin the exact endpoints.
  const double lo = failures == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = failures == shots ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

SectorSampler code_capacity_sampler(const ElsFrame& frame, NoiseModel model,
                                    std::uint64_t seed) {
  validate_model(model);
  auto shared = std::make_shared<ElsFrame>(frame);
  return [shared, model, seed](std::uint64_t shot) {
    CounterRng rng(seed, shot);
    LabeledSample s = sample_code_capacity(*shared, model, rng);
    return std::make_pair(std::move(s.beta), std::move(s.gamma));
  };
}

LerPoint estimate_ler(const Decoder& decoder, const SectorSampler& sampler,
                      const EstimateOptions& opts) {
  LerPoint pt;
  pt.decoder = decoder.name();
  pt.shots = opts.shots;

  std::mutex cache_mutex;
  std::unordered_map<BinaryVector, BinaryVector, BinaryVectorHash> cache;

  struct Partial {
    std::size_t failures = 0;
    std::uint64_t decode_calls = 0;
    double decode_seconds = 0.0;
  };

  const std::size_t threads =
      std::max<std::size_t>(1, std::min(opts.threads, opts.shots ? opts.shots : 1));
  std::vector<Partial> partials(threads);

  auto worker = [&](std::size_t tid, std::uint64_t begin, std::uint64_t end) {
    Partial& part = partials[tid];
    for (std::uint64_t shot = begin; shot < end; ++shot) {
      auto [beta, gamma] = sampler(shot);
      BinaryVector beta_hat;
      bool hit = false;
      if (opts.cache_syndromes) {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(gamma);
        if (it != cache.end()) {
          beta_hat = it->second;
          hit = true;
        }
      }
      if (!hit) {
        DecodeResult res = decoder.decode(gamma);
        part.decode_seconds += res.seconds;
        ++part.decode_calls;
        beta_hat = std::move(res.beta_hat);
        if (opts.cache_syndromes) {
          std::lock_guard<std::mutex> lock(cache_mutex);
          cache.emplace(std::move(gamma), beta_hat);
        }
      }
      if (beta_hat != beta) ++part.failures;
    }
  };

  if (threads == 1) {
    worker(0, 0, opts.shots);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (opts.shots + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::uint64_t begin = t * chunk;
      const std::uint64_t end =
          std::min<std::uint64_t>(opts.shots, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, t, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  std::uint64_t calls = 0;
  double seconds = 0.0;
  for (const Partial& part : partials) {
    pt.failures += part.failures;
    calls += part.decode_calls;
    seconds += part.decode_seconds;
  }
  pt.ler = opts.shots ? static_cast<double>(pt.failures) / opts.shots : 0.0;
  pt.ci = wilson_interval(pt.failures, opts.shots);
  pt.seconds_per_shot = calls ? seconds / static_cast<double>(calls) : 0.0;
  return pt;
}

// --- config JSON ----------------------------------------------------------

namespace {

DecoderSpec decoder_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::runtime_error("bench config: each decoder needs a \"kind\"");
  DecoderSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  if (spec.kind != "gnd" && spec.kind != "mnd" && spec.kind != "mld" &&
      spec.kind != "bposd")
    throw std::runtime_error("bench config: unknown decoder kind \"" +
                             spec.kind + "\"");
  spec.label = j.value("label", spec.kind);
  spec.checkpoint = j.value("checkpoint", std::string());
  if ((spec.kind == "gnd" || spec.kind == "mnd") && spec.checkpoint.empty())
    throw std::runtime_error("bench config: decoder \"" + spec.label +
                             "\" needs a \"checkpoint\"");
  spec.bp_max_iter = j.value("bp_max_iter", spec.bp_max_iter);
  spec.bp_scale = j.value("bp_scale", spec.bp_scale);
  spec.osd_order = j.value("osd_order", spec.osd_order);
  spec.step_budget = j.value("step_budget", spec.step_budget);
  return spec;
}

json decoder_spec_to_json(const DecoderSpec& spec) {
  json j{{"kind", spec.kind}, {"label", spec.label}};
  if (!spec.checkpoint.empty()) j["checkpoint"] = spec.checkpoint;
  if (spec.kind == "bposd") {
    j["bp_max_iter"] = spec.bp_max_iter;
    j["bp_scale"] = spec.bp_scale;
    j["osd_order"] = spec.osd_order;
  }
  if (spec.kind == "mld") j["step_budget"] = spec.step_budget;
  return j;
}

json point_to_json(const LerPoint& pt) {
  return json{{"decoder", pt.decoder},
              {"code", pt.code},
              {"physical_p", pt.physical_p},
              {"shots", pt.shots},
              {"failures", pt.failures},
              {"ler", pt.ler},
              {"ci_lo", pt.ci.lo},
              {"ci_hi", pt.ci.hi},
              {"seconds_per_shot", pt.seconds_per_shot}};
}

LerPoint point_from_json(const json& j) {
  LerPoint pt;
  pt.decoder = j.at("decoder").get<std::string>();
  pt.code = j.at("code").get<std::string>();
  pt.physical_p = j.at("physical_p").get<double>();
  pt.shots = j.at("shots").get<std::size_t>();
  pt.failures = j.at("failures").get<std::size_t>();
  pt.ler = j.at("ler").get<double>();
  pt.ci.lo = j.at("ci_lo").get<double>();
  pt.ci.hi = j.at("ci_hi").get<double>();
  pt.seconds_per_shot = j.at("seconds_per_shot").get<double>();
  return pt;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("bench config: ") + e.what());
  }
  ExperimentConfig cfg;
  for (const char* key : {"code", "noise", "physical_ps", "decoders"})
    if (!j.contains(key))
      throw std::runtime_error(std::string("bench config: missing \"") + key +
                               "\"");
  cfg.code_file = j.at("code").get<std::string>();
  cfg.noise = j.at("noise").get<std::string>();
  if (cfg.noise != "depolarizing" && cfg.noise != "independent_xz")
    throw std::runtime_error("bench config: unknown noise \"" + cfg.noise +
                             "\"");
  cfg.physical_ps = j.at("physical_ps").get<std::vector<double>>();
  if (cfg.physical_ps.empty())
    throw std::runtime_error("bench config: \"physical_ps\" is empty");
  for (const json& d : j.at("decoders"))
    cfg.decoders.push_back(decoder_spec_from_json(d));
  if (cfg.decoders.empty())
    throw std::runtime_error("bench config: \"decoders\" is empty");
  cfg.shots = j.value("shots", cfg.shots);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.threads = j.value("threads", cfg.threads);
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  return cfg;
}

std::string serialize_experiment_config(const ExperimentConfig& cfg) {
  json j{{"code", cfg.code_file},
         {"noise", cfg.noise},
         {"physical_ps", cfg.physical_ps},
         {"shots", cfg.shots},
         {"seed", cfg.seed},
         {"threads", cfg.threads},
         {"out_dir", cfg.out_dir}};
  j["decoders"] = json::array();
  for (const DecoderSpec& spec : cfg.decoders)
    j["decoders"].push_back(decoder_spec_to_json(spec));
  return j.dump(2) + "\n";
}

// --- sweep ------------------------------------------------------------------

namespace {

std::string sanitize_id(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
            c == '_')
               ? c
               : '_';
  return out;
}

std::string format_p_id(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  std::string s(buf);
  for (char& c : s)
    if (c == '.') c = 'p';
  return s;
}

std::uint64_t row_stream_seed(std::uint64_t base, std::uint64_t code_fp,
                              const std::string& noise, double p) {
  // FNV-1a over everything that identifies the error distribution, so all
  // decoders at one grid point face the identical shot sequence.
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ull;
    }
  };
  mix(&code_fp, sizeof code_fp);
  mix(noise.data(), noise.size());
  std::uint64_t pbits;
  static_assert(sizeof pbits == sizeof p);
  std::memcpy(&pbits, &p, sizeof pbits);
  mix(&pbits, sizeof pbits);
  return base ^ h;
}

std::unique_ptr<Decoder> build_decoder(const DecoderSpec& spec,
                                       const ElsFrame& frame,
                                       const NoiseModel& model,
                                       std::uint64_t code_fp) {
  if (spec.kind == "mld")
    return std::make_unique<ExactMldDecoder>(frame, model, spec.step_budget);
  if (spec.kind == "bposd") {
    BpConfig bp;
    bp.max_iter = static_cast<std::size_t>(spec.bp_max_iter);
    bp.norm_factor = spec.bp_scale;
    return std::make_unique<BposdDecoder>(frame, model, bp,
                                          OsdMode::CombinationSweep,
                                          static_cast<std::size_t>(
                                              spec.osd_order));
  }
  AnyNet net = load_checkpoint(spec.checkpoint, code_fp);
  if (spec.kind == "gnd") {
    if (auto* d = std::get_if<MadeNet<double>>(&net))
      return std::make_unique<GndDecoder<double>>(std::move(*d), code_fp);
    if (auto* f = std::get_if<MadeNet<float>>(&net))
      return std::make_unique<GndDecoder<float>>(std::move(*f), code_fp);
    throw std::runtime_error("decoder \"" + spec.label +
                             "\": checkpoint holds a marginal net, not an "
                             "autoregressive one");
  }
  if (auto* d = std::get_if<MndNet<double>>(&net))
    return std::make_unique<MndDecoder<double>>(std::move(*d), code_fp);
  if (auto* f = std::get_if<MndNet<float>>(&net))
    return std::make_unique<MndDecoder<float>>(std::move(*f), code_fp);
  throw std::runtime_error("decoder \"" + spec.label +
                           "\": checkpoint holds an autoregressive net, not "
                           "a marginal one");
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  StabilizerCode code = load_code_file(cfg.code_file);
  ElsFrame frame = build_els_frame(code);
  const std::uint64_t code_fp = code_fingerprint(code);

  const fs::path out_dir(cfg.out_dir);
  const fs::path rows_dir = out_dir / "rows";
  fs::create_directories(rows_dir);
  {
    std::ofstream run(out_dir / "run.json");
    run << serialize_experiment_config(cfg);
  }

  SweepResult result;
  for (std::size_t di = 0; di < cfg.decoders.size(); ++di) {
    const DecoderSpec& spec = cfg.decoders[di];
    std::unique_ptr<Decoder> decoder;  // built lazily, reused across ps
    for (double p : cfg.physical_ps) {
      const std::string id = "d" + std::to_string(di) + "_" +
                             sanitize_id(spec.label) + "_p" + format_p_id(p);
      const fs::path row_path = rows_dir / (id + ".json");
      if (fs::exists(row_path)) {
        std::ifstream in(row_path);
        std::stringstream buf;
        buf << in.rdbuf();
        result.points.push_back(point_from_json(json::parse(buf.str())));
        continue;
      }
      try {
        NoiseModel model = cfg.noise == "depolarizing"
                               ? NoiseModel(DepolarizingModel{p})
                               : NoiseModel(IndependentXZModel{p});
        // Exact MLD repeats work across ps only through its log table, so
        // rebuilding per point is fine; neural decoders are p-independent
        // and get reused.
        if (!decoder || spec.kind == "mld" || spec.kind == "bposd")
          decoder = build_decoder(spec, frame, model, code_fp);
        EstimateOptions opts;
        opts.shots = cfg.shots;
        opts.threads = cfg.threads;
        opts.cache_syndromes = spec.kind == "mld";
        SectorSampler sampler = code_capacity_sampler(
            frame, model, row_stream_seed(cfg.seed, code_fp, cfg.noise, p));
        LerPoint pt = estimate_ler(*decoder, sampler, opts);
        pt.decoder = spec.label;
        pt.code = code.name;
        pt.physical_p = p;
        std::ofstream out(row_path);
        out << point_to_json(pt).dump(2) << "\n";
        result.points.push_back(std::move(pt));
      } catch (const std::exception& e) {
        result.failed_points.push_back(id + ": " + e.what());
      }
    }
  }

  {
    std::ofstream csv(out_dir / "result.csv");
    csv << emit_csv(result.points);
  }
  {
    std::ofstream js(out_dir / "result.json");
    js << emit_json(result.points);
  }
  if (!result.points.empty()) {
    std::ofstream svg(out_dir / "plot.svg");
    svg << emit_plot(result.points, code.name);
  }
  return result;
}

// --- emitters -----------------------------------------------------------

static const char* kCsvHeader =
    "decoder,code,physical_p,shots,failures,ler,ci_lo,ci_hi,seconds_per_shot";

std::string emit_csv(const std::vector<LerPoint>& points) {
  std::string out = std::string(kCsvHeader) + "\n";
  char buf[512];
  for (const LerPoint& pt : points) {
    std::string decoder = pt.decoder, code = pt.code;
    for (char& c : decoder)
      if (c == ',') c = ';';
    for (char& c : code)
      if (c == ',') c = ';';
    std::snprintf(buf, sizeof buf,
                  "%s,%s,%.17g,%zu,%zu,%.17g,%.17g,%.17g,%.17g\n",
                  decoder.c_str(), code.c_str(), pt.physical_p, pt.shots,
                  pt.failures, pt.ler, pt.ci.lo, pt.ci.hi,
                  pt.seconds_per_shot);
    out += buf;
  }
  return out;
}

std::vector<LerPoint> parse_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<LerPoint> points;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != kCsvHeader)
        throw ParseError(1, "unexpected CSV header: " + line);
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 9)
      throw ParseError(lineno, "expected 9 fields, got " +
                                   std::to_string(fields.size()));
    try {
      LerPoint pt;
      pt.decoder = fields[0];
      pt.code = fields[1];
      pt.physical_p = std::stod(fields[2]);
      pt.shots = std::stoull(fields[3]);
      pt.failures = std::stoull(fields[4]);
      pt.ler = std::stod(fields[5]);
      pt.ci.lo = std::stod(fields[6]);
      pt.ci.hi = std::stod(fields[7]);
      pt.seconds_per_shot = std::stod(fields[8]);
      points.push_back(std::move(pt));
    } catch (const std::exception&) {
      throw ParseError(lineno, "malformed numeric field");
    }
  }
  return points;
}

std::string emit_json(const std::vector<LerPoint>& points) {
  json arr = json::array();
  for (const LerPoint& pt : points) arr.push_back(point_to_json(pt));
  return arr.dump(2) + "\n";
}

std::vector<LerPoint> parse_points_json(const std::string& json_text) {
  json arr = json::parse(json_text);
  std::vector<LerPoint> points;
  for (const json& j : arr) points.push_back(point_from_json(j));
  return points;
}

}  // namespace gnd
