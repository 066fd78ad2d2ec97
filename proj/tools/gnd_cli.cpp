// Command-line front end: code generation and inspection, detector-model
// checks, sampling, training, decoding, benchmarking, plotting.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gnd/bench.hpp"
#include "gnd/checkpoint.hpp"
#include "gnd/codes.hpp"
#include "gnd/decoder_bposd.hpp"
#include "gnd/decoder_gnd.hpp"
#include "gnd/decoder_mld.hpp"
#include "gnd/decoder_mnd.hpp"
#include "gnd/dem.hpp"
#include "gnd/error.hpp"

namespace {

using namespace gnd;

// Thrown for bad parameter values that CLI11's own checks cannot express;
// mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

// Term lists like "x3,y1,y2" (x^3 + y + y^2). Each term is a product of
// x<exp> and y<exp> factors; "1" is the identity term.
std::vector<BbTerm> parse_bb_terms(const std::string& text) {
  std::vector<BbTerm> terms;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (piece.empty()) throw UsageError("empty term in \"" + text + "\"");
    BbTerm term;
    if (piece == "1") {
      terms.push_back(term);
      continue;
    }
    std::size_t i = 0;
    while (i < piece.size()) {
      const char var = piece[i];
      if (var != 'x' && var != 'y')
        throw UsageError("bad term \"" + piece + "\": expected x or y");
      ++i;
      std::size_t exp = 1;
      if (i < piece.size() && std::isdigit(static_cast<unsigned char>(piece[i]))) {
        std::size_t len = 0;
        exp = std::stoul(piece.substr(i), &len);
        i += len;
      }
      if (var == 'x')
        term.x_exp += exp;
      else
        term.y_exp += exp;
    }
    terms.push_back(term);
  }
  if (terms.empty()) throw UsageError("empty term list");
  return terms;
}

// Hex syndromes use little-endian bit order: hex digit j carries syndrome
// bits 4j..4j+3, least significant bit first. "1" sets bit 0; "8" sets
// bit 3.
BinaryVector parse_hex_bits(std::string hex, std::size_t nbits) {
  if (hex.rfind("0x", 0) == 0 || hex.rfind("0X", 0) == 0) hex = hex.substr(2);
  const std::size_t need = (nbits + 3) / 4;
  if (hex.size() != need)
    throw UsageError("syndrome \"" + hex + "\" has " +
                     std::to_string(hex.size()) + " hex digits; " +
                     std::to_string(nbits) + " bits need exactly " +
                     std::to_string(need));
  BinaryVector v(nbits);
  for (std::size_t j = 0; j < hex.size(); ++j) {
    const char c = hex[j];
    int d;
    if (c >= '0' && c <= '9')
      d = c - '0';
    else if (c >= 'a' && c <= 'f')
      d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      d = c - 'A' + 10;
    else
      throw UsageError(std::string("bad hex digit '") + c + "'");
    for (int t = 0; t < 4; ++t) {
      const std::size_t bit = 4 * j + t;
      const bool on = (d >> t) & 1;
      if (bit < nbits)
        v.set(bit, on);
      else if (on)
        throw UsageError("syndrome sets bit " + std::to_string(bit) +
                         " beyond the " + std::to_string(nbits) +
                         "-bit syndrome");
    }
  }
  return v;
}

NoiseModel make_noise(const std::string& kind, double p) {
  NoiseModel model = kind == "independent_xz"
                         ? NoiseModel(IndependentXZModel{p})
                         : NoiseModel(DepolarizingModel{p});
  if (kind != "depolarizing" && kind != "independent_xz")
    throw UsageError("unknown noise model \"" + kind + "\"");
  validate_model(model);
  return model;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// --- code ------------------------------------------------------------------

struct CodeGenArgs {
  std::string family;
  std::size_t d = 3;
  std::size_t l = 0, m = 0;
  std::string a_terms, b_terms;
  std::string out;
};

int run_code_gen(const CodeGenArgs& a) {
  StabilizerCode code;
  if (a.family == "rotated-surface") {
    if (a.d < 3 || a.d % 2 == 0)
      throw UsageError("rotated-surface needs odd --d >= 3");
    code = rotated_surface_code(a.d);
  } else if (a.family == "bb") {
    if (a.l == 0 || a.m == 0) throw UsageError("bb needs --l and --m");
    if (a.a_terms.empty() || a.b_terms.empty())
      throw UsageError("bb needs --a and --b term lists");
    code = bb_code(a.l, a.m, parse_bb_terms(a.a_terms),
                   parse_bb_terms(a.b_terms));
  } else {
    throw UsageError("unknown family \"" + a.family +
                     "\" (rotated-surface, bb)");
  }
  const std::string text = serialize_code(code);
  if (a.out.empty())
    std::cout << text;
  else
    write_text_file(a.out, text);
  std::cerr << code.name << ": [[" << code.n << ", " << code.k << ", "
            << (code.claimed_distance ? std::to_string(*code.claimed_distance)
                                      : "?")
            << "]]\n";
  return 0;
}

int run_code_info(const std::string& path) {
  StabilizerCode code = load_code_file(path);
  std::cout << "name: " << code.name << "\n";
  std::cout << "n: " << code.n << "\nk: " << code.k << "\n";
  if (code.claimed_distance)
    std::cout << "d: " << *code.claimed_distance << "\n";
  std::cout << "generators: " << code.num_checks() << "\n";
  std::cout << "css: " << (is_css(code) ? "yes" : "no") << "\n";
  std::cout << "fingerprint: " << code_fingerprint(code) << "\n";
  return 0;
}

int run_code_validate(const std::string& path) {
  StabilizerCode code = load_code_file(path);
  ValidationReport rep = validate_code(code);
  if (rep.ok()) {
    std::cout << "ok: [[" << code.n << ", " << code.k << "]] with "
              << code.num_checks() << " generators\n";
    return 0;
  }
  for (const std::string& v : rep.violations)
    std::cout << "violation: " << v << "\n";
  return 1;
}

int run_code_distance(const std::string& path, std::size_t max_weight,
                      const std::string& sector) {
  StabilizerCode code = load_code_file(path);
  PauliFilter filter = PauliFilter::Any;
  if (sector == "x")
    filter = PauliFilter::XOnly;
  else if (sector == "z")
    filter = PauliFilter::ZOnly;
  else if (sector != "any")
    throw UsageError("--sector must be any, x, or z");
  std::optional<std::size_t> d = brute_distance(code, max_weight, filter);
  if (d)
    std::cout << "distance: " << *d << "\n";
  else
    std::cout << "distance: > " << max_weight << "\n";
  return 0;
}

// --- dem ---------------------------------------------------------------

int run_dem_check(const std::string& path) {
  DemParseResult parsed = parse_dem_verbose(read_text_file(path));
  const DetectorErrorModel& dem = parsed.model;
  for (const std::string& w : parsed.warnings)
    std::cout << "warning: " << w << "\n";
  std::cout << "mechanisms: " << dem.mechanisms.size() << "\n";
  std::cout << "detectors: " << dem.num_detectors << "\n";
  std::cout << "observables: " << dem.num_observables << "\n";
  if (!dem.mechanisms.empty()) {
    double pmin = 1.0, pmax = 0.0;
    for (const ErrorMechanism& mech : dem.mechanisms) {
      pmin = std::min(pmin, mech.probability);
      pmax = std::max(pmax, mech.probability);
    }
    std::cout << "p range: [" << format_double(pmin) << ", "
              << format_double(pmax) << "]\n";
  }
  std::vector<double> marg = dem_detector_marginals(dem);
  double mean = 0;
  for (double v : marg) mean += v;
  if (!marg.empty()) mean /= static_cast<double>(marg.size());
  std::cout << "mean detector marginal: " << format_double(mean) << "\n";
  std::cout << "fingerprint: " << dem_fingerprint(dem) << "\n";
  std::cout << "ok\n";
  return 0;
}

// --- sample ---------------------------------------------------------------

struct SampleArgs {
  std::string code_path, dem_path;
  std::string noise = "depolarizing";
  double p = 0.1;
  std::size_t shots = 10;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

int run_sample(const SampleArgs& a) {
  const std::uint64_t seed = a.seed_given ? a.seed : fresh_seed();
  std::cout << "# seed " << seed << "\n";
  std::cout << "# columns: gamma beta\n";
  CounterRng rng(seed, 0);
  if (!a.dem_path.empty()) {
    DetectorErrorModel dem = load_dem_file(a.dem_path);
    for (std::size_t s = 0; s < a.shots; ++s) {
      LabeledSample ls = sample_dem(dem, rng);
      std::cout << ls.gamma.to_string() << " " << ls.beta.to_string() << "\n";
    }
    return 0;
  }
  if (a.code_path.empty()) throw UsageError("sample needs --code or --dem");
  StabilizerCode code = load_code_file(a.code_path);
  ElsFrame frame = build_els_frame(code);
  NoiseModel model = make_noise(a.noise, a.p);
  for (std::size_t s = 0; s < a.shots; ++s) {
    LabeledSample ls = sample_code_capacity(frame, model, rng);
    std::cout << ls.gamma.to_string() << " " << ls.beta.to_string() << "\n";
  }
  return 0;
}

// --- train -----------------------------------------------------------------

struct TrainArgs {
  std::string code_path, dem_path;
  std::string noise = "depolarizing";
  double p = 0.1;
  std::string arch = "made";
  std::size_t depth = 2;
  std::size_t width = 8;    // made: hidden units per input bit
  std::size_t hidden = 0;   // mnd: explicit hidden width (0 = match made)
  std::size_t steps = 20000;
  std::size_t batch = 512;
  double lr = 1e-3;
  std::size_t log_every = 50;
  std::string precision = "f64";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  std::string curve;
};

void write_curve_csv(const std::string& path,
                     const std::vector<TrainLogEntry>& curve) {
  std::string text = "step,loss\n";
  char buf[64];
  for (const TrainLogEntry& e : curve) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", e.step, e.loss);
    text += buf;
  }
  write_text_file(path, text);
}

int run_train(const TrainArgs& a) {
  if (a.code_path.empty() == a.dem_path.empty())
    throw UsageError("train needs exactly one of --code or --dem");
  if (a.arch != "made" && a.arch != "mnd")
    throw UsageError("--arch must be made or mnd");
  if (a.precision != "f64" && a.precision != "f32")
    throw UsageError("--precision must be f64 or f32");
  if (a.out.empty()) throw UsageError("train needs -o <checkpoint>");

  const std::uint64_t seed = a.seed_given ? a.seed : fresh_seed();
  std::cout << "seed " << seed << "\n";

  std::size_t n_gamma = 0, n_sector = 0;
  std::uint64_t fingerprint = 0;
  SampleStream stream;
  auto sample_rng = std::make_shared<CounterRng>(seed, 1);
  std::optional<ElsFrame> frame;
  std::optional<DetectorErrorModel> dem;
  if (!a.code_path.empty()) {
    StabilizerCode code = load_code_file(a.code_path);
    frame = build_els_frame(code);
    NoiseModel model = make_noise(a.noise, a.p);
    n_gamma = frame->m();
    n_sector = 2 * frame->k();
    fingerprint = code_fingerprint(code);
    stream = [frame_ptr = &*frame, model, sample_rng]() {
      return sample_code_capacity(*frame_ptr, model, *sample_rng);
    };
    std::cout << "training on " << code.name << " [[" << code.n << ", "
              << code.k << "]], " << a.noise << " p=" << format_double(a.p)
              << "\n";
  } else {
    dem = load_dem_file(a.dem_path);
    n_gamma = dem->num_detectors;
    n_sector = dem->num_observables;
    fingerprint = dem_fingerprint(*dem);
    stream = [dem_ptr = &*dem, sample_rng]() {
      return sample_dem(*dem_ptr, *sample_rng);
    };
    std::cout << "training on detector model (" << n_gamma << " detectors, "
              << n_sector << " observables)\n";
  }
  if (n_sector == 0)
    throw std::runtime_error("nothing to decode: the model has no sector bits");

  const Precision prec =
      a.precision == "f32" ? Precision::Single : Precision::Double;
  const std::string curve_path = a.curve.empty() ? a.out + ".loss.csv"
                                                 : a.curve;
  auto progress = [](const TrainLogEntry& e) {
    std::cerr << "step " << e.step << " loss " << format_double(e.loss)
              << "\n";
  };

  std::vector<TrainLogEntry> curve;
  if (a.arch == "made") {
    MadeConfig cfg;
    cfg.n_gamma = n_gamma;
    cfg.n_sector = n_sector;
    cfg.depth = a.depth;
    cfg.width = a.width;
    cfg.learning_rate = a.lr;
    cfg.batch_size = a.batch;
    cfg.train_steps = a.steps;
    cfg.seed = seed;
    cfg.precision = prec;
    cfg.log_every = a.log_every;
    cfg.validate();
    if (prec == Precision::Double) {
      TrainedMade<double> t =
          train_made<double>(cfg, fingerprint, stream, progress);
      save_checkpoint(t.net, a.out);
      curve = std::move(t.curve);
    } else {
      TrainedMade<float> t =
          train_made<float>(cfg, fingerprint, stream, progress);
      save_checkpoint(t.net, a.out);
      curve = std::move(t.curve);
    }
  } else {
    MndConfig cfg;
    cfg.n_gamma = n_gamma;
    cfg.n_sector = n_sector;
    cfg.depth = a.depth;
    cfg.hidden = a.hidden ? a.hidden : a.width * (n_gamma + n_sector);
    cfg.learning_rate = a.lr;
    cfg.batch_size = a.batch;
    cfg.train_steps = a.steps;
    cfg.seed = seed;
    cfg.precision = prec;
    cfg.log_every = a.log_every;
    cfg.validate();
    if (prec == Precision::Double) {
      TrainedMnd<double> t =
          train_mnd<double>(cfg, fingerprint, stream, progress);
      save_checkpoint(t.net, a.out);
      curve = std::move(t.curve);
    } else {
      TrainedMnd<float> t =
          train_mnd<float>(cfg, fingerprint, stream, progress);
      save_checkpoint(t.net, a.out);
      curve = std::move(t.curve);
    }
  }
  write_curve_csv(curve_path, curve);
  CheckpointSummary sum = checkpoint_summary(a.out);
  std::cout << "wrote " << a.out << " (" << sum.kind << ", "
            << sum.parameters << " parameters)\n";
  std::cout << "wrote " << curve_path << "\n";
  if (!curve.empty()) {
    const double uniform = (a.arch == "made" ? n_gamma + n_sector : n_sector) *
                           std::log(2.0);
    std::cout << "final loss " << format_double(curve.back().loss)
              << " (smoothed " << format_double(smoothed_loss(curve))
              << ", uniform baseline " << format_double(uniform) << ")\n";
  }
  return 0;
}

// --- decode ----------------------------------------------------------------

struct DecodeArgs {
  std::string ckpt;
  std::string code_path, dem_path;
  std::vector<std::string> syndromes;  // hex
  std::string syndrome_file;           // newline-delimited bit strings
  bool info = false;
};

int run_decode(const DecodeArgs& a) {
  if (a.info) {
    CheckpointSummary sum = checkpoint_summary(a.ckpt);
    std::cout << "kind: " << sum.kind << "\n";
    std::cout << "precision: "
              << (sum.precision == Precision::Double ? "f64" : "f32") << "\n";
    std::cout << "syndrome bits: " << sum.n_gamma << "\n";
    std::cout << "sector bits: " << sum.n_sector << "\n";
    std::cout << "depth: " << sum.depth << "\n";
    std::cout << "parameters: " << sum.parameters << "\n";
    std::cout << "fingerprint: " << sum.fingerprint << "\n";
    return 0;
  }

  std::uint64_t expected_fp = 0;
  if (!a.code_path.empty())
    expected_fp = code_fingerprint(load_code_file(a.code_path));
  else if (!a.dem_path.empty())
    expected_fp = dem_fingerprint(load_dem_file(a.dem_path));

  AnyNet net = load_checkpoint(a.ckpt, expected_fp);
  std::unique_ptr<Decoder> decoder = std::visit(
      [&](auto&& n) -> std::unique_ptr<Decoder> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MadeNet<double>>)
          return std::make_unique<GndDecoder<double>>(std::move(n),
                                                      expected_fp);
        else if constexpr (std::is_same_v<T, MadeNet<float>>)
          return std::make_unique<GndDecoder<float>>(std::move(n),
                                                     expected_fp);
        else if constexpr (std::is_same_v<T, MndNet<double>>)
          return std::make_unique<MndDecoder<double>>(std::move(n),
                                                      expected_fp);
        else
          return std::make_unique<MndDecoder<float>>(std::move(n),
                                                     expected_fp);
      },
      std::move(net));

  std::vector<BinaryVector> gammas;
  for (const std::string& hex : a.syndromes)
    gammas.push_back(parse_hex_bits(hex, decoder->syndrome_bits()));
  if (!a.syndrome_file.empty()) {
    std::istringstream in(read_text_file(a.syndrome_file));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      BinaryVector v = BinaryVector::from_string(line);
      if (v.size() != decoder->syndrome_bits())
        throw std::runtime_error(a.syndrome_file + ":" +
                                 std::to_string(lineno) + ": expected " +
                                 std::to_string(decoder->syndrome_bits()) +
                                 " bits, got " + std::to_string(v.size()));
      gammas.push_back(std::move(v));
    }
  }
  if (gammas.empty())
    throw UsageError("decode needs --syndrome or --syndrome-file");

  for (const BinaryVector& gamma : gammas) {
    DecodeResult res = decoder->decode(gamma);
    std::cout << "syndrome " << gamma.to_string() << " beta "
              << res.beta_hat.to_string();
    if (!res.conditionals.empty()) {
      std::cout << " conditionals ";
      for (std::size_t i = 0; i < res.conditionals.size(); ++i)
        std::cout << (i ? "," : "") << format_double(res.conditionals[i]);
    }
    std::cout << "\n";
  }
  return 0;
}

// --- bench / plot ------------------------------------------------------

struct BenchArgs {
  std::string config_path;
  std::optional<std::size_t> shots;
  std::optional<std::size_t> threads;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

int run_bench(const BenchArgs& a) {
  const std::string text = read_text_file(a.config_path);
  ExperimentConfig cfg = parse_experiment_config(text);
  const bool config_has_seed = nlohmann::json::parse(text).contains("seed");
  if (a.shots) cfg.shots = *a.shots;
  if (a.threads) cfg.threads = *a.threads;
  if (!a.out_dir.empty()) cfg.out_dir = a.out_dir;
  if (a.seed) {
    cfg.seed = *a.seed;
  } else if (!config_has_seed) {
    // Resuming must keep the original seed; a fresh one would make the
    // already-finished rows incompatible.
    const std::filesystem::path prev =
        std::filesystem::path(cfg.out_dir) / "run.json";
    if (std::filesystem::exists(prev))
      cfg.seed = parse_experiment_config(read_text_file(prev.string())).seed;
    else
      cfg.seed = fresh_seed();
  }
  std::cout << "seed " << cfg.seed << "\n";

  SweepResult res = run_sweep(cfg);
  std::cout << "decoder            p        ler        ci95                 "
               "s/shot\n";
  char buf[256];
  for (const LerPoint& pt : res.points) {
    std::snprintf(buf, sizeof buf,
                  "%-16s %-8.4g %-10.4g [%.4g, %.4g]   %.3g\n",
                  pt.decoder.c_str(), pt.physical_p, pt.ler, pt.ci.lo,
                  pt.ci.hi, pt.seconds_per_shot);
    std::cout << buf;
  }
  std::cout << "wrote " << (std::filesystem::path(cfg.out_dir) / "result.csv")
                   .string()
            << " and plot.svg\n";
  for (const std::string& f : res.failed_points)
    std::cerr << "failed: " << f << "\n";
  return res.failed_points.empty() ? 0 : 1;
}

int run_plot(const std::string& in_path, const std::string& out_path,
             const std::string& title) {
  std::vector<LerPoint> points = parse_csv(read_text_file(in_path));
  if (points.empty())
    throw std::runtime_error(in_path + " has no data rows");
  write_text_file(out_path, emit_plot(points, title));
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generative decoding toolkit for stabilizer codes"};
  app.require_subcommand(1);
  int rc = 0;

  // code
  auto* code = app.add_subcommand("code", "generate and inspect codes");
  code->require_subcommand(1);

  CodeGenArgs gen_args;
  auto* gen = code->add_subcommand("gen", "generate a code family instance");
  gen->add_option("family", gen_args.family,
                  "family: rotated-surface | bb")->required();
  gen->add_option("--d", gen_args.d, "surface-code distance (odd >= 3)");
  gen->add_option("--l", gen_args.l, "bb: first cyclic dimension");
  gen->add_option("--m", gen_args.m, "bb: second cyclic dimension");
  gen->add_option("--a", gen_args.a_terms, "bb: A polynomial, e.g. x3,y1,y2");
  gen->add_option("--b", gen_args.b_terms, "bb: B polynomial, e.g. y3,x1,x2");
  gen->add_option("-o,--out", gen_args.out, "output file (default stdout)");
  gen->callback([&] { rc = run_code_gen(gen_args); });

  std::string info_path;
  auto* info = code->add_subcommand("info", "print code parameters");
  info->add_option("file", info_path, "qcode file")->required();
  info->callback([&] { rc = run_code_info(info_path); });

  std::string validate_path;
  auto* validate = code->add_subcommand("validate", "check code invariants");
  validate->add_option("file", validate_path, "qcode file")->required();
  validate->callback([&] { rc = run_code_validate(validate_path); });

  std::string dist_path, dist_sector = "any";
  std::size_t dist_max_weight = 4;
  auto* dist = code->add_subcommand("distance",
                                    "exhaustive minimum logical weight");
  dist->add_option("file", dist_path, "qcode file")->required();
  dist->add_option("--max-weight", dist_max_weight,
                   "search cutoff (cost grows as (3n)^w)");
  dist->add_option("--sector", dist_sector, "any | x | z");
  dist->callback(
      [&] { rc = run_code_distance(dist_path, dist_max_weight, dist_sector); });

  // dem
  auto* dem = app.add_subcommand("dem", "detector error model utilities");
  dem->require_subcommand(1);
  std::string dem_check_path;
  auto* dem_check = dem->add_subcommand("check", "parse and summarize a .dem");
  dem_check->add_option("file", dem_check_path, ".dem file")->required();
  dem_check->callback([&] { rc = run_dem_check(dem_check_path); });

  // sample
  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample",
                                    "print (syndrome, sector) samples");
  sample->add_option("--code", sample_args.code_path, "qcode file");
  sample->add_option("--dem", sample_args.dem_path, ".dem file");
  sample->add_option("--noise", sample_args.noise,
                     "depolarizing | independent_xz");
  sample->add_option("--p", sample_args.p, "physical error rate");
  sample->add_option("--shots", sample_args.shots, "number of samples");
  auto* sample_seed = sample->add_option("--seed", sample_args.seed,
                                         "RNG seed (generated if omitted)");
  sample->callback([&] {
    sample_args.seed_given = sample_seed->count() > 0;
    rc = run_sample(sample_args);
  });

  // train
  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "train a decoder network");
  train->add_option("--code", train_args.code_path, "qcode file");
  train->add_option("--dem", train_args.dem_path, ".dem file");
  train->add_option("--noise", train_args.noise,
                    "depolarizing | independent_xz");
  train->add_option("--p", train_args.p, "training error rate");
  train->add_option("--arch", train_args.arch,
                    "made (autoregressive) | mnd (marginal baseline)");
  train->add_option("--depth", train_args.depth, "hidden layers");
  train->add_option("--width", train_args.width,
                    "hidden units per input bit (made)");
  train->add_option("--hidden", train_args.hidden,
                    "hidden units per layer (mnd; default width*n_in)");
  train->add_option("--steps", train_args.steps, "training steps");
  train->add_option("--batch", train_args.batch, "minibatch size");
  train->add_option("--lr", train_args.lr, "Adam learning rate");
  train->add_option("--log-every", train_args.log_every,
                    "loss-curve sampling interval");
  train->add_option("--precision", train_args.precision, "f64 | f32");
  auto* train_seed = train->add_option("--seed", train_args.seed,
                                       "RNG seed (generated if omitted)");
  train->add_option("-o,--out", train_args.out, "checkpoint path");
  train->add_option("--curve", train_args.curve,
                    "loss-curve CSV path (default <out>.loss.csv)");
  train->callback([&] {
    train_args.seed_given = train_seed->count() > 0;
    rc = run_train(train_args);
  });

  // decode
  DecodeArgs decode_args;
  auto* decode = app.add_subcommand("decode", "decode syndromes with a "
                                              "trained checkpoint");
  decode->add_option("--ckpt", decode_args.ckpt, "checkpoint file")
      ->required();
  decode->add_option("--code", decode_args.code_path,
                     "qcode file to verify the checkpoint against");
  decode->add_option("--dem", decode_args.dem_path,
                     ".dem file to verify the checkpoint against");
  decode->add_option("--syndrome", decode_args.syndromes,
                     "hex syndrome, little-endian bit order (digit j holds "
                     "bits 4j..4j+3, LSB first); repeatable");
  decode->add_option("--syndrome-file", decode_args.syndrome_file,
                     "file of 0/1 syndrome lines");
  decode->add_flag("--info", decode_args.info,
                   "print checkpoint header and exit");
  decode->callback([&] { rc = run_decode(decode_args); });

  // bench
  BenchArgs bench_args;
  std::size_t bench_shots = 0, bench_threads = 0;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench", "run a logical-error-rate sweep");
  bench->add_option("--config", bench_args.config_path, "run config JSON")
      ->required();
  auto* bs = bench->add_option("--shots", bench_shots, "override shots");
  auto* bt = bench->add_option("--threads", bench_threads,
                               "override worker threads");
  auto* bd = bench->add_option("--seed", bench_seed, "override seed");
  bench->add_option("--out", bench_args.out_dir, "override output directory");
  bench->callback([&] {
    if (bs->count()) bench_args.shots = bench_shots;
    if (bt->count()) bench_args.threads = bench_threads;
    if (bd->count()) bench_args.seed = bench_seed;
    rc = run_bench(bench_args);
  });

  // plot
  std::string plot_in, plot_out = "plot.svg", plot_title;
  auto* plot = app.add_subcommand("plot", "render an LER sweep CSV as SVG");
  plot->add_option("--in", plot_in, "result.csv from bench")->required();
  plot->add_option("-o,--out", plot_out, "output SVG path");
  plot->add_option("--title", plot_title, "plot title");
  plot->callback([&] { rc = run_plot(plot_in, plot_out, plot_title); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
