#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace std::string_literals;

namespace {

namespace fs = std::filesystem;

const std::string kCli = GND_CLI_PATH;
const fs::path kData = GND_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in.good()) return {};
  return std::string(std::istreambuf_iterator<char>(in), {});
}

RunResult run(const std::string& args) {
  static int call_id = 0;
  const fs::path out = fs::temp_directory_path() /
                       ("gnd_cli_out_" + std::to_string(call_id));
  const fs::path err = fs::temp_directory_path() /
                       ("gnd_cli_err_" + std::to_string(call_id));
  ++call_id;
  const std::string cmd =
      kCli + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = slurp(out);
  res.err = slurp(err);
  fs::remove(out);
  fs::remove(err);
  return res;
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "gnd_cli_work";
  fs::create_directories(dir);
  return dir;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("code gen, info and validate round trip") {
  const fs::path file = temp_dir() / "rsc5.qcode";
  RunResult gen =
      run("code gen rotated-surface --d 5 -o " + file.string());
  REQUIRE(gen.exit_code == 0);
  CHECK(contains(gen.err, "[[25, 1, 5]]"));
  REQUIRE(fs::exists(file));

  RunResult info = run("code info " + file.string());
  CHECK(info.exit_code == 0);
  CHECK(contains(info.out, "n: 25"));
  CHECK(contains(info.out, "k: 1"));
  CHECK(contains(info.out, "d: 5"));
  CHECK(contains(info.out, "generators: 24"));
  CHECK(contains(info.out, "css: yes"));
  CHECK(contains(info.out, "fingerprint: "));

  RunResult ok = run("code validate " + file.string());
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.out, "ok"));

  // corrupt one generator row: flip a bit to break commutation
  std::string text = slurp(file);
  const auto s_pos = text.find("\nS\n");
  REQUIRE(s_pos != std::string::npos);
  auto bit_pos = text.find_first_of("01", s_pos + 3);
  text[bit_pos] = text[bit_pos] == '0' ? '1' : '0';
  const fs::path bad = temp_dir() / "bad.qcode";
  std::ofstream(bad) << text;
  RunResult broken = run("code validate " + bad.string());
  CHECK(broken.exit_code != 0);

  fs::remove(file);
  fs::remove(bad);
}

TEST_CASE("code gen rejects even distances with a usage error") {
  RunResult res = run("code gen rotated-surface --d 4");
  CHECK(res.exit_code == 2);
  CHECK(!res.err.empty());
}

TEST_CASE("code distance finds the surface code distance") {
  const fs::path file = (kData / "codes/rsc3.qcode");
  RunResult res = run("code distance " + file.string() + " --max-weight 3");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "distance: 3"));

  RunResult capped = run("code distance " + file.string() + " --max-weight 2");
  CHECK(capped.exit_code == 0);
  CHECK(contains(capped.out, "distance: > 2"));
}

TEST_CASE("dem check reports counts") {
  RunResult res =
      run("dem check " + (kData / "dem/repetition_rounds.dem").string());
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "mechanisms: 18"));
  CHECK(contains(res.out, "detectors: 9"));
  CHECK(contains(res.out, "observables: 1"));
  CHECK(contains(res.out, "ok"));
}

TEST_CASE("sample emits reproducible bit rows") {
  const std::string cmd = "sample --code " +
                          (kData / "codes/rsc3.qcode").string() +
                          " --noise depolarizing --p 0.1 --shots 5 --seed 9";
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "# seed 9"));
  CHECK(contains(a.out, "# columns: gamma beta"));
  // five rows of "8 bits, space, 2 bits"
  std::size_t rows = 0;
  std::istringstream lines(a.out);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    REQUIRE(line.size() == 11);
    CHECK(line[8] == ' ');
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("train, decode and checkpoint inspection work end to end") {
  const fs::path dir = temp_dir();
  const fs::path ckpt = dir / "toy.gnd";
  const fs::path curve = dir / "toy_curve.csv";
  RunResult tr = run("train --code " + (kData / "codes/rsc3.qcode").string() +
                     " --noise depolarizing --p 0.15 --arch made" +
                     " --depth 1 --width 2 --steps 40 --batch 16" +
                     " --seed 4 -o " + ckpt.string() + " --curve " +
                     curve.string());
  REQUIRE(tr.exit_code == 0);
  CHECK(fs::exists(ckpt));
  CHECK(fs::exists(curve));
  CHECK(contains(tr.out, "final loss"));
  CHECK(contains(slurp(curve), "step,loss"));

  RunResult info = run("decode --ckpt " + ckpt.string() + " --info");
  CHECK(info.exit_code == 0);
  CHECK(contains(info.out, "kind: made"));
  CHECK(contains(info.out, "syndrome bits: 8"));
  CHECK(contains(info.out, "sector bits: 2"));

  // all-zero syndrome, hex encoded (8 bits -> 2 hex digits)
  RunResult dec = run("decode --ckpt " + ckpt.string() +
                      " --code " + (kData / "codes/rsc3.qcode").string() +
                      " --syndrome 00");
  REQUIRE(dec.exit_code == 0);
  CHECK(contains(dec.out, "syndrome 00000000 beta "));
  CHECK(contains(dec.out, "conditionals "));

  // wrong code for this checkpoint: fingerprint guard fires
  RunResult wrong = run("decode --ckpt " + ckpt.string() + " --code " +
                        (kData / "codes/bb18_4_4.qcode").string() +
                        " --syndrome 00");
  CHECK(wrong.exit_code == 1);
  CHECK(contains(wrong.err, "fingerprint"));

  // same seed trains to a byte-identical checkpoint
  const fs::path ckpt2 = dir / "toy2.gnd";
  RunResult tr2 = run("train --code " + (kData / "codes/rsc3.qcode").string() +
                      " --noise depolarizing --p 0.15 --arch made" +
                      " --depth 1 --width 2 --steps 40 --batch 16" +
                      " --seed 4 -o " + ckpt2.string());
  REQUIRE(tr2.exit_code == 0);
  CHECK(slurp(ckpt2) == slurp(ckpt));

  fs::remove_all(dir);
}

TEST_CASE("train with zero steps saves the fresh initialization") {
  const fs::path dir = temp_dir();
  const fs::path ckpt = dir / "fresh.gnd";
  RunResult tr = run("train --code " + (kData / "codes/rsc3.qcode").string() +
                     " --noise depolarizing --p 0.1 --arch mnd" +
                     " --steps 0 --seed 1 -o " + ckpt.string());
  REQUIRE(tr.exit_code == 0);
  RunResult info = run("decode --ckpt " + ckpt.string() + " --info");
  CHECK(contains(info.out, "kind: mnd"));
  fs::remove_all(dir);
}

TEST_CASE("decode rejects malformed hex syndromes") {
  const fs::path dir = temp_dir();
  const fs::path ckpt = dir / "hex.gnd";
  RunResult tr = run("train --code " + (kData / "codes/rsc3.qcode").string() +
                     " --noise depolarizing --p 0.1 --arch made --width 1" +
                     " --steps 0 --seed 1 -o " + ckpt.string());
  REQUIRE(tr.exit_code == 0);
  // 8 syndrome bits need exactly 2 hex digits
  CHECK(run("decode --ckpt " + ckpt.string() + " --syndrome 0").exit_code == 2);
  CHECK(run("decode --ckpt " + ckpt.string() + " --syndrome 000").exit_code ==
        2);
  CHECK(run("decode --ckpt " + ckpt.string() + " --syndrome zz").exit_code ==
        2);
  CHECK(run("decode --ckpt " + ckpt.string() + " --syndrome ff").exit_code ==
        0);
  fs::remove_all(dir);
}

TEST_CASE("bench runs a sweep and plot renders its csv") {
  const fs::path dir = temp_dir();
  const fs::path out = dir / "sweep";
  fs::remove_all(out);
  const fs::path config = dir / "run_config.json";
  std::ofstream(config) << R"({
    "code": ")" << (kData / "codes/rsc3.qcode").string() << R"(",
    "noise": "depolarizing",
    "physical_ps": [0.05, 0.1],
    "decoders": [{"kind": "mld", "label": "mld"}],
    "shots": 200
  })";

  RunResult bench = run("bench --config " + config.string() + " --seed 3" +
                        " --out " + out.string());
  REQUIRE(bench.exit_code == 0);
  CHECK(contains(bench.out, "seed 3"));
  CHECK(contains(bench.out, "mld"));
  CHECK(fs::exists(out / "result.csv"));
  CHECK(fs::exists(out / "plot.svg"));

  // rerun resumes from the row files and reports the same table
  RunResult again = run("bench --config " + config.string() + " --out " +
                        out.string());
  CHECK(again.exit_code == 0);
  CHECK(contains(again.out, "seed 3"));  // seed recovered from run.json

  const fs::path svg = dir / "replot.svg";
  RunResult plot = run("plot --in " + (out / "result.csv").string() + " -o " +
                       svg.string() + " --title probe");
  CHECK(plot.exit_code == 0);
  CHECK(contains(slurp(svg), "probe"));

  // empty csv: not plottable
  const fs::path empty = dir / "empty.csv";
  std::ofstream(empty) << "decoder,code,physical_p,shots,failures,ler,ci_lo,"
                          "ci_hi,seconds_per_shot\n";
  CHECK(run("plot --in " + empty.string() + " -o " + svg.string())
            .exit_code == 1);

  fs::remove_all(dir);
}

TEST_CASE("unknown subcommands and missing files fail cleanly") {
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("code info /nonexistent/nowhere.qcode").exit_code == 1);
  CHECK(run("decode --ckpt /nonexistent.gnd --info").exit_code == 1);
}
