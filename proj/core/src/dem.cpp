#include "gnd/dem.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gnd/error.hpp"

namespace gnd {

namespace {

std::string clean_line(std::string_view raw) {
  std::string s(raw.substr(0, raw.find('#')));
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::uint32_t parse_index(const std::string& tok, std::size_t pos,
                          std::size_t line_no) {
  if (pos >= tok.size())
    throw ParseError(line_no, "missing index in target '" + tok + "'");
  std::uint64_t v = 0;
  for (std::size_t i = pos; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9')
      throw ParseError(line_no, "bad index in target '" + tok + "'");
    v = v * 10 + static_cast<std::uint64_t>(tok[i] - '0');
    if (v > 0xffffffffull) throw ParseError(line_no, "index overflow");
  }
  return static_cast<std::uint32_t>(v);
}

// XOR-cancel duplicates: indices appearing an even number of times vanish.
std::vector<std::uint32_t> canonical_targets(std::vector<std::uint32_t> v,
                                             bool* had_duplicates) {
  std::sort(v.begin(), v.end());
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(v[i]);
    if (j - i > 1) *had_duplicates = true;
    i = j;
  }
  return out;
}

}  // namespace

DemParseResult parse_dem_verbose(std::string_view text) {
  DemParseResult res;
  DetectorErrorModel& dem = res.model;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::uint64_t shift = 0;

  auto bump_detector = [&dem](std::uint32_t idx) {
    if (idx + 1 > dem.num_detectors) dem.num_detectors = idx + 1;
  };
  auto bump_observable = [&dem](std::uint32_t idx) {
    if (idx + 1 > dem.num_observables) dem.num_observables = idx + 1;
  };
  auto shifted = [&shift, &line_no](std::uint32_t idx) {
    const std::uint64_t abs_idx = idx + shift;
    if (abs_idx > 0xffffffffull)
      throw ParseError(line_no, "shifted detector index overflows");
    return static_cast<std::uint32_t>(abs_idx);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = clean_line(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;

    if (head.rfind("error(", 0) == 0) {
      const auto close = head.find(')');
      if (close == std::string::npos || close != head.size() - 1)
        throw ParseError(line_no, "malformed error(p) statement");
      const std::string ptok = head.substr(6, close - 6);
      double p = 0;
      try {
        std::size_t pos = 0;
        p = std::stod(ptok, &pos);
        if (pos != ptok.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad probability '" + ptok + "'");
      }
      if (!(p > 0.0) || !(p < 1.0))
        throw ParseError(line_no,
                         "mechanism probability must lie strictly in (0,1)");
      ErrorMechanism mech;
      mech.probability = p;
      std::string tok;
      bool any_target = false;
      while (ls >> tok) {
        any_target = true;
        if (tok[0] == 'D')
          mech.detectors.push_back(shifted(parse_index(tok, 1, line_no)));
        else if (tok[0] == 'L')
          mech.observables.push_back(parse_index(tok, 1, line_no));
        else
          throw ParseError(line_no, "bad target '" + tok + "'");
      }
      if (!any_target)
        throw ParseError(line_no, "error(p) statement with no targets");
      bool dup_d = false, dup_l = false;
      mech.detectors = canonical_targets(std::move(mech.detectors), &dup_d);
      mech.observables = canonical_targets(std::move(mech.observables), &dup_l);
      if (dup_d || dup_l)
        res.warnings.push_back("line " + std::to_string(line_no) +
                               ": duplicate targets cancelled (XOR)");
      for (std::uint32_t d : mech.detectors) bump_detector(d);
      for (std::uint32_t l : mech.observables) bump_observable(l);
      dem.mechanisms.push_back(std::move(mech));
    } else if (head == "detector") {
      std::string tok;
      if (!(ls >> tok) || tok[0] != 'D')
        throw ParseError(line_no, "detector statement needs a D target");
      bump_detector(shifted(parse_index(tok, 1, line_no)));
      if (ls >> tok) throw ParseError(line_no, "trailing tokens");
    } else if (head == "logical_observable") {
      std::string tok;
      if (!(ls >> tok) || tok[0] != 'L')
        throw ParseError(line_no,
                         "logical_observable statement needs an L target");
      bump_observable(parse_index(tok, 1, line_no));
      if (ls >> tok) throw ParseError(line_no, "trailing tokens");
    } else if (head == "shift_detectors") {
      std::string tok;
      if (!(ls >> tok))
        throw ParseError(line_no, "shift_detectors needs an amount");
      shift += parse_index(tok, 0, line_no);
      if (ls >> tok) throw ParseError(line_no, "trailing tokens");
    } else {
      throw ParseError(line_no, "unknown statement '" + head + "'");
    }
  }
  return res;
}

DetectorErrorModel parse_dem(std::string_view text) {
  return parse_dem_verbose(text).model;
}

std::string serialize_dem(const DetectorErrorModel& dem) {
  std::ostringstream out;
  char buf[64];
  for (const auto& mech : dem.mechanisms) {
    std::snprintf(buf, sizeof buf, "%.17g", mech.probability);
    out << "error(" << buf << ")";
    for (std::uint32_t d : mech.detectors) out << " D" << d;
    for (std::uint32_t l : mech.observables) out << " L" << l;
    out << "\n";
  }
  // Pin the counts in case trailing indices never appear as targets.
  if (dem.num_detectors > 0)
    out << "detector D" << dem.num_detectors - 1 << "\n";
  if (dem.num_observables > 0)
    out << "logical_observable L" << dem.num_observables - 1 << "\n";
  return out.str();
}

DetectorErrorModel load_dem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open DEM file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dem(buf.str());
}

void save_dem_file(const DetectorErrorModel& dem,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write DEM file: " + path.string());
  out << serialize_dem(dem);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

LabeledSample sample_dem(const DetectorErrorModel& dem, CounterRng& rng) {
  LabeledSample s;
  s.beta = BinaryVector(dem.num_observables);
  s.gamma = BinaryVector(dem.num_detectors);
  for (const auto& mech : dem.mechanisms) {
    if (!rng.bernoulli(mech.probability)) continue;
    for (std::uint32_t d : mech.detectors) s.gamma.flip(d);
    for (std::uint32_t l : mech.observables) s.beta.flip(l);
  }
  return s;
}

std::vector<double> dem_detector_marginals(const DetectorErrorModel& dem) {
  // XOR of independent Bernoullis: P(odd) = (1 - prod(1-2p)) / 2.
  std::vector<double> prod(dem.num_detectors, 1.0);
  for (const auto& mech : dem.mechanisms)
    for (std::uint32_t d : mech.detectors)
      prod[d] *= 1.0 - 2.0 * mech.probability;
  std::vector<double> marg(dem.num_detectors);
  for (std::size_t i = 0; i < prod.size(); ++i) marg[i] = (1.0 - prod[i]) / 2.0;
  return marg;
}

std::uint64_t dem_fingerprint(const DetectorErrorModel& dem) {
  const std::string s = serialize_dem(dem);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace gnd
