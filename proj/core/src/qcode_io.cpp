#include <fstream>
#include <sstream>

#include "gnd/codes.hpp"
#include "gnd/error.hpp"

namespace gnd {

namespace {

// Strips a '#' comment and surrounding whitespace.
std::string clean_line(std::string_view raw) {
  std::string s(raw.substr(0, raw.find('#')));
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

// A bit row may be space-separated ("1 0 1") or packed ("101"); both parse
// to the same vector.
BinaryVector parse_bit_row(const std::vector<std::string>& toks,
                           std::size_t want, std::size_t line_no) {
  std::string bits;
  for (const auto& t : toks)
    for (char c : t) {
      if (c != '0' && c != '1')
        throw ParseError(line_no, std::string("bad bit character '") + c + "'");
      bits.push_back(c);
    }
  if (bits.size() != want)
    throw ParseError(line_no, "row has " + std::to_string(bits.size()) +
                                  " bits, expected " + std::to_string(want));
  return BinaryVector::from_string(bits);
}

std::size_t parse_uint(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected unsigned integer, got '" + tok + "'");
  }
}

}  // namespace

StabilizerCode parse_code(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;

  auto next_line = [&](std::string& out) {
    while (std::getline(in, raw)) {
      ++line_no;
      out = clean_line(raw);
      if (!out.empty()) return true;
    }
    return false;
  };

  std::string line;
  if (!next_line(line) || line != "qcode v1")
    throw ParseError(line_no == 0 ? 1 : line_no,
                     "expected header 'qcode v1'");

  if (!next_line(line)) throw ParseError(line_no, "missing 'n ... k ...' line");
  auto toks = split_ws(line);
  if (toks.size() < 4 || toks[0] != "n" || toks[2] != "k")
    throw ParseError(line_no, "expected 'n <int> k <int> [d <int>]'");
  StabilizerCode code;
  code.n = parse_uint(toks[1], line_no);
  code.k = parse_uint(toks[3], line_no);
  if (toks.size() >= 6 && toks[4] == "d")
    code.claimed_distance = parse_uint(toks[5], line_no);
  else if (toks.size() != 4)
    throw ParseError(line_no, "trailing tokens after 'n <int> k <int>'");
  if (code.n == 0) throw ParseError(line_no, "n must be positive");
  code.name = std::move(name);

  enum class Block { None, Hx, Hz, S };
  Block block = Block::None;
  bool seen_hx = false, seen_hz = false, seen_s = false;
  std::vector<PauliOperator> x_gens, z_gens, s_gens;
  BinaryVector zeros(code.n);

  while (next_line(line)) {
    if (line == "Hx") {
      if (seen_hx) throw ParseError(line_no, "duplicate Hx block");
      if (seen_s) throw ParseError(line_no, "Hx block after S block");
      block = Block::Hx;
      seen_hx = true;
      continue;
    }
    if (line == "Hz") {
      if (seen_hz) throw ParseError(line_no, "duplicate Hz block");
      if (seen_s) throw ParseError(line_no, "Hz block after S block");
      block = Block::Hz;
      seen_hz = true;
      continue;
    }
    if (line == "S") {
      if (seen_s) throw ParseError(line_no, "duplicate S block");
      if (seen_hx || seen_hz)
        throw ParseError(line_no, "S block mixed with Hx/Hz blocks");
      block = Block::S;
      seen_s = true;
      continue;
    }
    auto row_toks = split_ws(line);
    switch (block) {
      case Block::None:
        throw ParseError(line_no, "bit row outside of any block");
      case Block::Hx:
        x_gens.emplace_back(parse_bit_row(row_toks, code.n, line_no), zeros);
        break;
      case Block::Hz:
        z_gens.emplace_back(zeros, parse_bit_row(row_toks, code.n, line_no));
        break;
      case Block::S: {
        BinaryVector row = parse_bit_row(row_toks, 2 * code.n, line_no);
        s_gens.push_back(pauli_from_symplectic_row(row));
        break;
      }
    }
  }

  for (auto& g : x_gens) code.stabilizers.push_back(std::move(g));
  for (auto& g : z_gens) code.stabilizers.push_back(std::move(g));
  for (auto& g : s_gens) code.stabilizers.push_back(std::move(g));
  if (code.stabilizers.size() != code.n - code.k)
    throw ParseError(line_no, "found " +
                                  std::to_string(code.stabilizers.size()) +
                                  " generators but n - k = " +
                                  std::to_string(code.n - code.k));
  return code;
}

std::string serialize_code(const StabilizerCode& code) {
  std::ostringstream out;
  out << "qcode v1\n";
  if (!code.name.empty()) out << "# name: " << code.name << "\n";
  out << "n " << code.n << " k " << code.k;
  if (code.claimed_distance) out << " d " << *code.claimed_distance;
  out << "\n";

  // CSS codes listed X-generators-first serialize as Hx/Hz and round-trip
  // with generator order intact; anything else uses symplectic rows.
  const std::size_t m = code.stabilizers.size();
  std::size_t first_z = 0;
  while (first_z < m && code.stabilizers[first_z].z.is_zero()) ++first_z;
  bool css_ordered = true;
  for (std::size_t i = first_z; i < m; ++i)
    if (!code.stabilizers[i].x.is_zero()) css_ordered = false;

  auto emit_bits = [&out](const BinaryVector& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << ' ';
      out << (v.get(i) ? '1' : '0');
    }
    out << '\n';
  };

  if (css_ordered && m > 0) {
    out << "Hx\n";
    for (std::size_t i = 0; i < first_z; ++i) emit_bits(code.stabilizers[i].x);
    out << "Hz\n";
    for (std::size_t i = first_z; i < m; ++i) emit_bits(code.stabilizers[i].z);
  } else {
    out << "S\n";
    for (const auto& g : code.stabilizers) emit_bits(symplectic_row(g));
  }
  return out.str();
}

StabilizerCode load_code_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open code file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  StabilizerCode code = parse_code(buf.str(), path.stem().string());
  ValidationReport rep = validate_code(code);
  if (!rep.ok()) {
    std::string msg = path.string() + " is not a valid stabilizer code:";
    for (const std::string& v : rep.violations) msg += "\n  " + v;
    throw std::runtime_error(msg);
  }
  return code;
}

void save_code_file(const StabilizerCode& code,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write code file: " + path.string());
  out << serialize_code(code);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::uint64_t code_fingerprint(const StabilizerCode& code) {
  // Hash the structure only (not the name), so renaming a file does not
  // orphan its checkpoints.
  std::uint64_t h = 1469598103934665603ull;
  auto mix_byte = [&h](unsigned char b) {
    h ^= b;
    h *= 1099511628211ull;
  };
  auto mix_u64 = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(v >> (8 * i)));
  };
  mix_u64(code.n);
  mix_u64(code.k);
  for (const auto& g : code.stabilizers) {
    for (std::uint64_t w : g.x.words()) mix_u64(w);
    for (std::uint64_t w : g.z.words()) mix_u64(w);
  }
  return h;
}

}  // namespace gnd
