#include "poscert/io.hpp"

#include "poscert/text.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace poscert {

namespace {

struct Line {
  std::size_t number = 0;
  std::string_view text;  // comment stripped, trimmed
  std::size_t offset = 0; // column of text[0] minus one
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0, number = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view t = trim(raw);
    if (t.empty()) continue;
    out.push_back({number, t, static_cast<std::size_t>(t.data() - raw.data())});
  }
  return out;
}

struct KeyValue {
  std::string key;
  std::string_view value;
  std::size_t value_offset = 0;
};

KeyValue split_key(const Line& line) {
  const std::size_t colon = line.text.find(':');
  if (colon == std::string_view::npos) throw ParseError("expected 'key: value'", line.number, line.offset + 1);
  KeyValue kv;
  kv.key = std::string(trim(line.text.substr(0, colon)));
  std::string_view rest = line.text.substr(colon + 1);
  const std::string_view value = trim(rest);
  kv.value = value;
  kv.value_offset = line.offset + colon + 1 + static_cast<std::size_t>(value.data() - rest.data());
  return kv;
}

Polynomial parse_poly_at(std::string_view text, const std::vector<std::string>& vars, const Line& line,
                         std::size_t offset) {
  try {
    return parse_polynomial(text, vars, line.number);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), line.number, offset + e.column());
  }
}

Rational parse_rational_at(std::string_view text, const Line& line, std::size_t offset) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line.number, offset + 1);
  }
}

unsigned parse_unsigned_at(std::string_view text, const Line& line, std::size_t offset) {
  const std::string s(text);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) || s.size() > 9)
    throw ParseError("expected a non-negative integer, got '" + s + "'", line.number, offset + 1);
  return static_cast<unsigned>(std::stoul(s));
}

std::vector<std::string> parse_vars(const KeyValue& kv, const Line& line) {
  std::vector<std::string> vars = split_words(kv.value);
  if (vars.empty()) throw ParseError("no variables declared", line.number, kv.value_offset + 1);
  std::set<std::string> seen;
  for (const auto& v : vars) {
    const bool ident = (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_') &&
                       std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
    if (!ident) throw ParseError("bad variable name '" + v + "'", line.number, kv.value_offset + 1);
    if (!seen.insert(v).second) throw ParseError("duplicate variable '" + v + "'", line.number, kv.value_offset + 1);
  }
  return vars;
}

void require_vars(const std::vector<std::string>& vars, const Line& line) {
  if (vars.empty()) throw ParseError("'vars:' must come before any polynomial", line.number, line.offset + 1);
}

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (std::size_t i = 0; i < words.size(); ++i) s += (i ? " " : "") + words[i];
  return s;
}

}  // namespace

// ---------------------------------------------------------------- problems

Problem parse_problem(std::string_view text) {
  Problem p;
  std::vector<Polynomial> gens;
  std::optional<Polynomial> target;
  std::optional<std::pair<unsigned, Line>> cap;
  std::set<std::string> seen;
  for (const Line& line : split_lines(text)) {
    const KeyValue kv = split_key(line);
    const bool repeatable = kv.key == "gen" || kv.key == "vertex";
    if (!repeatable && !seen.insert(kv.key == "poly" ? "target" : kv.key).second)
      throw ParseError("duplicate key '" + kv.key + "'", line.number, line.offset + 1);
    if (kv.key == "vars") {
      if (!gens.empty() || target) throw ParseError("'vars:' must come first", line.number, line.offset + 1);
      p.vars = parse_vars(kv, line);
    } else if (kv.key == "gen") {
      require_vars(p.vars, line);
      gens.push_back(parse_poly_at(kv.value, p.vars, line, kv.value_offset));
    } else if (kv.key == "target" || kv.key == "poly") {
      require_vars(p.vars, line);
      target = parse_poly_at(kv.value, p.vars, line, kv.value_offset);
    } else if (kv.key == "mode") {
      if (kv.value == "module") p.mode = CertMode::Module;
      else if (kv.value == "preorder") p.mode = CertMode::Preorder;
      else throw ParseError("mode must be module or preorder", line.number, kv.value_offset + 1);
    } else if (kv.key == "ball") {
      p.ball = parse_rational_at(kv.value, line, kv.value_offset);
      if (*p.ball <= 0) throw ParseError("ball bound must be positive", line.number, kv.value_offset + 1);
    } else if (kv.key == "degree_cap") {
      cap = std::make_pair(parse_unsigned_at(kv.value, line, kv.value_offset), line);
    } else if (kv.key == "grid") {
      p.grid = parse_unsigned_at(kv.value, line, kv.value_offset);
      if (p.grid < 2) throw ParseError("grid resolution must be at least 2", line.number, kv.value_offset + 1);
    } else if (kv.key == "vertex") {
      require_vars(p.vars, line);
      std::vector<Rational> v;
      for (const auto& w : split_words(kv.value)) v.push_back(parse_rational_at(w, line, kv.value_offset));
      if (v.size() != p.vars.size())
        throw ParseError("vertex needs one coordinate per variable", line.number, kv.value_offset + 1);
      p.vertices.push_back(v);
    } else {
      throw ParseError("unknown key '" + kv.key + "'", line.number, line.offset + 1);
    }
  }
  if (p.vars.empty()) throw ParseError("missing 'vars:' line", 0, 1);
  if (!target) throw ParseError("missing 'target:' line", 0, 1);
  p.f = *target;
  p.S = GeneratorSet(p.vars.size(), gens);
  const long deg = std::max<long>(p.f.degree(), 0);
  if (cap) {
    if (static_cast<long>(cap->first) < deg)
      throw ParseError("degree_cap " + std::to_string(cap->first) + " is below deg target = " + std::to_string(deg),
                       cap->second.number, cap->second.offset + 1);
    p.degree_cap = cap->first;
  } else {
    p.degree_cap = std::max<unsigned>(p.degree_cap, static_cast<unsigned>(deg));
  }
  return p;
}

std::string serialize_problem(const Problem& problem) {
  std::ostringstream out;
  out << "vars: " << join(problem.vars) << "\n";
  for (const auto& g : problem.S.generators()) out << "gen: " << format_polynomial(g, problem.vars) << "\n";
  out << "target: " << format_polynomial(problem.f, problem.vars) << "\n";
  out << "mode: " << to_string(problem.mode) << "\n";
  if (problem.ball) out << "ball: " << to_string(*problem.ball) << "\n";
  out << "degree_cap: " << problem.degree_cap << "\n";
  out << "grid: " << problem.grid << "\n";
  for (const auto& v : problem.vertices) {
    out << "vertex:";
    for (const auto& c : v) out << " " << to_string(c);
    out << "\n";
  }
  return out.str();
}

// ----------------------------------------------------------- certificates

Verdict CertFile::verify() const {
  return mode == CertMode::Module ? verify_module(module, S) : verify_preorder(preorder, S);
}

CertFile parse_certificate(std::string_view text) {
  CertFile file;
  std::optional<CertMode> mode;
  std::vector<Polynomial> gens;
  std::optional<Polynomial> target;
  bool homogeneous = false;
  std::set<std::string> seen;
  // sigma blocks: key text, line, squares
  struct Block {
    std::string key;
    Line line;
    std::vector<std::pair<Rational, Polynomial>> squares;
  };
  std::vector<Block> blocks;
  for (const Line& line : split_lines(text)) {
    if (line.text.substr(0, 6) == "sigma " || line.text == "sigma:") {
      if (line.text.back() != ':') throw ParseError("sigma header must end with ':'", line.number, line.offset + 1);
      const std::string key(trim(line.text.substr(5, line.text.size() - 6)));
      for (const auto& b : blocks)
        if (b.key == key) throw ParseError("duplicate sigma block '" + key + "'", line.number, line.offset + 1);
      blocks.push_back({key, line, {}});
      continue;
    }
    if (line.text.substr(0, 7) == "weight ") {
      if (blocks.empty()) throw ParseError("square outside a sigma block", line.number, line.offset + 1);
      require_vars(file.vars, line);
      const std::string_view rest = line.text.substr(7);
      const std::size_t sq = rest.find(" square ");
      if (sq == std::string_view::npos) throw ParseError("expected 'weight <q> square <poly>'", line.number, line.offset + 1);
      const Rational w = parse_rational_at(trim(rest.substr(0, sq)), line, line.offset + 7);
      if (w <= 0) throw ParseError("weights must be positive", line.number, line.offset + 8);
      const std::size_t poly_offset = line.offset + 7 + sq + 8;
      blocks.back().squares.emplace_back(w, parse_poly_at(rest.substr(sq + 8), file.vars, line, poly_offset));
      continue;
    }
    if (!blocks.empty()) throw ParseError("header lines must precede the sigma blocks", line.number, line.offset + 1);
    const KeyValue kv = split_key(line);
    if (kv.key != "gen" && !seen.insert(kv.key).second)
      throw ParseError("duplicate key '" + kv.key + "'", line.number, line.offset + 1);
    if (kv.key == "mode") {
      if (kv.value == "module") mode = CertMode::Module;
      else if (kv.value == "preorder") mode = CertMode::Preorder;
      else throw ParseError("mode must be module or preorder", line.number, kv.value_offset + 1);
    } else if (kv.key == "vars") {
      if (!gens.empty() || target) throw ParseError("'vars:' must precede polynomials", line.number, line.offset + 1);
      file.vars = parse_vars(kv, line);
    } else if (kv.key == "gen") {
      require_vars(file.vars, line);
      gens.push_back(parse_poly_at(kv.value, file.vars, line, kv.value_offset));
    } else if (kv.key == "target") {
      require_vars(file.vars, line);
      target = parse_poly_at(kv.value, file.vars, line, kv.value_offset);
    } else if (kv.key == "homogeneous") {
      if (kv.value == "true") homogeneous = true;
      else if (kv.value == "false") homogeneous = false;
      else throw ParseError("homogeneous must be true or false", line.number, kv.value_offset + 1);
    } else {
      throw ParseError("unknown key '" + kv.key + "'", line.number, line.offset + 1);
    }
  }
  if (!mode) throw ParseError("missing 'mode:' line", 0, 1);
  if (file.vars.empty()) throw ParseError("missing 'vars:' line", 0, 1);
  if (!target) throw ParseError("missing 'target:' line", 0, 1);
  const std::size_t n = file.vars.size();
  try {
    file.S = GeneratorSet(n, gens, homogeneous);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0, 1);
  }
  file.mode = *mode;
  const std::size_t s = gens.size();
  if (file.mode == CertMode::Module) {
    file.module.target = *target;
    file.module.sigmas.assign(s + 1, SosPoly(n));
  } else {
    file.preorder.target = *target;
  }
  for (const auto& b : blocks) {
    SosPoly sigma(n);
    for (const auto& [w, base] : b.squares) sigma.add_square(w, base);
    const std::size_t col = b.line.offset + 7;
    if (file.mode == CertMode::Module) {
      const unsigned idx = parse_unsigned_at(b.key, b.line, b.line.offset + 6);
      if (idx > s) throw ParseError("sigma index beyond the generator count", b.line.number, col);
      file.module.sigmas[idx] = sigma;
    } else {
      std::uint64_t mask = 0;
      if (!(s == 0 && b.key == "0")) {
        if (b.key.size() != s || b.key.find_first_not_of("01") != std::string::npos)
          throw ParseError("preorder sigma key must be a bit string of length " + std::to_string(s), b.line.number, col);
        mask = bits_to_mask(b.key);
      }
      file.preorder.sigmas[mask] = sigma;
    }
  }
  return file;
}

namespace {

void write_sos(std::ostringstream& out, const SosPoly& sigma, const std::vector<std::string>& vars) {
  for (const auto& sq : sigma.squares())
    out << "  weight " << to_string(sq.weight) << " square " << format_polynomial(sq.base, vars) << "\n";
}

}  // namespace

std::string serialize_certificate(const CertFile& file) {
  std::ostringstream out;
  out << "mode: " << to_string(file.mode) << "\n";
  out << "vars: " << join(file.vars) << "\n";
  for (const auto& g : file.S.generators()) out << "gen: " << format_polynomial(g, file.vars) << "\n";
  if (file.S.homogeneous()) out << "homogeneous: true\n";
  out << "target: " << format_polynomial(file.target(), file.vars) << "\n";
  if (file.mode == CertMode::Module) {
    for (std::size_t i = 0; i < file.module.sigmas.size(); ++i) {
      if (file.module.sigmas[i].empty()) continue;
      out << "sigma " << i << ":\n";
      write_sos(out, file.module.sigmas[i], file.vars);
    }
  } else {
    for (const auto& [mask, sigma] : file.preorder.sigmas) {
      if (sigma.empty()) continue;
      const std::string key = file.S.size() == 0 ? "0" : mask_to_bits(mask, file.S.size());
      out << "sigma " << key << ":\n";
      write_sos(out, sigma, file.vars);
    }
  }
  return out.str();
}

CertFile make_cert_file(const std::vector<std::string>& vars, const GeneratorSet& S, const ModuleCert& cert) {
  CertFile f;
  f.vars = vars;
  f.S = S;
  f.mode = CertMode::Module;
  f.module = cert;
  return f;
}

CertFile make_cert_file(const std::vector<std::string>& vars, const GeneratorSet& S, const PreorderCert& cert) {
  CertFile f;
  f.vars = vars;
  f.S = S;
  f.mode = CertMode::Preorder;
  f.preorder = cert;
  return f;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

}  // namespace poscert
