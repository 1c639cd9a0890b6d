#include "cli.hpp"

#include "poscert/io.hpp"
#include "poscert/noncompact.hpp"
#include "poscert/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>

namespace poscert::cli {

namespace {

using Json = nlohmann::ordered_json;

/// verdict: verified | found | failed | inconclusive | error
struct Report {
  Report() = default;
  explicit Report(std::string v, std::string verdict_ = "error", std::string reason_ = {})
      : verb(std::move(v)), verdict(std::move(verdict_)), reason(std::move(reason_)) {}

  std::string verb;
  std::string verdict = "error";
  std::string reason;
  std::vector<std::string> certificates;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> trace;
  std::optional<double> millis;

  void add(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }

  int exit_code() const {
    if (verdict == "verified" || verdict == "found") return Ok;
    if (verdict == "error") return BadInput;
    return Failed;
  }
};

void print(const Report& r, bool json, std::ostream& out) {
  if (json) {
    Json j;
    j["verb"] = r.verb;
    j["verdict"] = r.verdict;
    if (!r.reason.empty()) j["reason"] = r.reason;
    j["certificates"] = r.certificates;
    Json details = Json::object();
    for (const auto& [k, v] : r.fields) details[k] = v;
    j["details"] = details;
    j["trace"] = r.trace;
    if (r.millis) j["millis"] = *r.millis;
    out << j.dump(2) << "\n";
    return;
  }
  out << "verdict: " << r.verdict << "\n";
  if (!r.reason.empty()) out << "reason: " << r.reason << "\n";
  for (const auto& [k, v] : r.fields) {
    if (v.find('\n') == std::string::npos) {
      out << k << ": " << v << "\n";
    } else {
      out << k << ":\n" << v;
      if (v.back() != '\n') out << "\n";
    }
  }
  for (const auto& t : r.trace) out << "trace: " << t << "\n";
  for (const auto& c : r.certificates) out << "certificate: " << c << "\n";
  if (r.millis) out << "millis: " << *r.millis << "\n";
}

std::string read_input(const std::string& path) {
  try {
    return read_file(path);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(e.what());
  }
}

std::optional<unsigned> env_degree_cap() {
  const char* v = std::getenv("POSCERT_MAX_DEGREE");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long cap = std::strtoul(v, &end, 10);
  if (*end != '\0') throw std::invalid_argument(std::string("POSCERT_MAX_DEGREE is not an integer: ") + v);
  return static_cast<unsigned>(cap);
}

void enforce_cap(long degree) {
  if (auto cap = env_degree_cap())
    if (degree > static_cast<long>(*cap))
      throw ResourceLimit("degree " + std::to_string(degree) + " exceeds POSCERT_MAX_DEGREE = " + std::to_string(*cap));
}

Problem load_problem(const std::string& path) {
  Problem p = parse_problem(read_input(path));
  long deg = p.f.degree();
  for (const auto& g : p.S.generators()) deg = std::max(deg, g.degree());
  enforce_cap(deg);
  if (auto cap = env_degree_cap()) p.degree_cap = std::min(p.degree_cap, *cap);
  return p;
}

/// Writes the certificate when a path is given, else prints it inline.
void deliver(Report& r, const CertFile& file, const std::optional<std::string>& path, const std::string& label) {
  const std::string text = serialize_certificate(file);
  if (path) {
    write_file_atomic(*path, text);
    r.certificates.push_back(*path);
  } else {
    r.add(label, text);
  }
}

std::string trace_line(const TraceStep& s, const std::vector<std::string>& vars) {
  std::string line = s.stage;
  if (s.generator) line += " g" + std::to_string(s.generator);
  if (!s.multiplier.empty()) line += " sigma=" + format_polynomial(s.multiplier.expand(), vars);
  line += s.verified ? " ok" : " failed";
  if (!s.note.empty()) line += " (" + s.note + ")";
  return line;
}

std::string point_text(const std::vector<Rational>& pt) {
  std::string s = "(";
  for (std::size_t i = 0; i < pt.size(); ++i) s += (i ? "," : "") + to_string(pt[i]);
  return s + ")";
}

std::string longs_text(const std::vector<long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// ------------------------------------------------------------------ verbs

Report do_verify(const std::string& path) {
  Report r{"verify"};
  CertFile file = parse_certificate(read_input(path));
  Verdict v = file.verify();
  r.add("mode", to_string(file.mode));
  r.add("generators", std::to_string(file.S.size()));
  if (v) {
    r.verdict = "verified";
  } else {
    r.verdict = "failed";
    r.reason = v.message;
  }
  return r;
}

Report do_polya(const std::string& path, unsigned max_n, const std::string& criterion) {
  Report r{"polya"};
  Problem p = load_problem(path);
  PolyaCriterion c;
  if (criterion == "strict") c = PolyaCriterion::Strict;
  else if (criterion == "nonnegative") c = PolyaCriterion::NonNegative;
  else throw std::invalid_argument("criterion must be strict or nonnegative");
  enforce_cap(p.f.degree() + static_cast<long>(max_n));
  PolyaResult res = polya_exponent(p.f, max_n, c);
  for (const auto& f : res.failures)
    r.trace.push_back("N=" + std::to_string(f.N) + " fails at " +
                      format_polynomial(Polynomial::term(f.monomial, 1), p.vars) + " with coefficient " +
                      to_string(f.coefficient));
  switch (res.status) {
    case SearchStatus::Found:
      r.verdict = "found";
      r.add("N", std::to_string(res.N));
      r.add("product", format_polynomial(res.product, p.vars));
      break;
    case SearchStatus::Refuted:
      r.verdict = "failed";
      r.reason = "f is not positive on the simplex";
      if (res.witness) r.add("witness", point_text(*res.witness) + " value " + to_string(res.witness_value));
      break;
    case SearchStatus::Inconclusive:
      r.verdict = "inconclusive";
      r.reason = "no exponent N <= " + std::to_string(max_n);
      break;
  }
  return r;
}

Report do_habicht(const std::string& path, const std::optional<std::string>& emit) {
  Report r{"habicht"};
  Problem p = load_problem(path);
  HabichtResult res = habicht_certificate(p.f);
  if (res.status != SearchStatus::Found) {
    r.verdict = res.status == SearchStatus::Refuted ? "failed" : "inconclusive";
    r.reason = res.reason;
    return r;
  }
  const HabichtCert& h = *res.cert;
  Verdict v = verify_habicht(h);
  if (!v) throw std::logic_error("Habicht identity fails: " + v.message);
  r.verdict = "found";
  r.add("D", std::to_string(h.D));
  std::string exps;
  for (unsigned e : h.polya_exponents) exps += (exps.empty() ? "" : " ") + std::to_string(e);
  r.add("polya_exponents", exps);
  const GeneratorSet empty(p.vars.size(), {});
  const CertFile num = make_cert_file(p.vars, empty, h.numerator());
  const CertFile den = make_cert_file(p.vars, empty, h.denominator());
  deliver(r, num, emit ? std::optional<std::string>(*emit + ".num.cert") : std::nullopt, "numerator");
  deliver(r, den, emit ? std::optional<std::string>(*emit + ".den.cert") : std::nullopt, "denominator");
  return r;
}

Report do_handelman(const std::string& path, unsigned max_n, const std::optional<std::string>& emit) {
  Report r{"handelman"};
  Problem p = load_problem(path);
  const std::size_t n = p.vars.size();
  SimplexSpec simplex = !p.vertices.empty()       ? SimplexSpec::from_vertices(p.vertices)
                        : p.S.size() > 0           ? SimplexSpec::from_lambdas(p.S.generators())
                                                   : SimplexSpec::standard(n);
  HandelmanResult res = handelman_simplex(p.f, simplex, max_n);
  if (res.status != SearchStatus::Found) {
    r.verdict = res.status == SearchStatus::Refuted ? "failed" : "inconclusive";
    r.reason = res.reason;
    return r;
  }
  const GeneratorSet S = lambda_generators(*res.cert);
  const PreorderCert cert = to_preorder(*res.cert, S);
  Verdict v = verify_preorder(cert, S);
  if (!v) throw std::logic_error("Handelman certificate fails: " + v.message);
  r.verdict = "found";
  r.add("polya_N", std::to_string(res.cert->polya_N));
  std::string coeffs;
  for (const auto& [alpha, a] : res.cert->coefficients) {
    std::string key;
    for (std::size_t i = 0; i < alpha.nvars(); ++i) key += (i ? "," : "") + std::to_string(alpha[i]);
    coeffs += (coeffs.empty() ? "" : " ") + std::string("a(") + key + ")=" + to_string(a);
  }
  r.add("coefficients", coeffs);
  deliver(r, make_cert_file(p.vars, S, cert), emit, "certificate");
  return r;
}

Report do_putinar(const std::string& path, const std::optional<std::string>& emit) {
  Report r{"putinar"};
  Problem p = load_problem(path);
  PutinarResult res = putinar_search(p);
  for (const auto& s : res.trace) r.trace.push_back(trace_line(s, p.vars));
  if (res.status != SearchStatus::Found) {
    r.verdict = res.status == SearchStatus::Refuted ? "failed" : "inconclusive";
    r.reason = res.reason;
    return r;
  }
  const CertFile file = res.module ? make_cert_file(p.vars, res.S, *res.module) : make_cert_file(p.vars, res.S, *res.preorder);
  Verdict v = file.verify();
  if (!v) throw std::logic_error("certificate fails re-verification: " + v.message);
  r.verdict = "found";
  deliver(r, file, emit, "certificate");
  return r;
}

Report do_projective(const std::string& path, const std::optional<std::string>& emit) {
  Report r{"projective"};
  Problem p = load_problem(path);
  ProjectiveResult res = projective_putinar_search(p);
  for (const auto& s : res.trace) r.trace.push_back(trace_line(s, p.vars));
  if (res.status != SearchStatus::Found) {
    r.verdict = res.status == SearchStatus::Refuted ? "failed" : "inconclusive";
    r.reason = res.reason;
    return r;
  }
  const GeneratorSet S(p.vars.size(), p.S.generators(), true);
  const CertFile file = make_cert_file(p.vars, S, *res.cert);
  Verdict v = file.verify();
  if (!v) throw std::logic_error("certificate fails re-verification: " + v.message);
  r.verdict = "found";
  r.add("N", std::to_string(res.N));
  deliver(r, file, emit, "certificate");
  return r;
}

Report do_natgen(const std::string& text, const std::string& var, const std::optional<std::string>& gens) {
  Report r{"natgen"};
  const std::vector<std::string> vars{var};
  IntervalUnion K;
  try {
    K = IntervalUnion::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), 0, e.column());
  }
  std::string list;
  for (const auto& g : natural_generators(K)) list += (list.empty() ? "" : "; ") + format_polynomial(g, vars);
  r.add("K", K.to_string());
  r.add("natural_generators", list.empty() ? "(none)" : list);
  r.verdict = "found";
  if (gens) {
    std::vector<Polynomial> S;
    std::size_t start = 0;
    while (start <= gens->size()) {
      std::size_t end = gens->find(';', start);
      if (end == std::string::npos) end = gens->size();
      S.push_back(parse_polynomial(std::string_view(*gens).substr(start, end - start), vars));
      start = end + 1;
    }
    Putinar1dVerdict v = is_putinar_1d(S, K);
    r.add("K_S", v.K.to_string());
    r.add("declared_K_matches", v.declared_matches ? "yes" : "no");
    r.add("putinar", v.putinar ? "yes" : "no");
    std::string missing;
    for (const auto& m : v.missing) missing += (missing.empty() ? "" : "; ") + format_polynomial(m, vars);
    if (!missing.empty()) r.add("missing", missing);
    if (!v.putinar) {
      r.verdict = "failed";
      r.reason = "natural generators of K_S missing from S";
    }
  }
  return r;
}

Report do_stability(const std::string& dirs, std::optional<long> degree, long bound) {
  Report r{"stability"};
  const auto T = parse_directions(dirs);
  StabilityResult res = stability_multipliers(T, bound);
  if (res.status == SearchStatus::Found) {
    r.verdict = "found";
    r.add("multipliers", longs_text(res.multipliers));
    r.add("sum", longs_text(res.sum));
    if (degree) r.add("degree_bound", to_string(stability_degree_bound(T, res.multipliers, *degree)));
  } else {
    r.verdict = res.status == SearchStatus::Refuted ? "failed" : "inconclusive";
    r.reason = res.reason;
    if (!res.dual.empty()) r.add("dual", point_text(res.dual));
  }
  return r;
}

Report do_desquare(const std::string& path, const std::string& var, const std::optional<std::string>& emit) {
  Report r{"desquare"};
  CertFile file = parse_certificate(read_input(path));
  if (file.mode != CertMode::Module) throw std::invalid_argument("desquare expects a module certificate");
  auto it = std::find(file.vars.begin(), file.vars.end(), var);
  if (it == file.vars.end()) throw std::invalid_argument("unknown variable '" + var + "'");
  Desquared d = eliminate_squares(file.module, file.S, static_cast<std::size_t>(it - file.vars.begin()));
  const CertFile out = make_cert_file(file.vars, d.S, d.cert);
  Verdict v = out.verify();
  if (!v) throw std::logic_error("desquared certificate fails re-verification: " + v.message);
  r.verdict = "found";
  deliver(r, out, emit, "certificate");
  return r;
}

Report do_logpoly(const std::string& path) {
  Report r{"logpoly"};
  LogPolyhedron P = parse_log_polyhedron(read_input(path));
  UnimodularResult u = unimodular_cone_check(P);
  r.add("unimodular", u.unimodular ? "yes" : "no");
  if (u.witness) {
    const auto& w = *u.witness;
    r.add("rays", longs_text({w[0][0], w[0][1]}) + " " + longs_text({w[1][0], w[1][1]}));
    r.add("determinant", std::to_string(u.determinant));
  }
  if (!u.note.empty()) r.add("note", u.note);
  TripleResult t = triple_intersection_check(P);
  r.add("triple_intersection", t.passes ? "none" : "present");
  if (t.witness) {
    const auto& w = *t.witness;
    r.add("triple", std::to_string(w[0] + 1) + " " + std::to_string(w[1] + 1) + " " + std::to_string(w[2] + 1));
  }
  r.verdict = "found";
  return r;
}

Report do_homogenize(const std::string& path, bool even, const std::string& var) {
  Report r{"homogenize"};
  Problem p = load_problem(path);
  if (std::find(p.vars.begin(), p.vars.end(), var) != p.vars.end())
    throw std::invalid_argument("variable '" + var + "' already in use");
  std::vector<std::string> vars{var};
  vars.insert(vars.end(), p.vars.begin(), p.vars.end());
  const Polynomial h = homogenize(p.f, even);
  std::string names;
  for (const auto& v : vars) names += (names.empty() ? "" : " ") + v;
  r.add("vars", names);
  r.add("target", format_polynomial(h, vars));
  r.verdict = "found";
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"poscert: certificates of positivity with exact verification"};
  app.require_subcommand(1);
  bool json = false;
  bool timing = false;
  app.add_flag("--json", json, "Emit the report as JSON");
  app.add_flag("--timing", timing, "Include wall-clock time in the report");

  std::string input, text, dirs, var = "y", nat_var = "x", hom_var = "x0", criterion = "strict";
  std::optional<std::string> emit, gens;
  std::optional<long> degree;
  unsigned max_n = 50;
  long bound = 20;
  bool even = false;

  auto* verify = app.add_subcommand("verify", "Verify a certificate file exactly");
  verify->add_option("certfile", input)->required();
  auto* polya = app.add_subcommand("polya", "Smallest Polya exponent of a form");
  polya->add_option("polyfile", input)->required();
  polya->add_option("--max-n", max_n, "Largest exponent tried");
  polya->add_option("--criterion", criterion, "strict or nonnegative");
  auto* habicht = app.add_subcommand("habicht", "Habicht identity (M2+R2) f = M1+R1 for a positive definite form");
  habicht->add_option("polyfile", input)->required();
  habicht->add_option("--emit", emit, "Prefix for PREFIX.num.cert and PREFIX.den.cert");
  auto* handelman = app.add_subcommand("handelman", "Handelman representation on a simplex");
  handelman->add_option("problemfile", input)->required();
  handelman->add_option("--max-n", max_n, "Largest Polya exponent tried");
  handelman->add_option("--emit", emit, "Certificate output path");
  auto* putinar = app.add_subcommand("putinar", "Search a Putinar certificate");
  putinar->add_option("problemfile", input)->required();
  putinar->add_option("--emit", emit, "Certificate output path");
  auto* projective = app.add_subcommand("projective", "Search (sum x^2)^N f in the homogeneous module");
  projective->add_option("problemfile", input)->required();
  projective->add_option("--emit", emit, "Certificate output path");
  auto* natgen = app.add_subcommand("natgen", "Natural generators of a union of closed intervals");
  natgen->add_option("intervals", text)->required();
  natgen->add_option("--var", nat_var, "Variable name");
  natgen->add_option("--gens", gens, "Semicolon-separated S to test with the 1-D Putinar criterion");
  auto* stability = app.add_subcommand("stability", "Tentacle multipliers and degree bound");
  stability->add_option("--dirs", dirs, "Directions like \"(0,1);(1,-1)\"")->required();
  stability->add_option("--degree", degree, "Degree d for the bound d'");
  stability->add_option("--bound", bound, "Largest multiplier tried");
  auto* desquare = app.add_subcommand("desquare", "Eliminate squares of a variable from a module certificate");
  desquare->add_option("certfile", input)->required();
  desquare->add_option("--var", var, "Variable whose squares are eliminated");
  desquare->add_option("--emit", emit, "Certificate output path");
  auto* logpoly = app.add_subcommand("logpoly", "Unimodularity and triple intersections of a logarithmic polyhedron");
  logpoly->add_option("file", input)->required();
  auto* homog = app.add_subcommand("homogenize", "Homogenize the target polynomial");
  homog->add_option("polyfile", input)->required();
  homog->add_flag("--even", even, "Round the degree up to an even number");
  homog->add_option("--var", hom_var, "Name of the new variable");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return BadInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Report report;
  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    if (verb == "verify") report = do_verify(input);
    else if (verb == "polya") report = do_polya(input, max_n, criterion);
    else if (verb == "habicht") report = do_habicht(input, emit);
    else if (verb == "handelman") report = do_handelman(input, max_n, emit);
    else if (verb == "putinar") report = do_putinar(input, emit);
    else if (verb == "projective") report = do_projective(input, emit);
    else if (verb == "natgen") report = do_natgen(text, nat_var, gens);
    else if (verb == "stability") report = do_stability(dirs, degree, bound);
    else if (verb == "desquare") report = do_desquare(input, var, emit);
    else if (verb == "logpoly") report = do_logpoly(input);
    else report = do_homogenize(input, even, hom_var);
  } catch (const ParseError& e) {
    report = Report{verb, "error", std::string("parse error: ") + e.what()};
    print(report, json, out);
    return BadInput;
  } catch (const ResourceLimit& e) {
    report = Report{verb, "error", std::string("resource cap: ") + e.what()};
    print(report, json, out);
    return Resource;
  } catch (const std::invalid_argument& e) {
    report = Report{verb, "error", std::string("invalid input: ") + e.what()};
    print(report, json, out);
    return BadInput;
  } catch (const std::exception& e) {
    report = Report{verb, "error", e.what()};
    print(report, json, out);
    return Failed;
  }
  if (timing)
    report.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  print(report, json, out);
  return report.exit_code();
}

}  // namespace poscert::cli
