#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "heis/coboundary.hpp"
#include "heis/cohomology.hpp"
#include "heis/diophantine.hpp"
#include "heis/error.hpp"
#include "heis/format.hpp"
#include "heis/fourier.hpp"
#include "heis/group.hpp"
#include "heis/representations.hpp"

namespace heis::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Usage problems detected after CLI11 parsing (bad file, malformed list).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json real_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v == 0.0 ? 0.0 : v;
}

std::string index_text(const MultiIndex& k) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("empty entry in list '" + text + "'");
    parts.push_back(cur.substr(b, e - b + 1));
  }
  if (parts.empty()) throw UsageError("empty list");
  return parts;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split_list(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != p.size()) throw UsageError("not a number: '" + p + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<PrecisionReal> parse_vector(const std::string& text, unsigned bits) {
  std::vector<PrecisionReal> out;
  for (const auto& p : split_list(text)) out.push_back(PrecisionReal::parse(p, bits));
  return out;
}

CoefficientField read_field_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open '" + path + "'");
  return read_coefficients(f);
}

// ---- group ---------------------------------------------------------------

struct GroupArgs {
  std::string op;
  std::string input;
};

std::vector<ElementN> read_elements(std::istream& in) {
  std::vector<ElementN> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    out.push_back(parse_element(line, no));
  }
  return out;
}

ElementN conjugate_n(const ElementN& a, const ElementN& b) { return multiply(multiply(a, b), inverse(a)); }

void run_group(const GroupArgs& a, std::istream& in, std::ostream& out, bool json) {
  std::vector<ElementN> elems;
  if (a.input.empty() || a.input == "-") {
    elems = read_elements(in);
  } else {
    std::ifstream f(a.input);
    if (!f) throw UsageError("cannot open '" + a.input + "'");
    elems = read_elements(f);
  }

  std::vector<std::string> results;
  Json rows = Json::array();
  if (a.op == "mul") {
    if (elems.empty()) throw DomainError("mul needs at least one element");
    ElementN acc = elems.front();
    for (std::size_t i = 1; i < elems.size(); ++i) acc = multiply(acc, elems[i]);
    results.push_back(format_element(acc));
  } else if (a.op == "inv") {
    for (const auto& e : elems) results.push_back(format_element(inverse(e)));
  } else if (a.op == "comm" || a.op == "conj") {
    if (elems.size() % 2 != 0) throw DomainError(a.op + " reads elements in pairs; got an odd count");
    for (std::size_t i = 0; i < elems.size(); i += 2)
      results.push_back(format_element(a.op == "comm" ? commutator(elems[i], elems[i + 1])
                                                      : conjugate_n(elems[i], elems[i + 1])));
  } else {  // nf
    for (const auto& e : elems) {
      if (e.dim() != 1) throw DimensionMismatchError("normal form is defined for n = 1");
      const NormalForm nf = normal_form(e.to_element());
      results.push_back(fmt::format("{} {} {}", nf.a, nf.b, nf.c));
      rows.push_back(Json{{"a", nf.a}, {"b", nf.b}, {"c", nf.c}});
    }
  }

  if (json) {
    Json doc{{"op", a.op}};
    doc["results"] = a.op == "nf" ? rows : Json(results);
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& r : results) out << r << '\n';
  }
}

// ---- rep -----------------------------------------------------------------

struct RepArgs {
  std::int64_t p = 0;
  double xi = 0.0;
  std::string eta;
  double alpha = 0.0;
  std::int64_t range = 1;
  std::string element;
};

IrrepParams irrep_params(const RepArgs& a) {
  if (a.p < 1) throw DomainError("p must be positive");
  const auto slash = a.eta.find('/');
  if (slash != std::string::npos) {
    std::int64_t num = 0, den = 0;
    try {
      std::size_t u1 = 0, u2 = 0;
      num = std::stoll(a.eta.substr(0, slash), &u1);
      den = std::stoll(a.eta.substr(slash + 1), &u2);
      if (u1 != slash || u2 != a.eta.size() - slash - 1) throw std::invalid_argument("eta");
    } catch (const std::exception&) {
      throw UsageError("eta must be q/p or a decimal, got '" + a.eta + "'");
    }
    if (den == 0) throw DomainError("eta has zero denominator");
    const __int128 scaled = static_cast<__int128>(num) * a.p;
    if (scaled % den != 0) throw DomainError("eta = " + a.eta + " is not of the form q/p");
    return IrrepParams(a.p, a.xi, static_cast<std::int64_t>(scaled / den), a.alpha);
  }
  return IrrepParams::with_eta(a.p, a.xi, parse_doubles(a.eta).at(0), a.alpha);
}

void run_rep_character(const RepArgs& a, std::ostream& out, bool json) {
  if (a.range < 0) throw DomainError("range must be nonnegative");
  const IrrepParams params = irrep_params(a);
  Json rows = Json::array();
  if (!json) out << "m k s re im\n";
  for (std::int64_t m = -a.range; m <= a.range; ++m)
    for (std::int64_t k = -a.range; k <= a.range; ++k)
      for (std::int64_t s = -a.range; s <= a.range; ++s) {
        const Complex c = character(params, {m, k, s});
        if (json)
          rows.push_back(Json{{"m", m}, {"k", k}, {"s", s}, {"re", real_json(c.real())}, {"im", real_json(c.imag())}});
        else
          out << m << ' ' << k << ' ' << s << ' ' << format_complex(c) << '\n';
      }
  if (json) {
    Json doc{{"p", params.p()}, {"eta_numerator", params.eta_numerator()}, {"xi", params.xi()},
             {"alpha", params.alpha()}, {"range", a.range}, {"rows", rows}};
    out << doc.dump(2) << '\n';
  }
}

void run_rep_matrix(const RepArgs& a, std::ostream& out, bool json) {
  const IrrepParams params = irrep_params(a);
  std::istringstream is(a.element);
  SemidirectElement e;
  std::string extra;
  if (!(is >> e.m >> e.k >> e.s) || (is >> extra)) throw UsageError("--element expects \"m k s\"");
  const ComplexMatrix u = irrep_matrix(params, e);
  Json rows = Json::array();
  for (std::size_t r = 0; r < u.size(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < u.size(); ++c) {
      if (json)
        row.push_back(Json::array({real_json(u(r, c).real()), real_json(u(r, c).imag())}));
      else
        out << (c ? "  " : "") << format_complex(u(r, c));
    }
    if (json)
      rows.push_back(row);
    else
      out << '\n';
  }
  if (json) out << Json{{"p", params.p()}, {"element", {e.m, e.k, e.s}}, {"matrix", rows}}.dump(2) << '\n';
}

// ---- classify ------------------------------------------------------------

struct ClassifyArgs {
  std::string vector;
  std::int64_t kmax = 1000;
  unsigned prec = 128;
  std::string s_grid = "1,2,3";
};

void run_classify(const ClassifyArgs& a, std::ostream& out, bool json) {
  const auto t = parse_vector(a.vector, a.prec);
  const auto rep = classify(t, a.kmax, parse_doubles(a.s_grid));

  if (json) {
    Json doc{{"verdict", verdict_name(rep.verdict)},
             {"kmax", rep.kmax},
             {"precision_bits", rep.precision_bits},
             {"exact_input", rep.exact_input},
             {"scanned", rep.scanned}};
    if (rep.evidence_s) {
      doc["evidence_s"] = *rep.evidence_s;
      doc["evidence_constant"] = real_json(*rep.evidence_constant);
    }
    Json rows = Json::array();
    for (const auto& r : rep.rows)
      rows.push_back(Json{{"s", r.s}, {"constant", real_json(r.constant)}, {"argmin", r.argmin},
                          {"bounded", r.bounded}});
    doc["rows"] = rows;
    doc["witness_count"] = rep.witness_count;
    Json ws = Json::array();
    for (const auto& w : rep.witnesses)
      ws.push_back(Json{{"k", w.record.k},
                        {"divisor", real_json(w.record.divisor)},
                        {"divisor_exponent", real_json(w.divisor_exponent)},
                        {"approximation_exponent", real_json(w.approximation_exponent)}});
    doc["witnesses"] = ws;
    Json sm = Json::array();
    for (const auto& d : rep.smallest) sm.push_back(Json{{"k", d.k}, {"divisor", real_json(d.divisor)}});
    doc["smallest"] = sm;
    out << doc.dump(2) << '\n';
    return;
  }

  out << "verdict=" << verdict_name(rep.verdict) << '\n';
  out << "kmax=" << rep.kmax << '\n';
  out << "precision_bits=" << rep.precision_bits << '\n';
  out << "exact_input=" << (rep.exact_input ? "true" : "false") << '\n';
  out << "scanned=" << rep.scanned << '\n';
  if (rep.evidence_s) {
    out << "evidence_s=" << format_real(*rep.evidence_s) << '\n';
    out << "evidence_constant=" << format_real(*rep.evidence_constant) << '\n';
  }
  for (const auto& r : rep.rows)
    out << "row s=" << format_real(r.s) << " constant=" << format_real(r.constant)
        << " argmin=" << index_text(r.argmin) << " bounded=" << (r.bounded ? "true" : "false") << '\n';
  out << "witness_count=" << rep.witness_count << '\n';
  for (const auto& w : rep.witnesses)
    out << "witness k=" << index_text(w.record.k) << " divisor=" << format_real(w.record.divisor)
        << " divisor_exponent=" << format_real(w.divisor_exponent)
        << " approximation_exponent=" << format_real(w.approximation_exponent) << '\n';
  for (const auto& d : rep.smallest)
    out << "smallest k=" << index_text(d.k) << " divisor=" << format_real(d.divisor) << '\n';
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
  std::string g;
  std::string u;
  std::string alpha_list = "0,1";
  double resonance_tol = 1e-12;
  unsigned prec = 128;
  int sign = 1;
  bool verify = false;
  std::int64_t classify_kmax = 0;
  std::int64_t truncate = -1;
};

void run_solve(const SolveArgs& a, std::ostream& out, bool json) {
  CoboundaryProblem prob{read_field_file(a.g), parse_vector(a.u, a.prec), {}};
  prob.options.resonance_tol = a.resonance_tol;
  prob.options.sign = a.sign;
  prob.options.truncation_radius = a.truncate;
  std::optional<DivisorEvidence> evidence;
  if (a.classify_kmax > 0) {
    prob.options.classify_kmax = a.classify_kmax;
    evidence = evidence_from(classify(prob.u, a.classify_kmax, {1.0, 2.0}));
  }
  const CoboundarySolution sol = solve(prob);
  const CoefficientField g =
      a.truncate >= 0 ? prob.g.truncated(a.truncate) : prob.g;
  const SobolevLoss loss = sobolev_loss(sol, g, parse_doubles(a.alpha_list), evidence);
  const auto& d = sol.diagnostics;

  std::optional<double> verified;
  if (a.verify) {
    const std::int64_t radius = std::max(sol.f.support_radius(), g.support_radius());
    verified = residual(sol.f, g, prob.u, 2 * radius + 1, a.sign);
  }

  if (json) {
    Json coeffs = Json::array();
    for (const auto& [k, v] : sol.f)
      coeffs.push_back(Json{{"k", k}, {"re", real_json(v.real())}, {"im", real_json(v.imag())}});
    Json doc{{"dim", sol.f.dim()}, {"f", coeffs}};
    doc["min_divisor"] = real_json(d.min_divisor);
    doc["argmin_k"] = d.argmin_k;
    doc["residual_sup"] = d.residual_sup ? real_json(*d.residual_sup) : Json(nullptr);
    doc["dropped_modes"] = d.dropped_modes;
    if (verified) doc["verify_residual"] = real_json(*verified);
    if (d.regime) doc["regime"] = verdict_name(*d.regime);
    if (d.formal) {
      doc["formal"] = true;
      doc["note"] = d.note;
      Json tn = Json::array();
      for (const auto& r : d.truncation_norms) tn.push_back(Json{{"radius", r.radius}, {"norm", real_json(r.norm)}});
      doc["truncation_norms"] = tn;
    }
    Json norms = Json::array();
    for (const auto& r : loss.rows) {
      Json row{{"alpha", r.alpha}, {"f", real_json(r.f_norm)}, {"g", real_json(r.g_norm)}, {"ratio", real_json(r.ratio)}};
      if (r.sequence_norm) row["sequence"] = real_json(*r.sequence_norm);
      norms.push_back(row);
    }
    doc["norms"] = norms;
    if (loss.bound_checked) doc["bound_holds"] = loss.bound_holds;
    out << doc.dump(2) << '\n';
    return;
  }

  write_coefficients(out, sol.f);
  out << "# min_divisor=" << format_real(d.min_divisor) << '\n';
  out << "# argmin_k=" << index_text(d.argmin_k) << '\n';
  out << "# residual_sup=" << (d.residual_sup ? format_real(*d.residual_sup) : std::string("skipped")) << '\n';
  out << "# dropped_modes=" << d.dropped_modes << '\n';
  if (verified) out << "# verify_residual=" << format_real(*verified) << '\n';
  if (d.regime) out << "# regime=" << verdict_name(*d.regime) << '\n';
  if (d.formal) {
    out << "# formal=true note=" << d.note << '\n';
    for (const auto& r : d.truncation_norms)
      out << "# truncation radius=" << r.radius << " norm=" << format_real(r.norm) << '\n';
  }
  for (const auto& r : loss.rows) {
    out << "# norms alpha=" << format_real(r.alpha) << " f=" << format_real(r.f_norm)
        << " g=" << format_real(r.g_norm) << " ratio=" << format_real(r.ratio);
    if (r.sequence_norm) out << " sequence=" << format_real(*r.sequence_norm);
    out << '\n';
  }
  if (loss.bound_checked) out << "# bound_holds=" << (loss.bound_holds ? "true" : "false") << '\n';
}

// ---- small commands ------------------------------------------------------

struct FanArgs {
  std::int64_t lambda = 0;
  std::int64_t xi = 0;
  std::int64_t n = 1;
};

struct SobolevArgs {
  std::string f;
  double alpha = 0.0;
};

struct CohomologyArgs {
  std::int64_t n = 1;
  std::int64_t k = -1;
};

void run_cohomology(const CohomologyArgs& a, std::ostream& out, bool json) {
  std::vector<std::pair<std::int64_t, AbelianGroupDesc>> rows;
  std::vector<ClampEvent> clamps;
  std::optional<CohomologyTable> table;
  if (a.k >= 0) {
    auto r = cohomology(a.n, a.k);
    rows.emplace_back(a.k, r.group);
    clamps = r.clamps;
  } else {
    table = cohomology_table(a.n);
    for (std::size_t k = 0; k < table->groups.size(); ++k)
      rows.emplace_back(static_cast<std::int64_t>(k), table->groups[k]);
    clamps = table->clamps;
  }

  if (json) {
    Json doc{{"n", a.n}};
    Json js = Json::array();
    for (const auto& [k, g] : rows) {
      Json tor = Json::array();
      for (const auto& [j, m] : g.torsion) tor.push_back(Json{{"j", j}, {"mult", m.str()}});
      js.push_back(Json{{"k", k}, {"free_rank", g.free_rank.str()}, {"torsion", tor}});
    }
    doc["rows"] = js;
    if (table) {
      doc["euler_characteristic"] = table->euler_characteristic.str();
      doc["duality"] = table->duality;
    }
    Json cl = Json::array();
    for (const auto& c : clamps) cl.push_back(Json{{"k", c.k}, {"j", c.j}, {"exponent", c.exponent.str()}});
    doc["clamps"] = cl;
    out << doc.dump(2) << '\n';
    return;
  }
  out << "k free_rank torsion\n";
  for (const auto& [k, g] : rows) out << k << ' ' << g.free_rank.str() << ' ' << format_torsion(g) << '\n';
  if (table) {
    out << "# euler_characteristic=" << table->euler_characteristic.str() << '\n';
    out << "# duality=" << (table->duality ? "true" : "false") << '\n';
  }
  for (const auto& c : clamps)
    out << "# clamped k=" << c.k << " j=" << c.j << " exponent=" << c.exponent.str() << '\n';
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kParse: return kUsage;
    case ErrorCode::kPrecision: return kPrecision;
    default: return kDomain;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete Heisenberg group toolkit"};
  app.require_subcommand(1);
  std::string format = "text";
  std::string output;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", output, "Write data here instead of standard output");

  GroupArgs ga;
  auto* group = app.add_subcommand("group", "Heisenberg group arithmetic on element lines");
  group->add_option("op", ga.op)->required()->check(CLI::IsMember({"mul", "inv", "comm", "conj", "nf"}));
  group->add_option("--input", ga.input, "Element file (default standard input)");

  RepArgs ra;
  auto* rep = app.add_subcommand("rep", "Irreducible representations mod p");
  rep->require_subcommand(1);
  auto add_params = [&](CLI::App* c) {
    c->add_option("--p", ra.p)->required();
    c->add_option("--xi", ra.xi)->required();
    c->add_option("--eta", ra.eta, "q/p or a decimal")->required();
    c->add_option("--alpha", ra.alpha)->required();
  };
  auto* rep_char = rep->add_subcommand("character", "Character table over |m|,|k|,|s| <= range");
  add_params(rep_char);
  rep_char->add_option("--range", ra.range)->required();
  auto* rep_mat = rep->add_subcommand("matrix", "Representation matrix of one element");
  add_params(rep_mat);
  rep_mat->add_option("--element", ra.element, "\"m k s\"")->required();

  ClassifyArgs ca;
  auto* cls = app.add_subcommand("classify", "Small-divisor scan of a translation vector");
  cls->add_option("--vector", ca.vector, "t1,..,tn")->required();
  cls->add_option("--kmax", ca.kmax);
  cls->add_option("--prec", ca.prec, "Binary precision");
  cls->add_option("--s-grid", ca.s_grid);

  SolveArgs sa;
  auto* slv = app.add_subcommand("solve", "Solve f - f o gamma = g");
  slv->add_option("--g", sa.g, "Coefficient file")->required();
  slv->add_option("--u", sa.u, "u1,..,un")->required();
  slv->add_option("--alpha-list", sa.alpha_list);
  slv->add_option("--resonance-tol", sa.resonance_tol);
  slv->add_option("--prec", sa.prec);
  slv->add_option("--sign", sa.sign)->check(CLI::IsMember({-1, 1}));
  slv->add_flag("--verify", sa.verify, "Recompute the residual on the sampling grid");
  slv->add_option("--classify-kmax", sa.classify_kmax);
  slv->add_option("--truncate", sa.truncate);

  FanArgs fa;
  auto* fan = app.add_subcommand("fan", "Heisenberg fan membership");
  fan->add_option("--lambda", fa.lambda)->required();
  fan->add_option("--xi", fa.xi)->required();
  fan->add_option("--n", fa.n)->required();

  SobolevArgs so;
  auto* sob = app.add_subcommand("sobolev", "Discrete Sobolev norm of a sequence");
  sob->add_option("--f", so.f, "Coefficient file")->required();
  sob->add_option("--alpha", so.alpha)->required();

  CohomologyArgs co;
  auto* coh = app.add_subcommand("cohomology", "Integral cohomology table");
  coh->add_option("--n", co.n)->required();
  coh->add_option("--k", co.k);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: usage: " << e.what() << '\n';
    return kUsage;
  }

  const bool json = format == "json";
  std::ostringstream buf;
  try {
    if (group->parsed()) {
      run_group(ga, in, buf, json);
    } else if (rep_char->parsed()) {
      run_rep_character(ra, buf, json);
    } else if (rep_mat->parsed()) {
      run_rep_matrix(ra, buf, json);
    } else if (cls->parsed()) {
      run_classify(ca, buf, json);
    } else if (slv->parsed()) {
      run_solve(sa, buf, json);
    } else if (fan->parsed()) {
      const bool m = fan_member(fa.lambda, fa.xi, fa.n);
      if (json)
        buf << Json{{"lambda", fa.lambda}, {"xi", fa.xi}, {"n", fa.n}, {"member", m}}.dump(2) << '\n';
      else
        buf << "member=" << (m ? "true" : "false") << '\n';
    } else if (sob->parsed()) {
      const double v = sobolev_norm(read_field_file(so.f), so.alpha);
      if (json)
        buf << Json{{"alpha", so.alpha}, {"norm", real_json(v)}}.dump(2) << '\n';
      else
        buf << "norm=" << format_real(v) << '\n';
    } else if (coh->parsed()) {
      run_cohomology(co, buf, json);
    }
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }

  if (output.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      err << "error: usage: cannot write '" << output << "'\n";
      return kUsage;
    }
    f << buf.str();
  }
  return kOk;
}

}  // namespace heis::cli
