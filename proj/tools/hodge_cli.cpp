#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hodge/errors.hpp"
#include "hodge/expr.hpp"
#include "hodge/fermat.hpp"
#include "hodge/gauss_manin.hpp"
#include "hodge/hypergeo.hpp"
#include "hodge/ideal.hpp"
#include "hodge/series_io.hpp"
#include "hodge/series_solve.hpp"

namespace {

using namespace hodge;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUnknown = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitResource = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& tok : split_list(s)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidInput("'" + tok + "' is not an integer");
    }
  }
  return out;
}

PolyContext context_from(const std::string& vars, const std::string& laurent) {
  auto names = split_list(vars);
  if (names.empty()) throw InvalidInput("--vars must name at least one variable");
  return PolyContext(names, laurent.empty() ? std::vector<std::string>{} : split_list(laurent));
}

PolyContext context_from(const json& j) {
  try {
    return PolyContext(j.at("vars").get<std::vector<std::string>>(),
                       j.value("laurent", std::vector<std::string>{}));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("input needs a string list 'vars': ") + e.what());
  }
}

FormMatrix<Rational> matrix_from(const json& j, const PolyContext& ctx) {
  try {
    return parse_form_matrix(j.at("matrix").get<std::vector<std::vector<std::string>>>(), ctx);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("input needs 'matrix' as rows of 1-form expressions: ") + e.what());
  }
}

HodgeBlocks blocks_from(const json& j) {
  try {
    return HodgeBlocks(j.at("blocks").get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("input needs integer list 'blocks': ") + e.what());
  }
}

std::vector<OneForm<Rational>> forms_from(const std::vector<std::string>& texts, const PolyContext& ctx) {
  std::vector<OneForm<Rational>> out;
  for (const auto& t : texts) out.push_back(parse_oneform(t, ctx));
  return out;
}

IdealGens<Rational> ideal_from(const std::vector<std::string>& texts, const PolyContext& ctx) {
  IdealGens<Rational> out;
  for (const auto& t : texts) out.generators.push_back(parse_polynomial(t, ctx));
  return out;
}

json matrix_json(const PolyMatrix<Rational>& m, const PolyContext& ctx) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(print_polynomial(m(i, j), ctx));
    rows.push_back(std::move(row));
  }
  return rows;
}

json form_matrix_json(const FormMatrix<Rational>& a, const PolyContext& ctx) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(print_oneform(a.entry(i, j), ctx));
    rows.push_back(std::move(row));
  }
  return rows;
}

json forms_json(const std::vector<OneForm<Rational>>& ws, const PolyContext& ctx) {
  json out = json::array();
  for (const auto& w : ws) out.push_back(print_oneform(w, ctx));
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Outcome {
  std::string text;
  int code = kExitOk;
};

struct Options {
  std::string output;
  unsigned threads = 1;

  std::string config;
  std::string beta;
  std::string input;
  std::string vars;
  std::string laurent;
  std::string field;
  std::string poly;
  std::string point;
  std::string weights;
  std::vector<std::string> forms;
  std::vector<std::string> ideal;
  std::vector<std::string> with;
  int truncation = 3;
  int d = 4;
  int n = 2;
  int order = 4;
  int deg = -1;
  int cofactor_deg = -1;
  std::uint64_t p = 2;
  int big_n = 2;
  int grid = 20;
  double tol = 1e-8;
  double t1 = 0.5;
};

Outcome run_periods(const Options& o) {
  FamilyConfig cfg = parse_family_config(read_file(o.config));
  if (!o.beta.empty()) cfg.betas = {make_beta(int_list(o.beta), cfg.spec.d)};
  json out = json::array();
  for (const auto& b : cfg.betas) {
    const PeriodSeries ps = period_series(b, cfg.spec, o.threads);
    out.push_back({{"beta", b.beta}, {"k", b.k}, {"normalization", ps.normalization}, {"series", series_to_json(ps.series)}});
  }
  return {out.dump() + "\n"};
}

Outcome run_denominators(const Options& o) {
  return {denominator_table(parse_family_config(read_file(o.config)), o.threads)};
}

Outcome run_closed_form(const Options& o) {
  return {serialize_series(quartic_closed_form_series(o.truncation)) + "\n"};
}

Outcome run_griffiths(const Options& o) {
  std::string out = "index,beta,k,monomial\n";
  int i = 0;
  for (const auto& b : griffiths_basis(o.d, o.n)) {
    std::string bs;
    for (std::size_t j = 0; j < b.beta.size(); ++j) bs += (j ? " " : "") + std::to_string(b.beta[j]);
    out += std::to_string(i++) + "," + bs + "," + std::to_string(b.k) + "," + render_monomial(b.beta) + "\n";
  }
  return {out};
}

Outcome run_foliation_check(const Options& o) {
  const json j = read_json(o.input);
  const PolyContext ctx = context_from(j);
  const bool ok = integrability_check(matrix_from(j, ctx));
  return {std::string("integrable\n") + (ok ? "true" : "false") + "\n"};
}

Outcome run_gm(const Options& o) {
  const json j = read_json(o.input);
  const PolyContext ctx = context_from(j);
  const FormMatrix<Rational> b = matrix_from(j, ctx);
  const HodgeBlocks blocks = blocks_from(j);
  const GaussManinAssembly gm = gm_assemble(b, ctx, blocks);
  const FoliationEquations eqs = foliation_equations(b, gm);
  json out;
  out["vars"] = gm.context.names;
  out["S"] = matrix_json(gm.s, gm.context);
  out["S_inv"] = matrix_json(gm.s_inv, gm.context);
  out["C"] = matrix_json(gm.c, gm.context);
  out["A"] = form_matrix_json(gm.a, gm.context);
  out["foliation"] = forms_json(gm.foliation, gm.context);
  out["equations"] = {{"ivhs", forms_json(eqs.ivhs, gm.context)},
                      {"middle", forms_json(eqs.middle, gm.context)},
                      {"lower", forms_json(eqs.lower, gm.context)}};
  out["spans_agree"] = eqs.spans_agree;
  return {out.dump(2) + "\n"};
}

Outcome run_pcurvature(const Options& o) {
  const PolyContext ctx = context_from(o.vars, o.laurent);
  const VectorField<Rational> v = parse_vector_field(o.field, ctx);
  if (o.forms.empty()) {
    const VectorField<Fp> vp = vf_pow_p(v, o.p);
    return {print_vector_field(vp, ctx) + "\n"};
  }
  const auto omega = forms_from(o.forms, ctx);
  const auto ideal = ideal_from(o.ideal, ctx);
  const int deg = o.deg >= 0 ? o.deg : default_degree_bound(ideal);
  const Verdict verdict = pcurvature_tangency(v, omega, ideal, o.p, deg);
  return {std::string(to_string(verdict)) + "\n", verdict == Verdict::Yes ? kExitOk : kExitUnknown};
}

Outcome run_sch(const Options& o) {
  const PolyContext ctx = context_from(o.vars, o.laurent);
  const VectorField<Rational> v = parse_vector_field(o.field, ctx);
  std::vector<VectorField<Rational>> ws;
  for (const auto& w : o.with) ws.push_back(parse_vector_field(w, ctx));
  if (!o.point.empty()) {
    std::vector<Rational> t;
    for (const auto& tok : split_list(o.point)) t.push_back(Rational::parse(tok));
    if (t.size() != ctx.size()) throw VariableCountMismatch("point has the wrong number of coordinates");
    return {std::string(sch_contains_point<Rational>(v, ws, t) ? "true" : "false") + "\n"};
  }
  std::string out = "generator\n";
  for (const auto& g : sch_ideal(v, ws).generators) out += print_polynomial(g, ctx) + "\n";
  return {out};
}

Outcome run_tangency(const Options& o) {
  const PolyContext ctx = context_from(o.vars, o.laurent);
  const VectorField<Rational> v = parse_vector_field(o.field, ctx);
  const auto omega = forms_from(o.forms, ctx);
  const auto ideal = ideal_from(o.ideal, ctx);
  const int deg = o.deg >= 0 ? o.deg : default_degree_bound(ideal);
  const Verdict verdict = tangency_check(v, omega, ideal, deg);
  return {std::string(to_string(verdict)) + "\n", verdict == Verdict::Yes ? kExitOk : kExitUnknown};
}

Outcome run_membership(const Options& o) {
  const PolyContext ctx = context_from(o.vars, o.laurent);
  const Polynomial f = parse_polynomial(o.poly, ctx);
  const auto ideal = ideal_from(o.ideal, ctx);
  const int deg = o.deg >= 0 ? o.deg : default_degree_bound(ideal);
  const Verdict verdict = ideal_membership_bounded(f, ideal, deg);
  return {std::string(to_string(verdict)) + "\n", verdict == Verdict::Yes ? kExitOk : kExitUnknown};
}

Outcome run_dual_theta(const Options& o) {
  const PolyContext ctx = context_from(o.vars, o.laurent);
  const auto omega = forms_from(o.forms, ctx);
  const int deg = o.deg >= 0 ? o.deg : 1;
  std::string out = "field\n";
  if (o.ideal.empty()) {
    for (const auto& v : dual_theta_bounded(omega, deg)) out += print_vector_field(v, ctx) + "\n";
  } else {
    const auto ideal = ideal_from(o.ideal, ctx);
    const int cdeg = o.cofactor_deg >= 0 ? o.cofactor_deg : default_degree_bound(ideal);
    for (const auto& v : tangent_fields_bounded(omega, ideal, deg, cdeg)) out += print_vector_field(v, ctx) + "\n";
  }
  return {out};
}

Outcome run_solve_linear(const Options& o) {
  const json j = read_json(o.input);
  const PolyContext ctx = context_from(j);
  const PolyMatrix<Rational> y = linear_solve_series(matrix_from(j, ctx), o.order);
  json rows = json::array();
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < y.cols(); ++k) row.push_back(series_to_json(y(i, k)));
    rows.push_back(std::move(row));
  }
  return {rows.dump() + "\n"};
}

Outcome run_locus(const Options& o) {
  const auto grid = uniform_grid(o.grid);
  const LocusSample s = sample_locus(o.big_n, grid, o.tol);
  std::string out = "t1,t2,residual\n";
  for (const auto& pt : s.points) out += fmt_double(pt.t1) + "," + fmt_double(pt.t2) + "," + fmt_double(pt.residual) + "\n";
  bool flagged = false;
  for (const auto& pt : s.points) flagged |= pt.flagged;
  for (double t : s.skipped) std::cerr << "skipped t1 = " << fmt_double(t) << ": target outside the sampled range\n";
  if (flagged) std::cerr << "some residuals exceed the tolerance\n";
  return {out, flagged ? kExitUnknown : kExitOk};
}

Outcome run_witness(const Options& o) {
  const std::vector<double> grid{o.t1};
  const LocusSample s = sample_locus(o.big_n, grid, o.tol);
  if (s.points.empty()) throw TargetOutOfRange("tau(t1)/N is outside tau([0.01, 0.99])");
  const auto& pt = s.points.front();
  return {"t1,t2,residual\n" + fmt_double(pt.t1) + "," + fmt_double(pt.t2) + "," + fmt_double(pt.residual) + "\n",
          pt.flagged ? kExitUnknown : kExitOk};
}

Outcome run_steenbrink(const Options& o) {
  const std::vector<int> w = o.weights.empty() ? std::vector<int>(static_cast<std::size_t>(o.n + 2), 1) : int_list(o.weights);
  return {std::string(steenbrink_hodge_tate(o.d, w, o.n) ? "true" : "false") + "\n"};
}

void add_vars(CLI::App* c, Options& o) {
  c->add_option("--vars", o.vars, "comma-separated variable names")->required();
  c->add_option("--laurent", o.laurent, "comma-separated variables allowed negative exponents");
}

void add_locus_options(CLI::App* c, Options& o) {
  c->add_option("--N", o.big_n, "isogeny degree")->required()->check(CLI::PositiveNumber);
  c->add_option("--grid", o.grid, "number of t1 grid points")->check(CLI::PositiveNumber);
  c->add_option("--tol", o.tol, "residual tolerance")->check(CLI::PositiveNumber);
}

void add_witness_options(CLI::App* c, Options& o) {
  c->add_option("--N", o.big_n, "isogeny degree")->required()->check(CLI::PositiveNumber);
  c->add_option("--t1", o.t1, "first coordinate in [0.01, 0.99]")->required();
  c->add_option("--tol", o.tol, "residual tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periods, Gauss-Manin foliations and local-global checks"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--output", o.output, "write the result to this file instead of standard output");
  app.add_option("--threads", o.threads, "worker thread cap")->check(CLI::PositiveNumber);

  std::vector<std::pair<CLI::App*, Outcome (*)(const Options&)>> cmds;

  auto* periods = app.add_subcommand("periods", "truncated period series as canonical series documents");
  periods->add_option("--config", o.config, "family configuration (JSON)")->required();
  periods->add_option("--beta", o.beta, "single beta, comma-separated; default: the config's list");
  cmds.emplace_back(periods, run_periods);

  auto* denominators = app.add_subcommand("denominators", "denominator table of the configured betas");
  denominators->add_option("--config", o.config, "family configuration (JSON)")->required();
  cmds.emplace_back(denominators, run_denominators);

  auto* closed = app.add_subcommand("closed-form", "quartic-surface period series from the closed form");
  closed->add_option("--truncation", o.truncation, "total-degree bound")->check(CLI::NonNegativeNumber);
  cmds.emplace_back(closed, run_closed_form);

  auto* griffiths = app.add_subcommand("griffiths", "Griffiths basis exponents");
  griffiths->add_option("--d", o.d, "degree")->required();
  griffiths->add_option("--n", o.n, "dimension (even)")->required();
  cmds.emplace_back(griffiths, run_griffiths);

  auto* fol = app.add_subcommand("foliation-check", "exact integrability dB = B ^ B");
  fol->add_option("--input", o.input, "JSON with vars, laurent, matrix")->required();
  cmds.emplace_back(fol, run_foliation_check);

  auto* gm = app.add_subcommand("gm", "assemble S, A and the foliation forms");
  gm->add_option("--input", o.input, "JSON with vars, laurent, matrix, blocks")->required();
  cmds.emplace_back(gm, run_gm);

  auto* pc = app.add_subcommand("pcurvature", "v^p mod p, or the tangency of v^p");
  add_vars(pc, o);
  pc->add_option("--field", o.field, "vector field expression")->required();
  pc->add_option("--p", o.p, "prime")->required();
  pc->add_option("--form", o.forms, "1-form generator (repeatable)");
  pc->add_option("--ideal", o.ideal, "ideal generator (repeatable)");
  pc->add_option("--deg", o.deg, "cofactor degree bound");
  cmds.emplace_back(pc, run_pcurvature);

  auto* sch = app.add_subcommand("sch", "minors cutting out v in span(w)");
  add_vars(sch, o);
  sch->add_option("--field", o.field, "vector field v")->required();
  sch->add_option("--with", o.with, "generator w (repeatable)")->required();
  sch->add_option("--point", o.point, "test membership of this point instead");
  cmds.emplace_back(sch, run_sch);

  auto* tan = app.add_subcommand("tangency", "bounded tangency of v to the forms modulo an ideal");
  add_vars(tan, o);
  tan->add_option("--field", o.field, "vector field")->required();
  tan->add_option("--form", o.forms, "1-form generator (repeatable)")->required();
  tan->add_option("--ideal", o.ideal, "ideal generator (repeatable)");
  tan->add_option("--deg", o.deg, "cofactor degree bound");
  cmds.emplace_back(tan, run_tangency);

  auto* mem = app.add_subcommand("membership", "bounded ideal membership");
  add_vars(mem, o);
  mem->add_option("--poly", o.poly, "polynomial")->required();
  mem->add_option("--ideal", o.ideal, "ideal generator (repeatable)");
  mem->add_option("--deg", o.deg, "cofactor degree bound");
  cmds.emplace_back(mem, run_membership);

  auto* dual = app.add_subcommand("dual-theta", "fields annihilating the forms, optionally modulo an ideal");
  add_vars(dual, o);
  dual->add_option("--form", o.forms, "1-form generator (repeatable)")->required();
  dual->add_option("--ideal", o.ideal, "ideal generator (repeatable)");
  dual->add_option("--deg", o.deg, "field degree bound");
  dual->add_option("--cofactor-deg", o.cofactor_deg, "cofactor degree bound");
  cmds.emplace_back(dual, run_dual_theta);

  auto* solve = app.add_subcommand("solve-linear", "fundamental matrix of dY = B Y with Y(0) = I");
  solve->add_option("--input", o.input, "JSON with vars, matrix")->required();
  solve->add_option("--order", o.order, "truncation order")->check(CLI::NonNegativeNumber);
  cmds.emplace_back(solve, run_solve_linear);

  auto* locus = app.add_subcommand("hypergeo-locus", "sample tau(t1) = N tau(t2)");
  add_locus_options(locus, o);
  cmds.emplace_back(locus, run_locus);

  auto* witness = app.add_subcommand("hypergeo-witness", "one point of tau(t1) = N tau(t2)");
  add_witness_options(witness, o);
  cmds.emplace_back(witness, run_witness);

  auto* hyp = app.add_subcommand("hypergeo", "hypergeometric locus tools");
  hyp->require_subcommand(1, 1);
  auto* hyp_locus = hyp->add_subcommand("locus", "sample tau(t1) = N tau(t2)");
  add_locus_options(hyp_locus, o);
  cmds.emplace_back(hyp_locus, run_locus);
  auto* hyp_witness = hyp->add_subcommand("witness", "one point of tau(t1) = N tau(t2)");
  add_witness_options(hyp_witness, o);
  cmds.emplace_back(hyp_witness, run_witness);

  auto* st = app.add_subcommand("steenbrink", "Hodge-Tate criterion for weighted hypersurfaces");
  st->add_option("--d", o.d, "degree")->required();
  st->add_option("--n", o.n, "dimension (even)")->required();
  st->add_option("--weights", o.weights, "v0..v_{n+1}, comma-separated, v0 = 1; default all 1");
  cmds.emplace_back(st, run_steenbrink);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    Outcome out;
    for (const auto& [cmd, fn] : cmds)
      if (cmd->parsed()) out = fn(o);
    if (o.output.empty()) {
      std::cout << out.text;
    } else {
      std::ofstream f(o.output, std::ios::binary);
      if (!f) throw InvalidInput("cannot write '" + o.output + "'");
      f << out.text;
    }
    return out.code;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
