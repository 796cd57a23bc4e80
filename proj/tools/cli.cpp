#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "lvk/darboux.hpp"
#include "lvk/errors.hpp"
#include "lvk/integrator.hpp"
#include "lvk/pipeline.hpp"
#include "lvk/vector_field.hpp"

namespace lvk::cli {

namespace {

using nlohmann::json;
using Names = std::vector<std::string>;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::string system_path;
  bool json = false;
  std::string var_order;
  bool rational_only = false;
};

struct Inputs {
  Common common;
  std::string darboux_poly, multiplier, first_integral, exp_factor;
  std::vector<std::string> polys, exps;
  std::string target = "multiplier";
  std::string form, form_file, vars;
  std::string mode;
  std::vector<std::string> integrals, multipliers;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EvalOptions eval_options() { return EvalOptions{max_degree_from_env()}; }

PolyVectorField load_system(const Common& c) {
  if (c.system_path.empty()) throw UsageError("--system is required");
  return parse_system(read_file(c.system_path), eval_options());
}

std::string trim(std::string s) {
  auto ws = [](unsigned char ch) { return std::isspace(ch) != 0; };
  while (!s.empty() && ws(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && ws(s[i])) ++i;
  return s.substr(i);
}

Names split_names(const std::string& text) {
  Names out;
  std::string cur;
  std::stringstream ss(text);
  while (std::getline(ss, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<std::size_t> parse_order(const std::string& text, const Names& names) {
  if (text.empty()) return {};
  std::vector<std::size_t> order;
  for (const auto& v : split_names(text)) {
    auto it = std::find(names.begin(), names.end(), v);
    if (it == names.end()) throw UsageError("--var-order names unknown variable " + v);
    order.push_back(static_cast<std::size_t>(it - names.begin()));
  }
  std::set<std::size_t> seen(order.begin(), order.end());
  if (order.size() != names.size() || seen.size() != names.size()) {
    throw UsageError("--var-order must list every variable exactly once");
  }
  return order;
}

Certificate certificate(const std::string& name, const RatFunc& residual, const Names& names) {
  return {name, to_string(residual, names), residual.is_zero()};
}

Certificate certificate(const IdentityResidual& id, const Names& names) {
  return certificate(id.name, id.residual, names);
}

json form_json(const OneForm& w, const Names& names) {
  json a = json::array();
  for (const auto& c : w.components) a.push_back(to_string(c, names));
  return a;
}

json rational_list(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

// Remainder of a under multivariate division by the single polynomial f;
// zero exactly when f divides a.
MultiPoly remainder(MultiPoly a, const MultiPoly& f) {
  const Term lead = f.leading_term();
  std::vector<Term> rest;
  while (!a.is_zero()) {
    Term lt = a.leading_term();
    bool divides = true;
    Term q{Exponent{}, lt.coeff / lead.coeff};
    for (std::size_t i = 0; i < kMaxArity; ++i) {
      if (lt.exponent[i] < lead.exponent[i]) {
        divides = false;
        break;
      }
      q.exponent[i] = static_cast<std::uint16_t>(lt.exponent[i] - lead.exponent[i]);
    }
    if (divides) {
      a -= multiply_term(f, q);
    } else {
      rest.push_back(lt);
      a -= MultiPoly::monomial(a.arity(), lt.exponent, lt.coeff);
    }
  }
  return MultiPoly::from_terms(f.arity(), std::move(rest));
}

json groups_json(const IntegrationResult& r, const Names& names) {
  json a = json::array();
  for (const auto& sg : r.log_groups) {
    const ResidueGroup& g = sg.group;
    json o;
    Names ext = names;
    ext.push_back(residue_symbol(names));
    o["scale"] = to_string(sg.scale);
    o["minPoly"] = min_poly_string(g, ext);
    o["rational"] = g.is_rational();
    if (g.is_rational()) {
      o["residue"] = to_string(Rational(g.residue() * sg.scale));
      o["argument"] = to_string(g.rational_argument(), names);
    } else {
      o["argument"] = to_string(g.argument.to_ratfunc(), ext);
    }
    o["text"] = root_sum_string(g, names);
    a.push_back(std::move(o));
  }
  return a;
}

void require_one_object(const Inputs& in) {
  int count = !in.darboux_poly.empty() + !in.multiplier.empty() + !in.first_integral.empty() +
              !in.exp_factor.empty();
  if (count != 1) {
    throw UsageError(
        "verify needs exactly one of --darboux-poly, --multiplier, --first-integral, "
        "--exp-factor");
  }
}

void cmd_verify(const Inputs& in, AnalysisReport& rep) {
  require_one_object(in);
  PolyVectorField X = load_system(in.common);
  const Names& names = X.names();
  const EvalOptions opts = eval_options();
  json& res = rep.result;
  if (!in.darboux_poly.empty()) {
    MultiPoly f = eval_polynomial(*parse_expression(in.darboux_poly), names, opts);
    res["kind"] = "darboux-poly";
    res["object"] = to_string(f, names);
    auto k = cofactor_of(X, f);
    MultiPoly xf = lie_derivative(X, f);
    res["lieDerivative"] = to_string(xf, names);
    res["cofactor"] = k ? json(to_string(k->poly, names)) : json(nullptr);
    rep.certificates.push_back(
        certificate("X(f) mod f", RatFunc(remainder(xf, f)), names));
  } else if (!in.multiplier.empty() || !in.first_integral.empty()) {
    bool mult = !in.multiplier.empty();
    DarbouxFunction d = eval_darboux(
        *parse_expression(mult ? in.multiplier : in.first_integral), names, opts);
    res["kind"] = mult ? "multiplier" : "first-integral";
    res["object"] = to_string(d, names);
    res["logDerivative"] = form_json(log_derivative(d), names);
    IdentityCheck c = mult ? is_jacobian_multiplier(X, d) : is_first_integral(X, d);
    rep.certificates.push_back(
        certificate(mult ? "sum(w_i P_i) + div P" : "sum(w_i P_i)", c.residual, names));
  } else {
    RatFunc q = eval_ratfunc(*parse_expression(in.exp_factor), names, opts);
    ExponentialVerdict v = verify_exponential_factor(X, q.num(), q.den());
    res["kind"] = "exp-factor";
    res["object"] = "exp(" + to_string(q, names) + ")";
    res["lieDerivative"] = to_string(v.value, names);
    res["cofactor"] = v.factor ? json(to_string(v.factor->cofactor.poly, names)) : json(nullptr);
    res["reason"] = v.reason;
    const RatFunc& val = v.value;
    RatFunc frac = val.is_polynomial()
                       ? RatFunc(X.arity())
                       : RatFunc(remainder(val.num(), val.den())) / RatFunc(val.den());
    rep.certificates.push_back(certificate("non-polynomial part of X(g/h)", frac, names));
    int excess = 0;
    if (val.is_polynomial() && !val.is_zero()) {
      excess = std::max(0, val.num().total_degree() - (X.degree() - 1));
    }
    rep.certificates.push_back({"cofactor degree above m - 1", std::to_string(excess), excess == 0});
  }
  bool ok = std::all_of(rep.certificates.begin(), rep.certificates.end(),
                        [](const Certificate& c) { return c.is_zero; });
  if (!ok) {
    rep.status = Status::failed;
    rep.exit_code = 3;
  }
}

void cmd_synthesize(const Inputs& in, AnalysisReport& rep) {
  PolyVectorField X = load_system(in.common);
  const Names& names = X.names();
  const EvalOptions opts = eval_options();
  std::vector<MultiPoly> polys;
  for (const auto& p : in.polys) polys.push_back(eval_polynomial(*parse_expression(p), names, opts));
  std::vector<RatFunc> exps;
  for (const auto& e : in.exps) exps.push_back(eval_ratfunc(*parse_expression(e), names, opts));
  bool mult = in.target == "multiplier";
  SynthesisResult s = synthesize(X, polys, exps,
                                 mult ? SynthesisTarget::jacobian_multiplier
                                      : SynthesisTarget::first_integral);
  json& res = rep.result;
  res["target"] = in.target;
  json ip = json::array(), ie = json::array();
  for (const auto& p : polys) ip.push_back(to_string(p, names));
  for (const auto& e : exps) ie.push_back(to_string(e, names));
  res["polys"] = ip;
  res["expFactors"] = ie;
  res["consistent"] = s.consistent;
  res["dimension"] = s.dimension;
  json fs = json::array(), ex = json::array();
  for (std::size_t k = 0; k < s.functions.size(); ++k) {
    fs.push_back(to_string(s.functions[k], names));
    ex.push_back(rational_list(s.exponents[k]));
    IdentityCheck c = mult ? is_jacobian_multiplier(X, s.functions[k])
                           : is_first_integral(X, s.functions[k]);
    rep.certificates.push_back(certificate(
        (mult ? "multiplier " : "first integral ") + std::to_string(k + 1), c.residual, names));
  }
  res["functions"] = fs;
  res["exponents"] = ex;
  res["representative"] = s.functions.empty() ? json(nullptr) : json(fs[0]);
  if (s.functions.empty()) {
    rep.status = Status::failed;
    rep.exit_code = 3;
    rep.error_kind = "no-solution";
    rep.error_message = mult ? "no Darboux multiplier over the given factors"
                             : "no nontrivial first integral over the given factors";
  }
}

Names default_form_names(const std::vector<ExprPtr>& comps) {
  std::vector<std::string> ids;
  for (const auto& c : comps) {
    for (const auto& id : identifiers(*c)) {
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
  }
  const Names standard{"x", "y", "z", "w"};
  const std::size_t n = comps.size();
  if (n <= standard.size()) {
    Names prefix(standard.begin(), standard.begin() + static_cast<long>(n));
    bool fits = std::all_of(ids.begin(), ids.end(), [&](const std::string& id) {
      return std::find(prefix.begin(), prefix.end(), id) != prefix.end();
    });
    if (fits) return prefix;
  }
  if (ids.size() == n) {
    std::sort(ids.begin(), ids.end());
    return ids;
  }
  throw UsageError("cannot infer the variables of the form; pass --vars");
}

void cmd_integrate_form(const Inputs& in, AnalysisReport& rep) {
  if (in.form.empty() == in.form_file.empty()) {
    throw UsageError("integrate-form needs exactly one of --form, --form-file");
  }
  std::string text = in.form.empty() ? read_file(in.form_file) : in.form;
  std::replace(text.begin(), text.end(), '\n', ' ');
  auto comps = parse_expression_list(text);
  Names names;
  if (!in.vars.empty()) {
    names = split_names(in.vars);
  } else if (!in.common.system_path.empty()) {
    names = load_system(in.common).names();
  } else {
    names = default_form_names(comps);
  }
  if (names.size() != comps.size()) {
    throw UsageError("the form has " + std::to_string(comps.size()) + " components but " +
                     std::to_string(names.size()) + " variables");
  }
  const EvalOptions opts = eval_options();
  std::vector<RatFunc> w;
  for (const auto& c : comps) w.push_back(eval_ratfunc(*c, names, opts));
  OneForm form(w);
  json& res = rep.result;
  res["vars"] = names;
  res["form"] = form_json(form, names);
  ClosednessCheck cc = is_closed(form);
  res["closed"] = cc.closed;
  if (!cc.closed) {
    res["witness"] = {{"i", names[cc.i]}, {"j", names[cc.j]},
                      {"residual", to_string(cc.residual, names)}};
    rep.certificates.push_back(certificate(
        "d" + names[cc.i] + " w_" + names[cc.j] + " - d" + names[cc.j] + " w_" + names[cc.i],
        cc.residual, names));
    rep.status = Status::failed;
    rep.exit_code = 5;
    rep.error_kind = "not-closed";
    rep.error_message = "the form is not closed";
    return;
  }
  rep.certificates.push_back(certificate("closedness", cc.residual, names));
  IntegrateOptions io;
  io.order = parse_order(in.common.var_order, names);
  io.max_degree = opts.max_degree;
  IntegrationResult r = integrate_closed(form, io);
  res["psi"] = to_string(r, names);
  res["rationalPart"] = to_string(r.rat_part, names);
  res["logGroups"] = groups_json(r, names);
  res["algebraic"] = r.has_algebraic_groups();
  res["darboux"] = to_string(to_darboux(r), names);
  OneForm back = differentiate(r);
  for (std::size_t i = 0; i < names.size(); ++i) {
    rep.certificates.push_back(
        certificate("dpsi/d" + names[i] + " - w_" + names[i], back[i] - form[i], names));
  }
  if (in.common.rational_only && r.has_algebraic_groups()) {
    rep.status = Status::unavailable;
    rep.exit_code = 4;
    rep.error_kind = "algebraic";
    rep.error_message = "the potential needs an algebraic extension (--rational-only)";
  }
}

void pipeline_theorem2(const Inputs& in, const PolyVectorField& X, AnalysisReport& rep) {
  const Names& names = X.names();
  const EvalOptions opts = eval_options();
  if (in.integrals.empty()) throw UsageError("theorem2 needs --integral");
  std::vector<RatFunc> H;
  for (const auto& h : in.integrals) H.push_back(eval_ratfunc(*parse_expression(h), names, opts));
  PipelineOptions po;
  po.order = parse_order(in.common.var_order, names);
  po.max_degree = opts.max_degree;
  Theorem2Report t = theorem2_pipeline(X, H, po);
  const MultiplierDerivation& d = t.derivation;
  json& res = rep.result;
  json hs = json::array();
  for (const auto& h : H) hs.push_back(to_string(h, names));
  res["integrals"] = hs;
  Names order;
  for (auto k : d.order) order.push_back(names[k]);
  res["order"] = order;
  res["commonFactor"] = to_string(d.common_factor, names);
  res["Gamma"] = to_string(d.gamma, names);
  json gs = json::array();
  for (const auto& g : d.gammas) gs.push_back(to_string(g, names));
  res["Gammas"] = gs;
  res["h"] = to_string(d.h, names);
  res["A"] = form_json(d.a_form, names);
  res["U"] = form_json(d.u_form, names);
  res["potential"] = to_string(d.potential, names);
  res["multiplier"] = to_string(d.result, names);
  rep.warnings = d.warnings;
  for (const auto& id : d.identities) rep.certificates.push_back(certificate(id, names));
  if (in.common.rational_only && d.potential.has_algebraic_groups()) {
    rep.status = Status::unavailable;
    rep.exit_code = 4;
    rep.error_kind = "algebraic";
    rep.error_message = "the multiplier needs an algebraic extension (--rational-only)";
  }
}

void pipeline_theorem1(const Inputs& in, const PolyVectorField& X, AnalysisReport& rep) {
  const Names& names = X.names();
  const EvalOptions opts = eval_options();
  if (in.multipliers.empty()) throw UsageError("theorem1 needs --multiplier");
  std::vector<DarbouxFunction> J;
  for (const auto& m : in.multipliers) J.push_back(eval_darboux(*parse_expression(m), names, opts));
  RatioResult rr = ratio_first_integrals(X, J);
  json& res = rep.result;
  json js = json::array();
  for (const auto& j : J) js.push_back(to_string(j, names));
  res["multipliers"] = js;
  for (const auto& c : rr.multiplier_checks) rep.certificates.push_back(certificate(c, names));
  json ratios = json::array();
  for (const auto& r : rr.ratios) {
    ratios.push_back({{"numerator", "J" + std::to_string(r.numerator + 1)},
                      {"denominator", "J" + std::to_string(r.denominator + 1)},
                      {"ratio", to_string(r.ratio, names)},
                      {"form", form_json(r.form, names)}});
    rep.certificates.push_back(certificate(r.check, names));
  }
  res["ratios"] = ratios;
  const IndependenceCertificate& cert = rr.certificate;
  res["rank"] = cert.rank;
  res["expectedRank"] = rr.ratios.size();
  res["independent"] = rr.independent;
  Names cols;
  for (auto c : cert.minor_cols) cols.push_back(names[c]);
  json rows = json::array();
  for (auto r : cert.minor_rows) rows.push_back("J" + std::to_string(r + 1) + "/J" + std::to_string(rr.ratios.size() + 1));
  res["witnessMinor"] = {{"rows", rows}, {"cols", cols},
                         {"determinant", to_string(cert.minor_determinant, names)}};
  if (!rr.independent) {
    rep.certificates.push_back({"rank deficit", std::to_string(rr.ratios.size() - cert.rank), false});
    rep.status = Status::failed;
    rep.exit_code = 3;
    rep.error_kind = "dependent";
    rep.error_message = "the multiplier ratios are functionally dependent";
    return;
  }
  if (X.arity() != 2) return;
  IntegrateOptions io;
  io.max_degree = opts.max_degree;
  PlanarFirstIntegral p = first_integral_2d(X, J[0], io);
  rep.certificates.push_back(certificate(p.check, names));
  res["form"] = p.form ? form_json(*p.form, names) : json(nullptr);
  if (!p.available()) {
    res["firstIntegral"] = nullptr;
    rep.status = Status::unavailable;
    rep.exit_code = 4;
    rep.error_kind = "unavailable";
    rep.error_message = "the integrating factor is not rational; no closed-form first integral";
    return;
  }
  res["firstIntegral"] = to_string(*p.integral, names);
  res["logGroups"] = groups_json(*p.integral, names);
  if (in.common.rational_only && p.integral->has_algebraic_groups()) {
    rep.status = Status::unavailable;
    rep.exit_code = 4;
    rep.error_kind = "algebraic";
    rep.error_message = "the first integral needs an algebraic extension (--rational-only)";
  }
}

void cmd_pipeline(const Inputs& in, AnalysisReport& rep) {
  PolyVectorField X = load_system(in.common);
  rep.result["mode"] = in.mode;
  if (in.mode == "theorem2") {
    pipeline_theorem2(in, X, rep);
  } else {
    pipeline_theorem1(in, X, rep);
  }
}

void fail(AnalysisReport& rep, int code, const std::string& kind, const std::string& msg) {
  rep.status = Status::failed;
  rep.exit_code = code;
  rep.error_kind = kind;
  rep.error_message = msg;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--system", c.system_path, "system file");
  app->add_flag("--json", c.json, "emit JSON");
  app->add_option("--var-order", c.var_order, "variable order, e.g. x,z,y");
  app->add_flag("--rational-only", c.rational_only,
                "treat results needing algebraic extensions as unavailable");
}

}  // namespace

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, have = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
      have = true;
    } else if (!quoted && std::isspace(static_cast<unsigned char>(ch))) {
      if (have) out.push_back(cur);
      cur.clear();
      have = false;
    } else {
      cur += ch;
      have = true;
    }
  }
  if (have) out.push_back(cur);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Darboux and Liouvillian integrability toolkit", "lvk"};
  app.require_subcommand(1);
  Inputs in;

  auto* verify = app.add_subcommand("verify", "check a Darboux object against a system");
  add_common(verify, in.common);
  verify->add_option("--darboux-poly", in.darboux_poly, "candidate Darboux polynomial");
  verify->add_option("--multiplier", in.multiplier, "candidate Jacobian multiplier");
  verify->add_option("--first-integral", in.first_integral, "candidate first integral");
  verify->add_option("--exp-factor", in.exp_factor, "g/h of a candidate exp(g/h)");

  auto* synth = app.add_subcommand("synthesize", "solve for multipliers or first integrals");
  add_common(synth, in.common);
  synth->add_option("--poly", in.polys, "Darboux polynomial (repeatable)")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  synth->add_option("--exp-factor", in.exps, "exponential factor argument (repeatable)")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  synth->add_option("--target", in.target, "multiplier or first-integral")
      ->check(CLI::IsMember({"multiplier", "first-integral"}));

  auto* integ = app.add_subcommand("integrate-form", "integrate a closed rational 1-form");
  add_common(integ, in.common);
  integ->add_option("--form", in.form, "comma-separated components");
  integ->add_option("--form-file", in.form_file, "file with comma-separated components");
  integ->add_option("--vars", in.vars, "variable names, e.g. x,y");

  auto* pipe = app.add_subcommand("pipeline", "multiplier and first-integral constructions");
  add_common(pipe, in.common);
  pipe->add_option("--mode", in.mode, "theorem1 or theorem2")
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem2"}));
  pipe->add_option("--integral", in.integrals, "rational first integral (repeatable)")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  pipe->add_option("--multiplier", in.multipliers, "Darboux multiplier (repeatable)")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  std::vector<std::string> argv_store{"lvk"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  AnalysisReport rep;
  CLI::App* cmd = app.get_subcommands().front();
  rep.command = cmd->get_name();
  if (!in.common.system_path.empty()) {
    rep.system_name = std::filesystem::path(in.common.system_path).stem().string();
  }
  try {
    if (cmd == verify) {
      cmd_verify(in, rep);
    } else if (cmd == synth) {
      cmd_synthesize(in, rep);
    } else if (cmd == integ) {
      cmd_integrate_form(in, rep);
    } else {
      cmd_pipeline(in, rep);
    }
  } catch (const ParseError& e) {
    fail(rep, 2, "parse", e.what());
  } catch (const UsageError& e) {
    fail(rep, 2, "usage", e.what());
  } catch (const InvalidArgument& e) {
    fail(rep, 2, "invalid", e.what());
  } catch (const ArityMismatch& e) {
    fail(rep, 2, "invalid", e.what());
  } catch (const ZeroDivision& e) {
    fail(rep, 2, "invalid", e.what());
  } catch (const NotClosedError& e) {
    fail(rep, 5, "not-closed", e.what());
  } catch (const VerificationFailure& e) {
    fail(rep, 3, "verification", e.what());
  } catch (const DegreeLimitExceeded& e) {
    fail(rep, 3, "degree-limit", e.what());
  } catch (const NonConstantResidue& e) {
    fail(rep, 3, "verification", e.what());
  } catch (const std::exception& e) {
    fail(rep, 1, "internal", e.what());
  }
  if (!rep.error_message.empty()) err << "error: " << rep.error_message << "\n";
  out << (in.common.json ? render_json(rep) : render_text(rep));
  return rep.exit_code;
}

}  // namespace lvk::cli
