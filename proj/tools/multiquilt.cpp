// multiquilt: one binary exposing enumeration, face lattices, relation
// systems, gluing, surface export, A-infinity checks and the strip-model
// numeric experiments.
//
// Conventions:
//  - every report is canonical-ordered JSON embedding the tool version, the
//    full configuration and the seed; identical config => byte-identical
//    output (criterion: determinism)
//  - exit 0: success; exit 1: domain error, with a machine-readable error
//    record on stdout; exit 2: usage error (bad flags, unreadable input)
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "multiquilt/ainfty.hpp"
#include "multiquilt/ainfty_io.hpp"
#include "multiquilt/floer.hpp"
#include "multiquilt/floer_glue.hpp"
#include "multiquilt/moduli.hpp"
#include "multiquilt/rng.hpp"
#include "multiquilt/surfaces.hpp"
#include "multiquilt/surfaces_io.hpp"
#include "multiquilt/tree_io.hpp"
#include "multiquilt/trees.hpp"

namespace mq = multiquilt;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

/// Usage-level failure (unreadable input, malformed flags): exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write output file: " + path);
  out << text;
}

/// Report skeleton: tool identity, subcommand, config echo, seed.
json report_head(const std::string& sub, const json& config, unsigned long long seed) {
  json j;
  j["tool"] = "multiquilt";
  j["version"] = kVersion;
  j["subcommand"] = sub;
  j["config"] = config;
  j["seed"] = seed;
  return j;
}

void emit(const json& report, const std::string& out_path) {
  write_text(out_path, report.dump(2) + "\n");
}

json rats_to_json(const std::vector<mq::Rat>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(mq::rat_to_json(r));
  return a;
}

/// "k:c[,k:c...]" -> mode coefficient map.
std::map<int, double> parse_modes(const std::string& text) {
  std::map<int, double> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto pos = item.find(':');
    if (pos == std::string::npos) throw UsageError("mode spec must be k:c[,k:c...], got: " + text);
    try {
      c[std::stoi(item.substr(0, pos))] = std::stod(item.substr(pos + 1));
    } catch (const std::exception&) {
      throw UsageError("mode spec must be k:c[,k:c...], got: " + text);
    }
  }
  if (c.empty()) throw UsageError("mode spec must be k:c[,k:c...], got: " + text);
  return c;
}

json modes_to_json(const std::map<int, double>& c) {
  json a = json::array();
  for (const auto& [k, v] : c) a.push_back(json{{"k", k}, {"c", v}});
  return a;
}

std::string format_double(double v) {
  json j = v;
  return j.dump();
}

// ---------------------------------------------------------------------------
// Subcommand payloads
// ---------------------------------------------------------------------------

int run_enumerate(int d, bool uncolored, const std::string& out) {
  json config{{"d", d}, {"colored", !uncolored}, {"out", out}};
  std::vector<mq::RibbonTree> strata = mq::enumerate_strata(d, !uncolored);
  json rep = report_head("enumerate", config, 0);
  rep["count"] = strata.size();
  json elems = json::array();
  for (const auto& t : strata) {
    json e = mq::tree_to_json(t);
    e["dim"] = mq::stratum_dim(t);
    elems.push_back(std::move(e));
  }
  rep["strata"] = std::move(elems);
  emit(rep, out);
  return 0;
}

int run_faces(int d, const std::string& out) {
  json config{{"d", d}, {"out", out}};
  mq::FaceLattice L = mq::face_lattice(d);
  json rep = report_head("faces", config, 0);
  rep["num_strata"] = L.elements.size();
  rep["codim1_count"] = L.codim1_count();
  rep["euler_characteristic"] = L.euler_characteristic();
  rep["f_vector"] = L.f_vector();
  json elems = json::array();
  for (size_t i = 0; i < L.elements.size(); ++i) {
    json e = mq::tree_to_json(L.elements[i]);
    e["dim"] = L.dims[i];
    elems.push_back(std::move(e));
  }
  rep["strata"] = std::move(elems);
  json covers = json::array();
  for (const auto& [lo, hi] : L.covers) covers.push_back(json::array({lo, hi}));
  rep["covers"] = std::move(covers);
  emit(rep, out);
  return 0;
}

int run_relations(const std::string& tree_path, const std::string& out) {
  json config{{"tree", tree_path}, {"out", out}};
  mq::RibbonTree t = mq::tree_from_json(load_json(tree_path));
  mq::RelationSystem sys = mq::relations(t);
  json rep = report_head("relations", config, 0);
  rep["variables"] = sys.variables;
  rep["rank"] = sys.rank();
  json eqs = json::array();
  for (const auto& row : sys.equations) eqs.push_back(row);
  rep["equations"] = std::move(eqs);
  rep["cone_dim"] = mq::cone_dim(t);
  emit(rep, out);
  return 0;
}

int run_glue(int type, double R, double delta, const std::string& r1_path,
             const std::string& r2_path, int i, const std::string& r0_path,
             const std::vector<std::string>& part_paths, const std::string& out) {
  json config{{"type", type}, {"out", out}};
  mq::GluingParameter g =
      (delta > 0) ? mq::GluingParameter::from_delta(delta) : mq::GluingParameter::from_R(R);
  config["R"] = g.R;
  config["delta"] = g.delta;
  mq::MetricColoredTree glued;
  if (type == 1) {
    if (r1_path.empty() || r2_path.empty())
      throw UsageError("glue --type 1 requires --r1 and --r2");
    config["r1"] = r1_path;
    config["r2"] = r2_path;
    config["i"] = i;
    glued = mq::glue_type1(mq::metric_from_json(load_json(r1_path)),
                           mq::metric_from_json(load_json(r2_path)), i, g);
  } else if (type == 2) {
    if (r0_path.empty() || part_paths.empty())
      throw UsageError("glue --type 2 requires --r0 and at least one --part");
    config["r0"] = r0_path;
    config["parts"] = part_paths;
    std::vector<mq::MetricColoredTree> parts;
    for (const auto& p : part_paths) parts.push_back(mq::metric_from_json(load_json(p)));
    glued = mq::glue_type2(mq::metric_from_json(load_json(r0_path)), parts, g);
  } else {
    throw UsageError("glue --type must be 1 or 2");
  }
  json rep = report_head("glue", config, 0);
  rep["result"] = mq::metric_to_json(glued);
  rep["admissible"] = mq::is_admissible(glued);
  emit(rep, out);
  return 0;
}

int run_surface(const std::string& tree_path, const std::string& svg_path, double clip,
                const std::string& out) {
  json config{{"tree", tree_path}, {"svg", svg_path}, {"clip", clip}, {"out", out}};
  mq::MetricTree mt = mq::metric_from_json(load_json(tree_path));
  mq::QuiltSurface s =
      mt.tree.has_colors() ? mq::surface_from_colored_tree(mt) : mq::surface_from_tree(mt);
  if (!svg_path.empty()) write_text(svg_path, mq::surface_to_svg(s, clip));
  json rep = report_head("surface", config, 0);
  rep["surface"] = mq::surface_to_json(s);
  rep["num_rects"] = s.rects.size();
  rep["num_disks"] = s.disks.size();
  rep["num_seam_branches"] = s.seams.size();
  emit(rep, out);
  return 0;
}

int run_ainfty_check(const std::string& a_path, const std::string& b_path,
                     const std::string& f_path, int dmax, bool mod2, const std::string& out) {
  json config{{"a", a_path}, {"b", b_path}, {"functor", f_path}, {"dmax", dmax},
              {"mod2", mod2},  {"out", out}};
  mq::AInftyData A = mq::ainfty_from_json(load_json(a_path));
  json rep = report_head("ainfty-check", config, 0);
  std::vector<mq::Rat> residuals;
  if (!f_path.empty()) {
    mq::AInftyData B = b_path.empty() ? A : mq::ainfty_from_json(load_json(b_path));
    mq::FunctorData F = mq::functor_from_json(load_json(f_path));
    residuals = mq::check_functor(A, B, F, dmax, mod2);
    rep["check"] = "functor";
  } else {
    residuals = mq::check_ainfty(A, dmax, mod2);
    rep["check"] = "ainfty";
  }
  rep["residuals"] = rats_to_json(residuals);
  bool all_zero = true;
  for (const auto& r : residuals) all_zero = all_zero && r == mq::Rat(0);
  rep["all_zero"] = all_zero;
  emit(rep, out);
  return 0;
}

int run_decay(double alpha, const std::string& modes, double S, int n_s, int n_t,
              const std::string& plot, const std::string& out) {
  json config{{"alpha", alpha}, {"modes", modes}, {"S", S},     {"n_s", n_s},
              {"n_t", n_t},     {"plot", plot},   {"out", out}};
  mq::StripProblem pr;
  pr.alpha = alpha;
  pr.S = S;
  pr.n_s = n_s;
  pr.n_t = n_t;
  pr.validate();
  std::map<int, double> c = parse_modes(modes);
  mq::ModeSet m{alpha, c};
  double kappa = m.kappa();
  mq::DiscreteMap u = mq::exact_modes(alpha, c, S, n_s, n_t);
  mq::EnergyProfile ep = mq::energy_profile(u);
  double conv = mq::check_convexity(u, n_s / 4, 3 * n_s / 4);
  json rep = report_head("decay", config, 0);
  rep["modes"] = modes_to_json(c);
  rep["kappa_exact"] = kappa;
  rep["kappa_hat"] = ep.kappa_hat;
  rep["kappa_rel_error"] = std::abs(ep.kappa_hat - kappa) / kappa;
  rep["energy"] = ep.E;
  rep["convexity_min_ratio"] = conv;
  rep["convexity_window"] = json::array({n_s / 4, 3 * n_s / 4});
  json quant = json::array();
  for (double T : {1.0, 2.0, 3.0}) {
    if (T >= S) break;
    auto [E_T, bound] = mq::check_quantization(u, T, ep.kappa_hat);
    quant.push_back(json{{"T", T}, {"E_T", E_T}, {"bound", bound}, {"ok", E_T <= bound * 1.05}});
  }
  rep["quantization"] = std::move(quant);
  if (!plot.empty()) {
    std::ostringstream cols;
    cols << "# s f(s)\n";
    for (int i = 0; i <= n_s; ++i)
      cols << format_double(u.s_of(i)) << " " << format_double(ep.f[static_cast<size_t>(i)])
           << "\n";
    write_text(plot, cols.str());
  }
  emit(rep, out);
  return 0;
}

int run_preglue(double alpha, const std::string& m1_spec, const std::string& m2_spec,
                std::vector<double> Rs, double S, int n_s, int n_t, double p,
                const std::string& plot, const std::string& out) {
  if (Rs.empty()) Rs = {6.0, 8.0, 10.0, 12.0, 14.0};
  json config{{"alpha", alpha}, {"m1", m1_spec}, {"m2", m2_spec}, {"R", Rs}, {"S", S},
              {"n_s", n_s},     {"n_t", n_t},    {"p", p},        {"plot", plot}, {"out", out}};
  mq::ModeSet m1{alpha, parse_modes(m1_spec)}, m2{alpha, parse_modes(m2_spec)};
  double kappa = std::min(m1.kappa(), m2.kappa());
  json rows = json::array();
  std::vector<double> log_eps;
  for (double R : Rs) {
    mq::PregluedModes pg = mq::make_preglued_modes(m1, m2, R);
    double eps = mq::preglue_epsilon(pg, S, n_s, n_t, p);
    rows.push_back(json{{"R", R}, {"epsilon", eps}});
    log_eps.push_back(std::log(eps));
  }
  // least-squares slope of log eps against R
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < Rs.size(); ++i) {
    sx += Rs[i];
    sy += log_eps[i];
    sxx += Rs[i] * Rs[i];
    sxy += Rs[i] * log_eps[i];
  }
  double n = static_cast<double>(Rs.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  json rep = report_head("preglue", config, 0);
  rep["kappa"] = kappa;
  rep["epsilon"] = rows;
  rep["log_slope"] = slope;
  rep["expected_slope"] = -kappa / 2;
  if (!plot.empty()) {
    std::ostringstream cols;
    cols << "# R epsilon\n";
    for (const auto& row : rows)
      cols << format_double(row.at("R").get<double>()) << " "
           << format_double(row.at("epsilon").get<double>()) << "\n";
    write_text(plot, cols.str());
  }
  emit(rep, out);
  return 0;
}

int run_glue_newton(double alpha, double eta, double R, double S, int n_s, int n_t, double p,
                    double A, double tol, unsigned long long seed, const std::string& out) {
  json config{{"alpha", alpha}, {"eta", eta}, {"R", R},     {"S", S},    {"n_s", n_s},
              {"n_t", n_t},     {"p", p},     {"A", A},     {"tol", tol}, {"out", out}};
  mq::StripProblem pr;
  pr.alpha = alpha;
  pr.S = S;
  pr.n_s = n_s;
  pr.n_t = n_t;
  pr.p = p;
  pr.hamiltonian = mq::cubic_hamiltonian(eta);
  pr.validate();
  mq::ModeSet m1{alpha, {{-1, A * std::exp((alpha - M_PI) * (S - R / 2))}}};
  mq::ModeSet m2{alpha, {{0, A * std::exp(-alpha * (S - R / 2))}}};
  mq::PregluedModes pg = mq::make_preglued_modes(m1, m2, R);
  mq::DiscreteMap u_R = mq::sample_preglued(pg, S, n_s, n_t);
  auto [x, rpt] = mq::newton_glue(pr, u_R, R, tol, 25, 5, seed);
  json rep = report_head("glue-newton", config, seed);
  rep["converged"] = rpt.converged;
  rep["irregular"] = rpt.irregular;
  rep["message"] = rpt.message;
  rep["newton_residuals"] = rpt.newton_residuals;
  rep["eps_R"] = rpt.eps_R;
  rep["C_hat"] = rpt.C_hat;
  rep["distance"] = rpt.distance;
  rep["ift_bound"] = rpt.ift_bound;
  rep["bound_satisfied"] = rpt.bound_satisfied;
  emit(rep, out);
  return rpt.irregular ? 1 : 0;
}

int run_embed(std::vector<double> Ss, double p, int trials, unsigned long long seed,
              const std::string& out) {
  if (Ss.empty()) Ss = {8.0, 16.0, 32.0, 64.0};
  json config{{"S", Ss}, {"p", p}, {"trials", trials}, {"out", out}};
  json rows = json::array();
  double cmin = 0, cmax = 0;
  bool first = true;
  for (double S : Ss) {
    double c = mq::embedding_constant(S, p, trials, seed);
    rows.push_back(json{{"S", S}, {"constant", c}});
    if (first || c < cmin) cmin = c;
    if (first || c > cmax) cmax = c;
    first = false;
  }
  json rep = report_head("embed", config, seed);
  rep["constants"] = rows;
  rep["variation"] = (cmax - cmin) / cmin;
  emit(rep, out);
  return 0;
}

int run_surject(double alpha, double eta, double R, double eps, int candidates, double S, int n_s,
                int n_t, double A, unsigned long long seed, const std::string& out) {
  json config{{"alpha", alpha}, {"eta", eta}, {"R", R},         {"eps", eps},
              {"candidates", candidates},     {"S", S},         {"n_s", n_s},
              {"n_t", n_t},     {"A", A},     {"out", out}};
  mq::StripProblem pr;
  pr.alpha = alpha;
  pr.S = S;
  pr.n_s = n_s;
  pr.n_t = n_t;
  pr.hamiltonian = mq::cubic_hamiltonian(eta);
  pr.validate();
  mq::BrokenPair b{mq::ModeSet{alpha, {{-1, A * std::exp((alpha - M_PI) * (S - R / 2))}}},
                   mq::ModeSet{alpha, {{0, A * std::exp(-alpha * (S - R / 2))}}}};
  mq::SurjectivityReport rpt = mq::surjectivity_probe(pr, b, R, eps, candidates, seed);
  json rep = report_head("surject", config, seed);
  rep["pass"] = rpt.pass;
  rep["max_min_distance"] = rpt.max_min_distance;
  rep["distances"] = rpt.distances;
  rep["family_R"] = rpt.family_R;
  rep["warning"] = rpt.warning;
  emit(rep, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiquilt: moduli, quilted surfaces and strip-model numerics"};
  app.require_subcommand(1);
  app.set_version_flag("--cli-version", kVersion);

  // enumerate
  auto* cmd_enum = app.add_subcommand("enumerate", "enumerate strata of the moduli of trees");
  int en_d = 2;
  bool en_uncolored = false;
  std::string en_out;
  cmd_enum->add_option("--d", en_d, "number of inputs")->required();
  cmd_enum->add_flag("--uncolored", en_uncolored, "enumerate uncolored (associahedron) strata");
  cmd_enum->add_option("--out", en_out, "output file (default stdout)");

  // faces
  auto* cmd_faces = app.add_subcommand("faces", "face lattice of the compactified moduli");
  int fa_d = 2;
  std::string fa_out;
  cmd_faces->add_option("--d", fa_d, "number of inputs")->required();
  cmd_faces->add_option("--out", fa_out, "output file (default stdout)");

  // relations
  auto* cmd_rel = app.add_subcommand("relations", "equidistance relation system of a colored tree");
  std::string re_tree, re_out;
  cmd_rel->add_option("--tree", re_tree, "tree JSON file")->required();
  cmd_rel->add_option("--out", re_out, "output file (default stdout)");

  // glue
  auto* cmd_glue = app.add_subcommand("glue", "metric tree gluing (type 1 or 2)");
  int gl_type = 1, gl_i = 0;
  double gl_R = 0.0, gl_delta = 0.0;
  std::string gl_r1, gl_r2, gl_r0, gl_out;
  std::vector<std::string> gl_parts;
  cmd_glue->add_option("--type", gl_type, "gluing type: 1 or 2")->required();
  cmd_glue->add_option("--R", gl_R, "gluing length R > 0");
  cmd_glue->add_option("--delta", gl_delta, "gluing parameter delta in (0,1)");
  cmd_glue->add_option("--r1", gl_r1, "type 1: quilted metric tree JSON");
  cmd_glue->add_option("--r2", gl_r2, "type 1: unquilted metric tree JSON");
  cmd_glue->add_option("--i", gl_i, "type 1: slot index i (graft at leaf i+1)");
  cmd_glue->add_option("--r0", gl_r0, "type 2: unquilted base metric tree JSON");
  cmd_glue->add_option("--part", gl_parts, "type 2: quilted part JSON (repeatable)");
  cmd_glue->add_option("--out", gl_out, "output file (default stdout)");

  // surface
  auto* cmd_surf = app.add_subcommand("surface", "quilted-surface thickening of a metric tree");
  std::string su_tree, su_svg, su_out;
  double su_clip = 10.0;
  cmd_surf->add_option("--tree", su_tree, "metric tree JSON file")->required();
  cmd_surf->add_option("--svg", su_svg, "write an SVG rendering to this file");
  cmd_surf->add_option("--clip", su_clip, "clip unbounded strips at |s| = clip (SVG only)");
  cmd_surf->add_option("--out", su_out, "output file (default stdout)");

  // ainfty-check
  auto* cmd_ainf = app.add_subcommand("ainfty-check", "A-infinity / functor relation residuals");
  std::string ai_a, ai_b, ai_f, ai_out;
  int ai_dmax = 3;
  bool ai_mod2 = false;
  cmd_ainf->add_option("--a", ai_a, "source A-infinity data JSON")->required();
  cmd_ainf->add_option("--b", ai_b, "target A-infinity data JSON (defaults to --a)");
  cmd_ainf->add_option("--functor", ai_f, "functor data JSON (omit to check --a alone)");
  cmd_ainf->add_option("--dmax", ai_dmax, "check arities 1..dmax");
  cmd_ainf->add_flag("--mod2", ai_mod2, "reduce residuals mod 2");
  cmd_ainf->add_option("--out", ai_out, "output file (default stdout)");

  // decay
  auto* cmd_decay = app.add_subcommand("decay", "energy decay diagnostics for exact mode maps");
  double de_alpha = M_PI / 2, de_S = 4.0;
  int de_ns = 256, de_nt = 8;
  std::string de_modes = "-1:1", de_plot, de_out;
  cmd_decay->add_option("--alpha", de_alpha, "boundary-line angle in (0, pi)");
  cmd_decay->add_option("--modes", de_modes, "mode coefficients k:c[,k:c...]");
  cmd_decay->add_option("--S", de_S, "strip half-length");
  cmd_decay->add_option("--ns", de_ns, "s intervals");
  cmd_decay->add_option("--nt", de_nt, "t intervals");
  cmd_decay->add_option("--plot", de_plot, "columnar plot data: s f(s)");
  cmd_decay->add_option("--out", de_out, "output file (default stdout)");

  // preglue
  auto* cmd_pre = app.add_subcommand("preglue", "pregluing error epsilon(R) and its decay slope");
  double pg_alpha = M_PI / 2, pg_S = 10.0, pg_p = 4.0;
  int pg_ns = 320, pg_nt = 8;
  std::string pg_m1 = "-1:1", pg_m2 = "0:0.7", pg_plot, pg_out;
  std::vector<double> pg_R;
  cmd_pre->add_option("--alpha", pg_alpha, "boundary-line angle in (0, pi)");
  cmd_pre->add_option("--m1", pg_m1, "left piece modes k:c[,...] (rates < 0)");
  cmd_pre->add_option("--m2", pg_m2, "right piece modes k:c[,...] (rates > 0)");
  cmd_pre->add_option("--R", pg_R, "gluing lengths (default 6 8 10 12 14)");
  cmd_pre->add_option("--S", pg_S, "strip half-length");
  cmd_pre->add_option("--ns", pg_ns, "s intervals");
  cmd_pre->add_option("--nt", pg_nt, "t intervals");
  cmd_pre->add_option("--p", pg_p, "Sobolev exponent");
  cmd_pre->add_option("--plot", pg_plot, "columnar plot data: R epsilon");
  cmd_pre->add_option("--out", pg_out, "output file (default stdout)");

  // glue-newton
  auto* cmd_newt = app.add_subcommand("glue-newton", "Newton gluing from the preglued map");
  double nw_alpha = M_PI / 2, nw_eta = 0.05, nw_R = 8.0, nw_S = 8.0, nw_p = 4.0, nw_A = 2.0,
         nw_tol = 1e-12;
  int nw_ns = 128, nw_nt = 8;
  unsigned long long nw_seed = 2024;
  std::string nw_out;
  cmd_newt->add_option("--alpha", nw_alpha, "boundary-line angle in (0, pi)");
  cmd_newt->add_option("--eta", nw_eta, "cubic Hamiltonian strength");
  cmd_newt->add_option("--R", nw_R, "gluing length");
  cmd_newt->add_option("--S", nw_S, "strip half-length");
  cmd_newt->add_option("--ns", nw_ns, "s intervals");
  cmd_newt->add_option("--nt", nw_nt, "t intervals");
  cmd_newt->add_option("--p", nw_p, "Sobolev exponent");
  cmd_newt->add_option("--A", nw_A, "outer boundary amplitude of the broken pair");
  cmd_newt->add_option("--tol", nw_tol, "Newton tolerance")->check(CLI::PositiveNumber);
  cmd_newt->add_option("--seed", nw_seed, "seed for the right-inverse probes");
  cmd_newt->add_option("--out", nw_out, "output file (default stdout)");

  // embed
  auto* cmd_embed = app.add_subcommand("embed", "Sobolev embedding constants across strip lengths");
  std::vector<double> em_S;
  double em_p = 4.0;
  int em_trials = 200;
  unsigned long long em_seed = 11;
  std::string em_out;
  cmd_embed->add_option("--S", em_S, "strip half-lengths (default 8 16 32 64)");
  cmd_embed->add_option("--p", em_p, "Sobolev exponent");
  cmd_embed->add_option("--trials", em_trials, "random trials per length")
      ->check(CLI::PositiveNumber);
  cmd_embed->add_option("--seed", em_seed, "trial seed");
  cmd_embed->add_option("--out", em_out, "output file (default stdout)");

  // surject
  auto* cmd_sur = app.add_subcommand("surject", "surjectivity probe around the glued family");
  double sj_alpha = M_PI / 2, sj_eta = 0.05, sj_R = 8.0, sj_eps = 1e-2, sj_S = 8.0, sj_A = 2.0;
  int sj_cand = 50, sj_ns = 128, sj_nt = 8;
  unsigned long long sj_seed = 2025;
  std::string sj_out;
  cmd_sur->add_option("--alpha", sj_alpha, "boundary-line angle in (0, pi)");
  cmd_sur->add_option("--eta", sj_eta, "cubic Hamiltonian strength");
  cmd_sur->add_option("--R", sj_R, "gluing length");
  cmd_sur->add_option("--eps", sj_eps, "perturbation scale for the candidate starts");
  cmd_sur->add_option("--candidates", sj_cand, "number of perturbed starts");
  cmd_sur->add_option("--S", sj_S, "strip half-length");
  cmd_sur->add_option("--ns", sj_ns, "s intervals");
  cmd_sur->add_option("--nt", sj_nt, "t intervals");
  cmd_sur->add_option("--A", sj_A, "outer boundary amplitude of the broken pair");
  cmd_sur->add_option("--seed", sj_seed, "candidate seed");
  cmd_sur->add_option("--out", sj_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (cmd_enum->parsed()) return run_enumerate(en_d, en_uncolored, en_out);
    if (cmd_faces->parsed()) return run_faces(fa_d, fa_out);
    if (cmd_rel->parsed()) return run_relations(re_tree, re_out);
    if (cmd_glue->parsed())
      return run_glue(gl_type, gl_R, gl_delta, gl_r1, gl_r2, gl_i, gl_r0, gl_parts, gl_out);
    if (cmd_surf->parsed()) return run_surface(su_tree, su_svg, su_clip, su_out);
    if (cmd_ainf->parsed()) return run_ainfty_check(ai_a, ai_b, ai_f, ai_dmax, ai_mod2, ai_out);
    if (cmd_decay->parsed()) return run_decay(de_alpha, de_modes, de_S, de_ns, de_nt, de_plot, de_out);
    if (cmd_pre->parsed())
      return run_preglue(pg_alpha, pg_m1, pg_m2, pg_R, pg_S, pg_ns, pg_nt, pg_p, pg_plot, pg_out);
    if (cmd_newt->parsed())
      return run_glue_newton(nw_alpha, nw_eta, nw_R, nw_S, nw_ns, nw_nt, nw_p, nw_A, nw_tol,
                             nw_seed, nw_out);
    if (cmd_embed->parsed()) return run_embed(em_S, em_p, em_trials, em_seed, em_out);
    if (cmd_sur->parsed())
      return run_surject(sj_alpha, sj_eta, sj_R, sj_eps, sj_cand, sj_S, sj_ns, sj_nt, sj_A,
                         sj_seed, sj_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    json err;
    err["tool"] = "multiquilt";
    err["version"] = kVersion;
    err["error"] = json{{"type", "domain"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err;
    err["tool"] = "multiquilt";
    err["version"] = kVersion;
    err["error"] = json{{"type", "internal"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 2;
}
