// Command-line front end: tube <subcommand> [options]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abstube/abstube.hpp"
#include "abstube/io.hpp"

namespace {

using namespace abstube;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("not an integer: " + item);
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

Polyhedron load_polyhedron(const std::string& path) { return io::polyhedron_from_json(io::read_json_file(path)); }

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::write_text_file(path, text);
}

struct Globals {
  std::uint64_t seed = 42;
  unsigned workers = 1;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abstract tubes of polyhedra and Gaussian polyhedral probabilities"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random stream")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  // build
  auto* build = app.add_subcommand("build", "Build the abstract tube of a polyhedron");
  std::string build_in, build_out, build_order;
  bool no_prune = false;
  bool exact = false;
  double eps_tol = 1e-14;
  build->add_option("--in", build_in, "Polyhedron JSON")->required();
  build->add_option("--out", build_out, "Tube JSON (default stdout)");
  build->add_option("--order", build_order, "Perturbation exponents, e.g. 2,3,1");
  build->add_flag("--no-prune", no_prune, "Test every candidate subset");
  build->add_flag("--exact", exact, "Exact rational arithmetic");
  build->add_option("--eps-tol", eps_tol, "Sign tolerance of the float backend")->capture_default_str();

  // check-identity
  auto* ident = app.add_subcommand("check-identity", "Test the signed indicator identity at random points");
  std::string id_poly, id_tube;
  std::size_t id_samples = 10000;
  bool id_unperturbed = false;
  ident->add_option("--poly", id_poly, "Polyhedron JSON")->required();
  ident->add_option("--tube", id_tube, "Tube JSON (default: build it)");
  ident->add_option("--samples", id_samples, "Number of rational sample points")->capture_default_str();
  ident->add_flag("--unperturbed", id_unperturbed, "Check the unperturbed complex instead of the tube");

  // prob
  auto* probc = app.add_subcommand("prob", "Pr(x in K) for x ~ N(0, I)");
  std::string pr_poly, pr_tube, pr_report;
  double pr_tol = 1e-6;
  std::uint64_t pr_mc = 0;
  probc->add_option("--poly", pr_poly, "Polyhedron JSON")->required();
  probc->add_option("--tube", pr_tube, "Tube JSON (default: build it)");
  probc->add_option("--tol", pr_tol, "Absolute tolerance")->capture_default_str();
  probc->add_option("--report", pr_report, "Write per-term CSV here");
  probc->add_option("--mc", pr_mc, "Also run a Monte Carlo check with this many samples");

  // srange
  auto* srange = app.add_subcommand("srange", "Write the studentized range acceptance region");
  int sr_k = 3;
  double sr_c = 1.0;
  std::string sr_sigmas, sr_out;
  bool sr_raw = false;
  srange->add_option("--k", sr_k, "Number of means")->required();
  srange->add_option("--c", sr_c, "Threshold")->required();
  srange->add_option("--sigmas", sr_sigmas, "Variances s_1..s_k, comma separated (default all 1)");
  srange->add_option("--out", sr_out, "Polyhedron JSON (default stdout)");
  srange->add_flag("--raw", sr_raw, "Write the system in the coordinates of X instead of whitened ones");

  // table1
  auto* table = app.add_subcommand("table1", "Tube sizes of the equal-variance studentized range");
  int t_kmin = 2, t_kmax = 6;
  table->add_option("--kmin", t_kmin)->capture_default_str();
  table->add_option("--kmax", t_kmax)->capture_default_str();

  // tukey-kramer
  auto* tk = app.add_subcommand("tukey-kramer", "F_k along the variance family s_i = (10^s)^((i-1)/(k-1))");
  SweepConfig sweep;
  std::string tk_out;
  tk->add_option("--k", sweep.k)->capture_default_str();
  tk->add_option("--grid", sweep.grid)->capture_default_str();
  tk->add_option("--smin", sweep.s_min)->capture_default_str();
  tk->add_option("--smax", sweep.s_max)->capture_default_str();
  tk->add_option("--c", sweep.c, "Threshold (default: calibrate to --target)");
  tk->add_option("--target", sweep.target)->capture_default_str();
  tk->add_option("--tol", sweep.prob.abs_tol, "Absolute tolerance of each F")->capture_default_str();
  tk->add_option("--out", tk_out, "CSV (default stdout)");

  // feasible
  auto* feas = app.add_subcommand("feasible", "Single feasibility query for a subset");
  std::string f_poly, f_subset, f_order;
  bool f_exact = false;
  feas->add_option("--polyhedron", f_poly, "Polyhedron JSON")->required();
  feas->add_option("--subset", f_subset, "Indices, e.g. 1,3")->required();
  feas->add_option("--order", f_order, "Perturbation exponents");
  feas->add_flag("--exact", f_exact, "Exact rational arithmetic");

  // tailprob
  auto* tail = app.add_subcommand("tailprob", "Pr(y > lower) for y ~ N(0, sigma)");
  std::string t_sigma, t_lower;
  double t_tol = 0;
  std::uint64_t t_mc = 0;
  tail->add_option("--sigma", t_sigma, "Covariance JSON, [[...],...]")->required();
  tail->add_option("--lower", t_lower, "Lower limits JSON, [...]")->required();
  tail->add_option("--tol", t_tol, "Absolute tolerance (default by dimension)");
  tail->add_option("--mc", t_mc, "Also run a Monte Carlo check with this many samples");

  CLI11_PARSE(app, argc, argv);

  try {
    TubeOptions topt;
    topt.workers = g.workers;

    if (*build) {
      const Polyhedron p = load_polyhedron(build_in);
      topt.order = parse_int_list(build_order);
      topt.prune = !no_prune;
      topt.backend = exact ? Backend::Exact : Backend::Float;
      topt.tol = SignTolerance(eps_tol);
      const AbstractTube t = build_tube(p, topt);
      emit(build_out, io::to_json(t).dump() + "\n");
      const TubeStats s = tube_stats(t);
      std::cerr << "members: " << s.total << " (by size:";
      for (std::size_t c = 1; c < s.by_cardinality.size(); ++c) std::cerr << ' ' << s.by_cardinality[c];
      std::cerr << ")\n";
    } else if (*ident) {
      const Polyhedron p = load_polyhedron(id_poly);
      std::vector<IndexSet> complex;
      if (id_unperturbed)
        complex = build_unperturbed_complex(p);
      else if (!id_tube.empty())
        complex = io::tube_from_json(io::read_json_file(id_tube)).members;
      else
        complex = build_tube(p, topt).members;
      SamplerConfig sc;
      sc.samples = id_samples;
      sc.seed = g.seed;
      const FuzzStats st = fuzz_identity(p, complex, sc);
      std::cout << "samples " << st.samples << " interior " << st.interior << " boundary " << st.boundary
                << " exterior " << st.exterior << " on_hyperplane " << st.on_hyperplane << "\n"
                << "violations " << st.violations << "\n";
      if (st.first_violation) {
        std::cout << "first violation at (";
        for (std::size_t k = 0; k < st.first_violation->point.size(); ++k)
          std::cout << (k ? ", " : "") << st.first_violation->point[k];
        std::cout << "): lhs " << st.first_violation->lhs << " rhs " << st.first_violation->rhs << "\n";
        return 1;
      }
    } else if (*probc) {
      const Polyhedron p = load_polyhedron(pr_poly);
      const AbstractTube t = pr_tube.empty() ? build_tube(p, topt) : io::tube_from_json(io::read_json_file(pr_tube));
      ProbConfig pc;
      pc.abs_tol = pr_tol;
      pc.workers = g.workers;
      const ProbabilityResult r = prob(p, t, pc);
      std::printf("P %.12f\nterms %zu\nerror_budget %.3g\n", r.p_k, r.terms.size(), r.error_budget);
      for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
      if (!pr_report.empty()) {
        std::ofstream out(pr_report);
        if (!out) throw std::runtime_error("cannot write " + pr_report);
        io::write_terms_csv(out, r);
      }
      if (pr_mc > 0) {
        const McEstimate mc = prob_mc_oracle(p, pr_mc, g.seed);
        std::printf("mc %.8f se %.2g\n", mc.estimate, mc.standard_error);
      }
    } else if (*srange) {
      StudentizedRangeSpec spec = StudentizedRangeSpec::equal(sr_k, sr_c);
      if (!sr_sigmas.empty()) spec.variances = parse_double_list(sr_sigmas);
      const Polyhedron p = sr_raw ? studentized_polyhedron(spec) : standardized_studentized_polyhedron(spec);
      emit(sr_out, io::to_json(p).dump() + "\n");
    } else if (*table) {
      std::cout << "k m terms\n";
      for (int k = t_kmin; k <= t_kmax; ++k) {
        const auto row = table1_census(k, k, topt).front();
        std::cout << row.k << ' ' << row.m << ' ' << row.terms << std::endl;
      }
    } else if (*tk) {
      sweep.prob.workers = g.workers;
      sweep.tube = topt;
      const TukeyKramerCurve curve = tukey_kramer_sweep(sweep);
      std::ostringstream csv;
      io::write_curve_csv(csv, curve);
      emit(tk_out, csv.str());
      std::fprintf(stderr, "c %.8f F(equal) %.8f\n", curve.c, curve.calibrated_F);
    } else if (*feas) {
      const Polyhedron p = load_polyhedron(f_poly);
      LpOptions lp;
      lp.order = parse_int_list(f_order);
      const IndexSet J(parse_int_list(f_subset));
      const bool ok = feasible(p, J, lp, f_exact ? Backend::Exact : Backend::Float);
      std::cout << J.to_string() << ' ' << (ok ? "feasible" : "infeasible") << "\n";
    } else if (*tail) {
      const auto sj = io::read_json_file(t_sigma).get<std::vector<std::vector<double>>>();
      const auto lj = io::read_json_file(t_lower).get<std::vector<double>>();
      const auto d = static_cast<Eigen::Index>(lj.size());
      TailProblem tp{Eigen::MatrixXd(d, d), Eigen::VectorXd(d)};
      if (static_cast<Eigen::Index>(sj.size()) != d) throw ShapeMismatch("sigma must be d x d with d = |lower|");
      for (Eigen::Index i = 0; i < d; ++i) {
        if (static_cast<Eigen::Index>(sj[i].size()) != d) throw ShapeMismatch("sigma must be square");
        for (Eigen::Index j = 0; j < d; ++j) tp.sigma(i, j) = sj[i][j];
        tp.lower(i) = lj[i];
      }
      QuadratureConfig qc;
      qc.abs_tol = t_tol;
      const double v = tail_prob(tp, qc);
      std::printf("tail %.12f\n", v);
      if (t_mc > 0) {
        const McEstimate mc = mc_oracle(tp, t_mc, g.seed);
        std::printf("mc %.8f se %.2g\n", mc.estimate, mc.standard_error);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what();
    if (!e.subset().empty()) std::cerr << " (subset " << IndexSet(e.subset()).to_string() << ")";
    std::cerr << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
