#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "qlan/errors.hpp"

namespace {

using namespace qlan;

struct Args {
  int d = 2;
  std::vector<double> mu, u, xi;
  std::string zeta, z;
  std::vector<int> n_list;
  std::optional<int> fock_cutoff, basis_cutoff;
  double alpha = 0.6, beta = 0.1, gamma = 0.24, eta = 0.2;
  std::int64_t orbit_budget = kDefaultOrbitBudget;
  std::string disp = "unit";
  std::string out;
  std::string format;
  bool allow_out_of_range = false;
  std::string lemma;
};

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--d", a.d, "Dimension of the qudit")->check(CLI::Range(2, 8));
  sub->add_option("--mu", a.mu, "Eigenvalues, strictly decreasing, comma separated")->delimiter(',');
  sub->add_option("--u", a.u, "Classical local parameter (d-1 reals)")->delimiter(',');
  sub->add_option("--zeta", a.zeta, "Quantum local parameter, one complex per pair, e.g. 0.5+0.3i");
  sub->add_option("--xi", a.xi, "Diagonal phases (d-1 reals)")->delimiter(',');
  sub->add_option("--n-list", a.n_list, "Sample sizes, comma separated")->delimiter(',');
  sub->add_option("--fock-cutoff", a.fock_cutoff, "Number-state cutoff per mode");
  sub->add_option("--basis-cutoff", a.basis_cutoff, "Maximal |m| of the block basis");
  sub->add_option("--alpha", a.alpha, "Typicality exponent");
  sub->add_option("--beta", a.beta, "Growth exponent of |zeta|");
  sub->add_option("--gamma", a.gamma, "Growth exponent of |u|");
  sub->add_option("--eta", a.eta, "Basis truncation exponent");
  sub->add_option("--orbit-budget", a.orbit_budget, "Maximal orbit size for explicit enumeration");
  sub->add_option("--disp-const", a.disp, "Displacement convention")->check(CLI::IsMember({"unit", "sqrt2", "two"}));
  sub->add_option("--out", a.out, "Output path (default stdout)");
  sub->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--allow-out-of-range", a.allow_out_of_range, "Run outside the theorem's parameter ranges");
}

ExperimentConfig make_config(const Args& a, const std::string& command) {
  ExperimentConfig c;
  c.d = a.d;
  c.mu = a.mu.empty() ? cli::default_mu(a.d) : a.mu;
  c.d = static_cast<int>(c.mu.size());
  c.u = a.u.empty() ? std::vector<double>(static_cast<std::size_t>(c.d - 1), 0.0) : a.u;
  c.zeta = a.zeta.empty() ? std::vector<Complex>(static_cast<std::size_t>(num_pairs(c.d)), Complex(0.0, 0.0))
                          : cli::parse_complex_list(a.zeta);
  c.xi = a.xi;
  c.n_list = a.n_list.empty() ? cli::default_n_list(command) : a.n_list;
  c.fock_cutoff = a.fock_cutoff;
  c.basis_cutoff = a.basis_cutoff;
  c.alpha = a.alpha;
  c.beta = a.beta;
  c.gamma = a.gamma;
  c.eta = a.eta;
  c.orbit_budget = a.orbit_budget;
  c.displacement = parse_displacement_convention(a.disp);
  c.allow_out_of_range = a.allow_out_of_range;
  if (!a.z.empty()) c.z_extra = cli::parse_complex(a.z);
  return c;
}

void emit(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(a.out);
  if (!f) throw InvalidArgument("cannot open output file " + a.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local asymptotic normality experiments for qudit ensembles"};
  app.require_subcommand(1);
  Args a;
  auto* dec = app.add_subcommand("decompose", "Block decomposition of the n-sample state");
  auto* conv = app.add_subcommand("converge", "Distances of the forward and reverse channels over an n grid");
  auto* ver = app.add_subcommand("verify", "Check one lemma's contract over an n grid");
  for (auto* s : {dec, conv, ver}) add_common(s, a);
  ver->add_option("lemma", a.lemma, "Lemma to verify")->required()->check(CLI::IsMember(verifier_names()));
  ver->add_option("--z", a.z, "Second displacement for lgrouplimit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (dec->parsed()) {
      const ExperimentConfig cfg = make_config(a, "decompose");
      if (cfg.n_list.size() != 1) throw InvalidArgument("decompose takes exactly one n");
      const Decomposition d = run_decompose(cfg, cfg.n_list.front());
      emit(a, cli::decompose_json(cfg, d).dump(2) + "\n");
      return 0;
    }
    if (conv->parsed()) {
      const ExperimentConfig cfg = make_config(a, "converge");
      const ConvergeResult r = run_converge(cfg);
      if (a.format == "json") {
        emit(a, cli::converge_json(cfg, r).dump(2) + "\n");
      } else {
        std::ostringstream os;
        write_converge_csv(os, r);
        emit(a, os.str());
      }
      return 0;
    }
    const ExperimentConfig cfg = make_config(a, a.lemma);
    const VerifyReport r = run_verify(a.lemma, cfg);
    emit(a, a.format == "csv" ? cli::verify_csv(r) : cli::verify_json(cfg, r).dump(2) + "\n");
    if (!r.passed) std::cerr << "contract violated: " << r.detail << "\n";
    return r.passed ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
