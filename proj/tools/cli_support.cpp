#include "cli_support.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "qlan/errors.hpp"

namespace qlan::cli {

namespace {

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse complex number '" + whole + "'");
  }
  if (pos != s.size()) throw InvalidArgument("cannot parse complex number '" + whole + "'");
  return v;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw InvalidArgument("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not part of an exponent and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(body, text)};
  return {parse_real(body.substr(0, split), text), parse_real(body.substr(split), text)};
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  return out;
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::vector<double> default_mu(int d) {
  switch (d) {
    case 2: return {0.7, 0.3};
    case 3: return {0.5, 0.3, 0.2};
    case 4: return {0.4, 0.3, 0.2, 0.1};
    default: {
      std::vector<double> mu;
      const double tot = d * (d + 1) / 2.0;
      for (int i = d; i >= 1; --i) mu.push_back(i / tot);
      return mu;
    }
  }
}

std::vector<int> default_n_list(const std::string& command) {
  if (command == "converge") return {8, 16, 32, 64};
  if (command == "decompose") return {8};
  if (command == "lclassical" || command == "ldisplacement" || command == "calibrate") return {25, 100, 400};
  if (command == "lconcentration") return {100, 400};
  if (command == "len0") return {25, 200};
  if (command == "lgrouplimit") return {25, 100};
  if (command == "non-orth" || command == "gqo") return {13, 26, 52};
  return {};
}

Json config_json(const ExperimentConfig& cfg) {
  Json j;
  j["d"] = cfg.d;
  j["mu"] = cfg.mu;
  j["u"] = cfg.u;
  Json z = Json::array();
  for (const auto& v : cfg.zeta) z.push_back(format_complex(v));
  j["zeta"] = z;
  if (!cfg.xi.empty()) j["xi"] = cfg.xi;
  j["n_list"] = cfg.n_list;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["gamma"] = cfg.gamma;
  j["eta"] = cfg.eta;
  j["fock_cutoff"] = cfg.resolved_fock_cutoff();
  j["basis_cutoff"] = cfg.resolved_basis_cutoff();
  j["orbit_budget"] = cfg.orbit_budget;
  j["state_budget"] = cfg.state_budget;
  j["disp_const"] = to_string(cfg.displacement);
  j["allow_out_of_range"] = cfg.allow_out_of_range;
  if (cfg.z_extra) j["z"] = format_complex(*cfg.z_extra);
  return j;
}

Json converge_json(const ExperimentConfig& cfg, const ConvergeResult& r) {
  Json j;
  j["schema_version"] = 1;
  j["command"] = "converge";
  j["config"] = config_json(cfg);
  j["overrides"] = r.overrides;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json x;
    x["n"] = row.n;
    x["total"] = row.cq.total;
    x["classical"] = row.cq.classical;
    x["quantum_sup"] = row.cq.quantum_sup;
    x["atypical"] = row.cq.atypical;
    x["outside_mass"] = row.cq.outside_mass;
    x["components_sum"] = row.cq.components_sum();
    x["sn_total"] = row.sn.total;
    x["sn_exact"] = row.sn.exact_part;
    x["sn_unresolved"] = row.sn.unresolved_bound;
    x["trunc_budget"] = row.trunc_budget;
    for (const auto& [k, v] : row.cq.extra) x[k] = v;
    rows.push_back(x);
  }
  j["rows"] = rows;
  j["fitted_rate"] = r.fitted_rate;
  j["fitted_rate_sn"] = r.fitted_rate_sn;
  return j;
}

Json verify_json(const ExperimentConfig& cfg, const VerifyReport& r) {
  Json j;
  j["schema_version"] = 1;
  j["command"] = "verify";
  j["lemma"] = r.lemma;
  j["passed"] = r.passed;
  j["detail"] = r.detail;
  j["config"] = config_json(cfg);
  j["overrides"] = r.overrides;
  Json ms = Json::array();
  for (const auto& m : r.measurements) {
    Json x;
    x["name"] = m.name;
    for (const auto& [k, v] : m.values) x[k] = v;
    ms.push_back(x);
  }
  j["measurements"] = ms;
  return j;
}

Json decompose_json(const ExperimentConfig& cfg, const Decomposition& dec) {
  Json j;
  j["schema_version"] = 1;
  j["command"] = "decompose";
  j["config"] = config_json(cfg);
  j["n"] = dec.n;
  j["total_weight"] = dec.total_weight;
  j["atypical_mass"] = dec.atypical_mass;
  Json blocks = Json::array();
  for (const auto& b : dec.blocks) {
    Json x;
    x["lambda"] = b.shape.rows();
    x["weight"] = b.weight;
    x["typical"] = b.typical;
    x["dimension"] = b.dimension.str();
    x["spectrum"] = b.spectrum;
    x["spectrum_truncated"] = b.spectrum_truncated;
    blocks.push_back(x);
  }
  j["blocks"] = blocks;
  return j;
}

std::string verify_csv(const VerifyReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << "name,key,value\n";
  for (const auto& m : r.measurements)
    for (const auto& [k, v] : m.values) os << '"' << m.name << "\"," << k << ',' << v << '\n';
  os << "\"summary\",passed," << (r.passed ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace qlan::cli
