#include <rwre/harness/record.hpp>

#include <rwre/rng.hpp>
#include <rwre/types.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rwre::harness {

nlohmann::json ResultRecord::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["config_digest"] = config_digest;
  j["quantity"] = quantity;
  j["value"] = value;
  j["ci_lo"] = ci_lo;
  j["ci_hi"] = ci_hi;
  j["exact"] = exact;
  j["trials"] = trials;
  j["censored"] = censored;
  j["seed"] = seed;
  j["wall_ms"] = wall_ms;
  j["version"] = version;
  if (!detail.is_null()) j["detail"] = detail;
  return j;
}

ResultRecord ResultRecord::from_json(const nlohmann::json& j) {
  ResultRecord r;
  r.experiment = j.at("experiment").get<std::string>();
  r.config_digest = j.at("config_digest").get<std::string>();
  r.quantity = j.at("quantity").get<std::string>();
  r.value = j.at("value").get<double>();
  r.ci_lo = j.at("ci_lo").get<double>();
  r.ci_hi = j.at("ci_hi").get<double>();
  r.exact = j.at("exact").get<bool>();
  r.trials = j.at("trials").get<std::uint64_t>();
  r.censored = j.at("censored").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.wall_ms = j.at("wall_ms").get<double>();
  r.version = j.at("version").get<std::string>();
  if (j.contains("detail")) r.detail = j["detail"];
  return r;
}

bool ResultRecord::same_values(const ResultRecord& other) const {
  return experiment == other.experiment && config_digest == other.config_digest &&
         quantity == other.quantity && value == other.value && ci_lo == other.ci_lo &&
         ci_hi == other.ci_hi && exact == other.exact && trials == other.trials &&
         censored == other.censored && seed == other.seed && detail == other.detail;
}

const std::vector<std::string>& quantity_registry() {
  static const std::vector<std::string> registry = {
      "solomon.E_ln_rho", "solomon.E_rho", "solomon.E_rho_inv", "solomon.velocity",
      "solomon.sim_speed",
      "simulate.mean_steps", "simulate.censored_fraction", "simulate.mean_displacement_l",
      "exit.part_prob", "exit.residual",
      "pbox.sup_nonfrontal", "pbox.threshold", "pbox.verdict",
      "decay.backtrack_prob", "decay.poly_slope", "decay.stretched_exponent",
      "slab.nonfrontal_prob", "slab.gamma_hat", "slab.gamma_target",
      "rho.moment", "rho.decomp.e0", "rho.decomp.ej", "rho.decomp.en",
      "effcrit.min_value", "effcrit.min_value_hi", "effcrit.satisfied",
      "schedule.gamma_L", "schedule.epsilon_L", "schedule.beta1", "schedule.alpha",
      "schedule.a", "schedule.c1", "schedule.n_L", "schedule.beta_n", "schedule.par_scale_n",
      "audit.cprime_inf", "audit.cdprime_inf", "audit.chain_sufficient", "audit.minimal_lnN0",
      "renorm.good_fraction", "renorm.bound", "renorm.union_rhs_mean", "renorm.union_bound_ok",
      "renorm.chain_rhs",
      "coloring.classes", "coloring.anchors", "coloring.disjoint",
      "qtail.empirical", "qtail.threshold_log", "qtail.bound_log", "qtail.bound", "qtail.vacuous",
      "binom.exact", "binom.bound", "binom.holds",
  };
  return registry;
}

bool known_quantity(const std::string& quantity) {
  const auto& reg = quantity_registry();
  return std::find(reg.begin(), reg.end(), quantity) != reg.end();
}

std::string csv_header() { return "experiment,quantity,value,ci_lo,ci_hi,exact,trials,seed"; }

std::string csv_row(const ResultRecord& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.experiment << ',' << r.quantity << ',' << r.value << ',' << r.ci_lo << ',' << r.ci_hi
     << ',' << (r.exact ? 1 : 0) << ',' << r.trials << ',' << r.seed;
  return os.str();
}

void export_csv(const std::vector<ResultRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_csv: cannot open " + path);
  out << csv_header() << '\n';
  for (const auto& r : records) out << csv_row(r) << '\n';
}

void export_jsonl(const std::vector<ResultRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_jsonl: cannot open " + path);
  for (const auto& r : records) out << r.to_json().dump() << '\n';
}

std::vector<ResultRecord> import_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("import_jsonl: cannot open " + path);
  std::vector<ResultRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(ResultRecord::from_json(nlohmann::json::parse(line)));
  }
  return out;
}

std::string config_digest(const nlohmann::json& config) {
  const std::string dump = config.dump();
  std::uint64_t h = 0x524557524543ULL;
  for (char c : dump) h = rng::mix(h, static_cast<unsigned char>(c));
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace rwre::harness
