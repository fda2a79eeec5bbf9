#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cumsense/experiment.hpp"

namespace {

cumsense::RatioSweep parse_ratios(const std::string& s) {
  double lo = 0.0, hi = 0.0, step = 0.0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) == 3)
    return {lo, hi, step};
  if (std::sscanf(s.c_str(), "%lf", &lo) == 1 && s.find(':') == std::string::npos)
    return {lo, lo, 1.0};
  throw std::invalid_argument("--ratios expects lo:hi:step or a single ratio, got " + s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sub-Nyquist cumulant reconstruction experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir, ratios_str;
  int n = 0, m = 0, q = 0, trials = 0;
  std::uint64_t seed = 0;
  double snr_db = 0.0;
  bool no_noise = false;
  std::vector<int> ks;

  const std::vector<std::pair<std::string, std::string>> kinds = {
      {"feasibility", "identifiability counts versus branch count"},
      {"ruler", "search a minimal length-n sparse ruler"},
      {"gen", "dump generated signal blocks"},
      {"c3cs-mse", "third-cumulant recovery error sweep"},
      {"c3cs-recover", "single third-cumulant recovery run"},
      {"ccss-nmse", "diagonal-slice recovery error sweep"},
      {"slice", "single diagonal-slice estimate"},
      {"music", "harmonic retrieval from cumulant slices"}};
  for (const auto& [kind, desc] : kinds) {
    CLI::App* sub = app.add_subcommand(kind, desc);
    sub->add_option("--n", n, "block length");
    sub->add_option("--m", m, "compressed branch count");
    sub->add_option("--ratios", ratios_str, "compression ratio sweep lo:hi:step");
    sub->add_option("--k", ks, "measurement block counts");
    sub->add_option("--q", q, "diagonal slice order (2, 3 or 4)");
    sub->add_option("--trials", trials, "Monte Carlo trials");
    sub->add_option("--seed", seed, "master RNG seed");
    sub->add_option("--snr-db", snr_db, "additive noise level in dB");
    sub->add_flag("--no-noise", no_noise, "drop the additive noise stage");
    sub->add_option("--config", config_path, "JSON config file; flags override its fields");
    sub->add_option("--out", out_dir, "output directory");
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();

  try {
    cumsense::ExperimentConfig cfg = cumsense::default_config(sub->get_name());
    if (sub->count("--config") > 0) {
      std::ifstream f(config_path);
      if (!f) throw std::runtime_error("cannot read config file " + config_path);
      nlohmann::json j;
      f >> j;
      if (!j.contains("kind")) j["kind"] = sub->get_name();
      cfg = cumsense::config_from_json(j);
      if (cfg.kind != sub->get_name())
        throw std::invalid_argument("config kind '" + cfg.kind + "' does not match subcommand '" +
                                    sub->get_name() + "'");
    }
    if (sub->count("--n") > 0) cfg.n = n;
    if (sub->count("--m") > 0) cfg.m = m;
    if (sub->count("--ratios") > 0) cfg.ratios = parse_ratios(ratios_str);
    if (sub->count("--k") > 0) cfg.k_values = ks;
    if (sub->count("--q") > 0) cfg.q = q;
    if (sub->count("--trials") > 0) cfg.trials = trials;
    if (sub->count("--seed") > 0) cfg.seed = seed;
    if (sub->count("--snr-db") > 0) cfg.snr_db = snr_db;
    if (no_noise) cfg.snr_db.reset();
    if (sub->count("--out") > 0) cfg.out_dir = out_dir;
    return cumsense::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
