// erpic command-line front end: run simulations, emit presets, drive
// convergence sweeps, validate configs.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "erpic/config.hpp"
#include "erpic/convergence.hpp"
#include "erpic/errors.hpp"
#include "erpic/presets.hpp"
#include "erpic/simulation.hpp"
#include "erpic/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw erpic::ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

erpic::SimulationConfig load_config(const std::string& path,
                                    const std::vector<std::string>& overrides) {
  const erpic::ParseResult r = erpic::parse_config(slurp(path), overrides);
  if (!r.ok()) {
    std::string msg = "invalid config " + path + ":";
    for (const auto& issue : r.issues) {
      msg += "\n  ";
      if (issue.line > 0) msg += "line " + std::to_string(issue.line) + ": ";
      msg += issue.message;
    }
    throw erpic::ConfigError(msg);
  }
  return *r.config;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(erpic::kVersion) +
               " - energy-conserving relaxation PIC for the Vlasov-Poisson system"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a simulation from a config file");
  std::string run_config;
  std::vector<std::string> run_overrides;
  run->add_option("--config", run_config, "Config file")->required();
  run->add_option("--override", run_overrides, "key=value overrides applied before validation");

  // preset
  auto* pre = app.add_subcommand("preset", "Emit a built-in experiment config");
  std::string preset_name;
  std::string preset_scale = "desk";
  std::string preset_emit;
  pre->add_option("name", preset_name,
                  "example1 | example2-diocotron | example3-larmor | diffusion-rect")
      ->required();
  pre->add_option("--scale", preset_scale, "desk | paper (default desk)");
  pre->add_option("--emit", preset_emit, "Write config to this file instead of stdout");

  // converge
  auto* con = app.add_subcommand("converge", "Convergence sweep against an RK4 reference");
  std::string con_config, con_eps, con_dt;
  double con_ref_dt = 0.0;
  std::vector<std::string> con_overrides;
  con->add_option("--config", con_config, "Base config file")->required();
  con->add_option("--eps-list", con_eps, "Comma-separated eps values")->required();
  con->add_option("--dt-list", con_dt, "Comma-separated dt values")->required();
  con->add_option("--ref-dt", con_ref_dt, "Reference step (default min(dt)/64)");
  con->add_option("--override", con_overrides, "key=value overrides");

  // validate
  auto* val = app.add_subcommand("validate", "Parse and validate a config file");
  std::string val_config;
  val->add_option("--config", val_config, "Config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const erpic::SimulationConfig cfg = load_config(run_config, run_overrides);
      std::cout << "steps: " << cfg.step_count() << " (dt " << cfg.dt << ", horizon "
                << cfg.horizon() << (cfg.regime == erpic::Regime::Fluid ? " in t" : " in tau")
                << ")\n";
      const erpic::RunResult rr = erpic::run_simulation(cfg);
      std::cout << "done: " << rr.records.size() << " steps, outputs in " << rr.out_dir.string()
                << "\n";
      if (!rr.records.empty()) {
        double max_rel = 0.0;
        for (const auto& r : rr.records) {
          max_rel = std::max(max_rel,
                             std::abs(r.energy - rr.initial_energy) / std::abs(rr.initial_energy));
        }
        std::cout << "max |H-H0|/H0: " << max_rel << "\n";
      }
    } else if (pre->parsed()) {
      erpic::PresetScale scale;
      if (preset_scale == "desk") scale = erpic::PresetScale::Desk;
      else if (preset_scale == "paper") scale = erpic::PresetScale::Paper;
      else throw erpic::ConfigError("--scale must be desk or paper");
      const std::string text = erpic::render_preset(preset_name, scale);
      if (preset_emit.empty()) {
        std::cout << text;
      } else {
        std::ofstream os(preset_emit, std::ios::trunc);
        if (!os) throw erpic::ConfigError("cannot write " + preset_emit);
        os << text;
        std::cout << "wrote " << preset_emit << "\n";
      }
    } else if (con->parsed()) {
      erpic::ConvergenceSpec spec;
      spec.base = load_config(con_config, con_overrides);
      spec.eps_list = parse_list(con_eps);
      spec.dt_list = parse_list(con_dt);
      if (spec.dt_list.empty()) throw erpic::ConfigError("--dt-list: no values");
      spec.dt_ref = con_ref_dt > 0.0
                        ? con_ref_dt
                        : *std::min_element(spec.dt_list.begin(), spec.dt_list.end()) / 64.0;
      const auto rows = erpic::run_convergence(spec);
      std::cout << "eps,dt,err_rho_rhov,order\n";
      for (const auto& r : rows) {
        std::cout << r.eps << ',' << r.dt << ',' << r.err << ',';
        if (r.order.has_value()) std::cout << *r.order;
        std::cout << '\n';
      }
      std::cout << "table written to " << spec.base.output.dir << "/errors.csv\n";
    } else if (val->parsed()) {
      const erpic::ParseResult r = erpic::parse_config(slurp(val_config));
      if (!r.ok()) {
        std::cerr << "invalid config " << val_config << ":\n";
        for (const auto& issue : r.issues) {
          std::cerr << "  ";
          if (issue.line > 0) std::cerr << "line " << issue.line << ": ";
          std::cerr << issue.message << "\n";
        }
        return kExitConfig;
      }
      std::cout << "ok: " << val_config << " (" << r.config->step_count() << " steps)\n";
    }
  } catch (const erpic::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const erpic::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
