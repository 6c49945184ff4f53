#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cqnc/io.hpp"

using namespace cqnc;

namespace {

struct Overrides {
  std::string config;
  std::string power, detuning, opa_gain, opa_phase, coupling, atom_gamma;
  std::string atom_damping, row5_sign, thermal = "high-temperature";
  double temperature = -1.0, atoms = -1.0;
  bool cqnc_retune = false;
  int threads = 0;
};

void add_common(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config, "JSON parameter file (keys = field names, Hz convention)");
  app.add_option("--power", o.power, "drive power in W");
  app.add_option("--detuning", o.detuning, "effective detuning (rad/s, or e.g. 1omega_m, 300kHz)");
  app.add_option("--opa-gain", o.opa_gain, "OPA gain (rad/s or e.g. 0.3kappa)");
  app.add_option("--opa-phase", o.opa_phase, "OPA phase (rad or e.g. 1pi)");
  app.add_option("--coupling", o.coupling, "ensemble-cavity coupling G' (rad/s or multiple)");
  app.add_option("--atom-gamma", o.atom_gamma, "ensemble decay rate (rad/s or e.g. 2gamma_m)");
  app.add_option("--temperature", o.temperature, "bath temperature in K");
  app.add_option("--atoms", o.atoms, "ensemble size N");
  app.add_option("--atom-damping", o.atom_damping, "matched | twice-mechanical")
      ->check(CLI::IsMember({"matched", "twice-mechanical"}));
  app.add_option("--row5-sign", o.row5_sign, "damped (alias corrected) | antidamped (alias literal)")
      ->check(CLI::IsMember({"damped", "corrected", "antidamped", "literal"}));
  app.add_flag("--cqnc", o.cqnc_retune, "retune Gamma and G' to the matched-coupling fixed point");
  app.add_option("--thermal-model", o.thermal, "high-temperature | quantum")
      ->check(CLI::IsMember({"high-temperature", "quantum"}));
  app.add_option("--threads", o.threads, "worker threads for sweeps (0 = auto)");
}

SystemParams resolve(const Overrides& o) {
  SystemParams p = o.config.empty() ? SystemParams{} : load_config(o.config);
  if (!o.power.empty()) p.P_L = parse_quantity(o.power, p);
  if (!o.detuning.empty()) p.Delta = parse_quantity(o.detuning, p);
  if (!o.opa_gain.empty()) p.G = parse_quantity(o.opa_gain, p);
  if (!o.opa_phase.empty()) p.theta = reduce_angle(parse_quantity(o.opa_phase, p));
  if (!o.coupling.empty()) p.G_prime = parse_quantity(o.coupling, p);
  if (!o.atom_gamma.empty()) p.Gamma = parse_quantity(o.atom_gamma, p);
  if (o.temperature >= 0) p.T = o.temperature;
  if (o.atoms > 0) p.N_atoms = o.atoms;
  if (!o.atom_damping.empty())
    p.atom_damping = o.atom_damping == "matched" ? AtomDamping::Matched
                                                 : AtomDamping::TwiceMechanical;
  if (!o.row5_sign.empty())
    p.row5_sign = (o.row5_sign == "damped" || o.row5_sign == "corrected")
                      ? Row5Sign::Damped
                      : Row5Sign::Antidamped;
  if (o.cqnc_retune) p = cqnc_configure(p);
  validate(p);
  return p;
}

ThermalModel thermal_model(const Overrides& o) {
  return o.thermal == "quantum" ? ThermalModel::QuantumExact
                                : ThermalModel::HighTemperature;
}

std::vector<SpectrumSource> parse_sources(const std::string& csv) {
  std::vector<SpectrumSource> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto s = source_from_name(item);
    if (!s) throw std::invalid_argument("unknown source: " + item);
    out.push_back(*s);
  }
  if (out.empty()) throw std::invalid_argument("no sources given");
  return out;
}

void emit(const SweepTable& table, const SystemParams& p, const std::string& label,
          const std::string& output) {
  if (output.empty())
    write_table(std::cout, table, p, label);
  else
    write_table_file(output, table, p, label);
}

int check_oracle_guard(const SystemParams& p, const std::vector<SpectrumSource>& sources,
                       bool allow_unstable) {
  if (std::find(sources.begin(), sources.end(), SpectrumSource::Oracle) == sources.end())
    return 0;
  const StabilityReport r = stability(drift_matrix(p, derive(p)));
  if (r.stable || allow_unstable) return 0;
  std::cerr << "operating point is unstable (max Re = " << format_double(r.max_real)
            << "); pass --allow-unstable to evaluate the oracle anyway\n";
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Force-noise spectra of a cavity optomechanical sensor with an "
               "OPA and a negative-mass spin ensemble"};
  app.fallthrough();  // common options may follow the subcommand name
  app.require_subcommand(1);
  Overrides o;
  add_common(app, o);

  auto* steady = app.add_subcommand("steady-state", "print the derived operating point");

  auto* stab = app.add_subcommand("stability", "drift-matrix eigenvalues and verdict");

  auto* spec = app.add_subcommand("spectrum", "added-noise spectrum over a frequency grid");
  std::string omega_min = "0.2omega_m", omega_max = "1.8omega_m";
  int points = 501;
  std::string sources_csv = "S_sql,S_hybrid_approx,S_cqnc";
  std::string output;
  bool allow_unstable = false;
  spec->add_option("--omega-min", omega_min, "grid start (rad/s or multiple)");
  spec->add_option("--omega-max", omega_max, "grid end");
  spec->add_option("--points", points, "grid size");
  spec->add_option("--sources", sources_csv, "comma list: S_sql,S_hybrid_approx,S_hybrid_exact,S_cqnc,S_oracle");
  spec->add_option("--output", output, "CSV path (default stdout)");
  spec->add_flag("--allow-unstable", allow_unstable, "evaluate the oracle even if unstable");

  auto* sw = app.add_subcommand("sweep", "sweep one knob or minimize over drive power");
  std::string axis = "power", range_min = "1e-15", range_max = "1e-6", spacing = "log";
  std::string omega_at = "1omega_m", formula = "standard";
  int sw_points = 200;
  bool minimize = false;
  sw->add_option("--axis", axis, "omega | power | opa-gain | opa-phase | detuning | coupling-ratio")
      ->check(CLI::IsMember({"omega", "power", "opa-gain", "opa-phase", "detuning", "coupling-ratio"}));
  sw->add_option("--min", range_min, "axis start");
  sw->add_option("--max", range_max, "axis end");
  sw->add_option("--points", sw_points, "grid size");
  sw->add_option("--spacing", spacing, "linear | log")->check(CLI::IsMember({"linear", "log"}));
  sw->add_option("--sources", sources_csv, "spectrum sources to tabulate");
  sw->add_option("--omega-at", omega_at, "evaluation frequency for non-omega axes");
  sw->add_flag("--cqnc-retune", o.cqnc_retune, "re-solve matched couplings at every point");
  sw->add_flag("--minimize", minimize, "golden-section minimum over coupling instead of a table");
  sw->add_option("--formula", formula, "minimize target: standard | approx | exact")
      ->check(CLI::IsMember({"standard", "approx", "exact"}));
  sw->add_option("--output", output, "CSV path (default stdout)");
  sw->add_flag("--allow-unstable", allow_unstable, "evaluate the oracle even if unstable");

  auto* ds = app.add_subcommand("datasets", "write the canonical sweep datasets");
  std::vector<std::string> which;
  std::string outdir = ".";
  ds->add_option("names", which, "gain_panel phase_panel power_resonant power_offres detuning_resonant detuning_offres ratio_freq_bare ratio_freq_opa ratio_phase (default all)");
  ds->add_option("--output-dir", outdir, "destination directory");

  CLI11_PARSE(app, argc, argv);

  try {
    const SystemParams p = resolve(o);

    if (steady->parsed()) {
      std::cout << derived_to_json(p, derive(p)) << "\n";
      return 0;
    }

    if (stab->parsed()) {
      const DerivedState d = derive(p);
      const StabilityReport r = stability(drift_matrix(p, d));
      std::cout << "eigenvalues (sorted by Re):\n";
      for (int i = 0; i < 6; ++i)
        std::cout << "  " << format_double(r.eigenvalues[i].real()) << "  "
                  << format_double(r.eigenvalues[i].imag()) << "i\n";
      std::cout << "max Re: " << format_double(r.max_real)
                << "  margin: " << format_double(r.margin) << "\n";
      const Complex res = cqnc_residual(p, d, p.omega_m);
      std::cout << "cancellation residual at omega_m: " << format_double(std::abs(res)) << "\n";
      const ExcitationCheck ex = validate_low_excitation(p, d);
      std::cout << "excitation ratio: " << format_double(ex.ratio)
                << (ex.warn ? "  (low-excitation limit strained)" : "") << "\n";
      for (const auto& w : validate_experimental_ranges(p))
        std::cout << "note: " << w << "\n";
      std::cout << "verdict: " << (r.stable ? "stable" : "unstable") << "\n";
      return r.stable ? 0 : 4;
    }

    if (spec->parsed()) {
      const auto sources = parse_sources(sources_csv);
      if (int rc = check_oracle_guard(p, sources, allow_unstable)) return rc;
      SweepSpec s;
      s.axis = SweepAxis::Omega;
      s.grid = {parse_quantity(omega_min, p), parse_quantity(omega_max, p), points,
                Spacing::Linear};
      s.fixed = p;
      s.sources = sources;
      s.thermal = thermal_model(o);
      s.threads = o.threads;
      emit(run_sweep(s), p, "spectrum", output);
      return 0;
    }

    if (sw->parsed()) {
      if (minimize) {
        const double omega = parse_quantity(omega_at, p);
        const PowerFormula f = formula == "standard" ? PowerFormula::Standard
                               : formula == "approx" ? PowerFormula::HybridApprox
                                                     : PowerFormula::HybridExact;
        const MinimizeResult r = minimize_over_power(p, omega, f);
        std::cout << "{\n  \"interior\": " << (r.interior ? "true" : "false")
                  << ",\n  \"g_star\": " << format_double(r.g_star)
                  << ",\n  \"P_star\": " << format_double(r.P_star)
                  << ",\n  \"s_min\": " << format_double(r.s_min) << "\n}\n";
        if (!r.interior)
          std::cerr << "no interior minimum: the objective is monotone over the bracket\n";
        return 0;
      }
      const auto sources = parse_sources(sources_csv);
      SweepSpec s;
      s.axis = axis == "omega"       ? SweepAxis::Omega
               : axis == "power"     ? SweepAxis::Power
               : axis == "opa-gain"  ? SweepAxis::OpaGain
               : axis == "opa-phase" ? SweepAxis::OpaPhase
               : axis == "detuning"  ? SweepAxis::Detuning
                                     : SweepAxis::CouplingRatio;
      s.grid = {parse_quantity(range_min, p), parse_quantity(range_max, p), sw_points,
                spacing == "log" ? Spacing::Log : Spacing::Linear};
      s.fixed = p;
      s.sources = sources;
      s.omega_at = parse_quantity(omega_at, p);
      s.retune_cqnc = o.cqnc_retune;
      s.thermal = thermal_model(o);
      s.threads = o.threads;
      if (int rc = check_oracle_guard(p, sources, allow_unstable)) return rc;
      emit(run_sweep(s), p, "sweep:" + axis, output);
      return 0;
    }

    if (ds->parsed()) {
      std::vector<DatasetId> ids;
      if (which.empty() || (which.size() == 1 && which[0] == "all")) {
        for (DatasetId id : {DatasetId::GainPanel, DatasetId::PhasePanel, DatasetId::PowerResonant,
                            DatasetId::PowerOffres, DatasetId::DetuningResonant, DatasetId::DetuningOffres,
                            DatasetId::RatioFreqBare, DatasetId::RatioFreqOpa, DatasetId::RatioPhase})
          ids.push_back(id);
      } else {
        for (const auto& w : which) {
          auto id = dataset_from_name(w);
          if (!id) throw std::invalid_argument("unknown dataset: " + w);
          ids.push_back(*id);
        }
      }
      std::filesystem::create_directories(outdir);
      for (DatasetId id : ids) {
        const SweepTable t = canonical_dataset(id);
        const std::string base = (std::filesystem::path(outdir) / dataset_name(id)).string();
        write_table_file(base + ".csv", t, baseline(), dataset_name(id));
        write_metadata_file(base + ".meta.json", t, baseline(), dataset_name(id));
        std::cout << base << ".csv  (" << t.rows.size() << " rows)\n";
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pole_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
