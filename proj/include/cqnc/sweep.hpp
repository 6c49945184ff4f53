#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cqnc/oracle.hpp"

namespace cqnc {

enum class SweepAxis { Omega, Power, OpaGain, OpaPhase, Detuning, CouplingRatio };
enum class Spacing { Linear, Log };

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  Spacing spacing = Spacing::Linear;
};

// Grid values; linear grids hit min + (max-min) i/(count-1) exactly so
// landmark points (e.g. omega = omega_m) land on the grid.
std::vector<double> make_grid(const GridSpec& g);

struct SweepSpec {
  SweepAxis axis = SweepAxis::Omega;
  GridSpec grid;
  SystemParams fixed;
  std::vector<SpectrumSource> sources{SpectrumSource::HybridApprox};
  double omega_at = 0.0;          // evaluation frequency for non-Omega axes; 0 -> omega_m
  bool retune_cqnc = false;       // re-solve the matched-coupling fixed point per point
  ThermalModel thermal = ThermalModel::HighTemperature;
  int threads = 0;                // 0 -> hardware concurrency
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<int> flagged;       // row indices where the drift matrix is unstable
};

std::string source_name(SpectrumSource s);
std::optional<SpectrumSource> source_from_name(const std::string& name);

SweepTable run_sweep(const SweepSpec& spec);

enum class PowerFormula { Standard, HybridApprox, HybridExact };

struct MinimizeResult {
  bool interior;    // false when the optimum sits at a bracket edge
  double g_star;
  double P_star;    // power realizing g_star via power_for_coupling
  double s_min;
};

// Golden-section minimum of the chosen added-noise formula over the
// coupling g in [1e-3, 1e3] sqrt(kappa gamma_m), ties resolved toward
// smaller g.  Hybrid formulas keep G_prime = g while scanning.
MinimizeResult minimize_over_power(const SystemParams& p, double omega,
                                   PowerFormula formula);

enum class DatasetId { GainPanel, PhasePanel, PowerResonant, PowerOffres, DetuningResonant, DetuningOffres, RatioFreqBare, RatioFreqOpa, RatioPhase };

std::string dataset_name(DatasetId id);
std::optional<DatasetId> dataset_from_name(const std::string& name);

// Preassembled sweep tables behind the datasets CLI subcommand; see
// README for the parameter choices baked into each.
SweepTable canonical_dataset(DatasetId id);

}  // namespace cqnc
