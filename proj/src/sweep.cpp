#include "cqnc/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace cqnc {

std::vector<double> make_grid(const GridSpec& g) {
  if (g.count < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> v(g.count);
  if (g.count == 1) {
    v[0] = g.min;
    return v;
  }
  if (g.spacing == Spacing::Log) {
    if (g.min <= 0 || g.max <= 0)
      throw std::invalid_argument("log grid endpoints must be positive");
    const double l0 = std::log10(g.min), l1 = std::log10(g.max);
    for (int i = 0; i < g.count; ++i)
      v[i] = std::pow(10.0, l0 + (l1 - l0) * i / (g.count - 1));
  } else {
    for (int i = 0; i < g.count; ++i)
      v[i] = g.min + (g.max - g.min) * i / (g.count - 1);
  }
  return v;
}

std::string source_name(SpectrumSource s) {
  switch (s) {
    case SpectrumSource::SqlClosedForm: return "S_sql";
    case SpectrumSource::HybridApprox: return "S_hybrid_approx";
    case SpectrumSource::HybridExact: return "S_hybrid_exact";
    case SpectrumSource::CqncFloor: return "S_cqnc";
    case SpectrumSource::Oracle: return "S_oracle";
  }
  return "?";
}

std::optional<SpectrumSource> source_from_name(const std::string& name) {
  if (name == "S_sql" || name == "sql") return SpectrumSource::SqlClosedForm;
  if (name == "S_hybrid_approx" || name == "approx") return SpectrumSource::HybridApprox;
  if (name == "S_hybrid_exact" || name == "exact") return SpectrumSource::HybridExact;
  if (name == "S_cqnc" || name == "floor") return SpectrumSource::CqncFloor;
  if (name == "S_oracle" || name == "oracle") return SpectrumSource::Oracle;
  return std::nullopt;
}

namespace {

double eval_source(SpectrumSource s, const SystemParams& p, const DerivedState& d,
                   double omega, ThermalModel model) {
  switch (s) {
    case SpectrumSource::SqlClosedForm: return s_sql(p, omega);
    case SpectrumSource::HybridApprox: return s_add_approx(p, d, omega, model);
    case SpectrumSource::HybridExact: return s_add_exact(p, d, omega, model);
    case SpectrumSource::CqncFloor: return s_cqnc_floor(p, omega);
    case SpectrumSource::Oracle: return oracle_spectrum(p, d, omega, vacuum_noise(p, model));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

const char* axis_column(SweepAxis a) {
  switch (a) {
    case SweepAxis::Omega: return "omega_rad_s";
    case SweepAxis::Power: return "P_L_W";
    case SweepAxis::OpaGain: return "G_rad_s";
    case SweepAxis::OpaPhase: return "theta_rad";
    case SweepAxis::Detuning: return "Delta_rad_s";
    case SweepAxis::CouplingRatio: return "coupling_ratio";
  }
  return "?";
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec) {
  const std::vector<double> grid = make_grid(spec.grid);
  const int n = static_cast<int>(grid.size());
  SweepTable out;
  out.columns.push_back(axis_column(spec.axis));
  for (SpectrumSource s : spec.sources) out.columns.push_back(source_name(s));
  out.rows.assign(n, {});
  std::vector<char> flags(n, 0);

  auto point = [&](int i) {
    const double v = grid[i];
    SystemParams p = spec.fixed;
    double omega = spec.omega_at > 0 ? spec.omega_at : p.omega_m;
    switch (spec.axis) {
      case SweepAxis::Omega: omega = v; break;
      case SweepAxis::Power: p.P_L = v; break;
      case SweepAxis::OpaGain: p.G = v; break;
      case SweepAxis::OpaPhase: p.theta = reduce_angle(v); break;
      case SweepAxis::Detuning: p.Delta = v; break;
      case SweepAxis::CouplingRatio: p.G_prime = v * derive(p).g; break;
    }
    if (spec.retune_cqnc) p = cqnc_configure(p);
    const DerivedState d = derive(p);
    flags[i] = !stability(drift_matrix(p, d)).stable;
    std::vector<double>& row = out.rows[i];
    row.reserve(1 + spec.sources.size());
    row.push_back(v);
    for (SpectrumSource s : spec.sources) {
      double val;
      try {
        val = eval_source(s, p, d, omega, spec.thermal);
      } catch (const pole_error&) {
        val = std::numeric_limits<double>::quiet_NaN();
      }
      row.push_back(val);
    }
  };

  unsigned nt = spec.threads > 0 ? spec.threads : std::thread::hardware_concurrency();
  nt = std::min<unsigned>(std::max(nt, 1u), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) point(i);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
      try {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) point(i);
      } catch (...) {
        std::scoped_lock lk(err_mu);
        if (!err) err = std::current_exception();
        next.store(n);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
  }
  for (int i = 0; i < n; ++i)
    if (flags[i]) out.flagged.push_back(i);
  return out;
}

MinimizeResult minimize_over_power(const SystemParams& p, double omega,
                                   PowerFormula formula) {
  const double scale = std::sqrt(p.kappa * p.gamma_m);
  const double xlo = std::log(1e-3 * scale), xhi = std::log(1e3 * scale);

  auto objective = [&](double g) {
    if (formula == PowerFormula::Standard) return s_standard_opa(p, g, omega, p.T);
    SystemParams pp = p;
    pp.G_prime = g;
    const DerivedState d = derive_with_coupling(pp, g);
    return formula == PowerFormula::HybridApprox ? s_add_approx(pp, d, omega)
                                                 : s_add_exact(pp, d, omega);
  };
  auto f = [&](double x) { return objective(std::exp(x)); };

  // Golden section over log g, ties biased toward the smaller coupling.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = xlo, b = xhi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-6) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  const double x_star = fc <= fd ? c : d;

  MinimizeResult r{};
  r.interior = (x_star - xlo > 1e-5) && (xhi - x_star > 1e-5);
  r.g_star = std::exp(x_star);
  r.s_min = objective(r.g_star);
  SystemParams pp = p;
  pp.G_prime = formula == PowerFormula::Standard ? 0.0 : r.g_star;
  r.P_star = power_for_coupling(pp, r.g_star);
  return r;
}

std::string dataset_name(DatasetId id) {
  switch (id) {
    case DatasetId::GainPanel: return "gain_panel";
    case DatasetId::PhasePanel: return "phase_panel";
    case DatasetId::PowerResonant: return "power_resonant";
    case DatasetId::PowerOffres: return "power_offres";
    case DatasetId::DetuningResonant: return "detuning_resonant";
    case DatasetId::DetuningOffres: return "detuning_offres";
    case DatasetId::RatioFreqBare: return "ratio_freq_bare";
    case DatasetId::RatioFreqOpa: return "ratio_freq_opa";
    case DatasetId::RatioPhase: return "ratio_phase";
  }
  return "?";
}

std::optional<DatasetId> dataset_from_name(const std::string& name) {
  for (DatasetId id : {DatasetId::GainPanel, DatasetId::PhasePanel, DatasetId::PowerResonant,
                      DatasetId::PowerOffres, DatasetId::DetuningResonant, DatasetId::DetuningOffres,
                      DatasetId::RatioFreqBare, DatasetId::RatioFreqOpa, DatasetId::RatioPhase})
    if (dataset_name(id) == name) return id;
  return std::nullopt;
}

namespace {

// Spectral panels share one low-power operating point: P_L = 0.1 uW keeps
// the ensemble excitation fraction near 1e-3.
constexpr double kPanelPower = 1e-7;

SystemParams panel_base(double gain_over_kappa) {
  SystemParams p = baseline();
  p.P_L = kPanelPower;
  p.theta = std::numbers::pi;
  p.G = gain_over_kappa * p.kappa;
  return p;
}

// Frequency response panels: S vs omega/omega_m at fixed coupling for a
// family of OPA settings.
SweepTable frequency_panel(const std::vector<double>& gains_over_kappa,
                           const std::vector<double>& thetas_over_pi,
                           const std::vector<std::string>& family_columns) {
  SystemParams base = cqnc_configure(panel_base(0.0));
  const double g_fixed = derive(base).g;

  SweepTable out;
  out.columns = {"omega_over_omega_m", "S_sql"};
  out.columns.insert(out.columns.end(), family_columns.begin(), family_columns.end());
  out.columns.push_back("S_cqnc");

  const std::vector<double> xs = make_grid({0.2, 1.8, 501, Spacing::Linear});
  const bool gain_family = !gains_over_kappa.empty();
  const size_t nfam = gain_family ? gains_over_kappa.size() : thetas_over_pi.size();

  std::vector<SystemParams> family(nfam, base);
  std::vector<DerivedState> derived(nfam);
  for (size_t k = 0; k < nfam; ++k) {
    if (gain_family)
      family[k].G = gains_over_kappa[k] * base.kappa;
    else {
      family[k].G = 0.3 * base.kappa;
      family[k].theta = reduce_angle(thetas_over_pi[k] * std::numbers::pi);
    }
    derived[k] = derive_with_coupling(family[k], g_fixed);
  }

  for (double x : xs) {
    const double omega = x * base.omega_m;
    std::vector<double> row{x, s_sql(base, omega)};
    for (size_t k = 0; k < nfam; ++k)
      row.push_back(s_add_approx(family[k], derived[k], omega));
    row.push_back(s_cqnc_floor(base, omega));
    out.rows.push_back(std::move(row));
  }
  return out;
}

// Power panels: S(omega_eval) vs drive power, matched couplings re-solved
// at every point.
SweepTable power_panel(double omega_offset_in_gamma,
                       const std::vector<double>& detunings_over_omega_m) {
  SweepTable out;
  const std::vector<double> ps = make_grid({1e-15, 1e-6, 200, Spacing::Log});
  const bool detuning_family = !detunings_over_omega_m.empty();

  SystemParams bare = baseline();
  bare.G = 0;
  bare.theta = 0;

  out.columns = {"P_L_W", "g2_over_g02", "S_standard"};
  if (detuning_family) {
    for (double dv : detunings_over_omega_m)
      out.columns.push_back("S_hybrid_Delta" + std::to_string(dv).substr(0, 3));
  } else {
    out.columns.insert(out.columns.end(),
                       {"S_hybrid_G0.0", "S_hybrid_G0.1", "S_hybrid_G0.3",
                        "S_exact_G0.0_matched"});
  }
  out.columns.insert(out.columns.end(), {"S_sql", "S_cqnc"});

  for (int i = 0; i < static_cast<int>(ps.size()); ++i) {
    const double P = ps[i];
    SystemParams b = bare;
    b.P_L = P;
    const DerivedState db = derive(b);
    const double omega = b.omega_m + omega_offset_in_gamma * b.gamma_m;

    std::vector<double> row{P, db.g * db.g / (b.g0 * b.g0), s_standard(b, db.g, omega, b.T)};
    bool unstable = false;
    auto hybrid = [&](double gain_over_kappa, double delta_over_omega_m,
                      AtomDamping conv, bool exact) {
      SystemParams h = baseline();
      h.P_L = P;
      h.theta = std::numbers::pi;
      h.G = gain_over_kappa * h.kappa;
      h.Delta = delta_over_omega_m * h.omega_m;
      h.atom_damping = conv;
      h = cqnc_configure(h);
      const DerivedState d = derive(h);
      if (!stability(drift_matrix(h, d)).stable) unstable = true;
      return exact ? s_add_exact(h, d, omega) : s_add_approx(h, d, omega);
    };

    if (detuning_family) {
      for (double dv : detunings_over_omega_m)
        row.push_back(hybrid(0.3, dv, AtomDamping::TwiceMechanical, false));
    } else {
      row.push_back(hybrid(0.0, 0, AtomDamping::TwiceMechanical, false));
      row.push_back(hybrid(0.1, 0, AtomDamping::TwiceMechanical, false));
      row.push_back(hybrid(0.3, 0, AtomDamping::TwiceMechanical, false));
      row.push_back(hybrid(0.0, 0, AtomDamping::Matched, true));
    }
    SystemParams fl = baseline();
    row.push_back(s_sql(fl, omega));
    row.push_back(s_cqnc_floor(fl, omega));
    out.rows.push_back(std::move(row));
    if (unstable) out.flagged.push_back(i);
  }
  return out;
}

// Contour panels in long format: coupling ratio vs a second axis.
SweepTable contour_panel(double gain_over_kappa, bool theta_axis) {
  SweepTable out;
  out.columns = {"g2_over_g02", theta_axis ? "theta_rad" : "omega_over_omega_m",
                 "S_hybrid_approx"};
  const std::vector<double> ratios = make_grid({1.0, 1e8, 200, Spacing::Log});
  const std::vector<double> second =
      theta_axis ? make_grid({-std::numbers::pi, std::numbers::pi, 200, Spacing::Linear})
                 : make_grid({0.2, 1.8, 200, Spacing::Linear});

  SystemParams base = baseline();
  base.G = gain_over_kappa * base.kappa;
  base.theta = std::numbers::pi;

  for (double r2 : ratios) {
    const double g = base.g0 * std::sqrt(r2);
    for (double s : second) {
      SystemParams p = base;
      if (theta_axis) p.theta = reduce_angle(s);
      p.G_prime = g;
      const DerivedState d = derive_with_coupling(p, g);
      const double omega = theta_axis ? p.omega_m : s * p.omega_m;
      out.rows.push_back({r2, s, s_add_approx(p, d, omega)});
    }
  }
  return out;
}

}  // namespace

SweepTable canonical_dataset(DatasetId id) {
  switch (id) {
    case DatasetId::GainPanel:
      return frequency_panel({0.0, 0.1, 0.3}, {},
                             {"S_hybrid_G0.0", "S_hybrid_G0.1", "S_hybrid_G0.3"});
    case DatasetId::PhasePanel:
      return frequency_panel({}, {0.0, 0.5, 1.0, 1.5, -0.5, -1.0, -1.5},
                             {"S_hybrid_th0.0", "S_hybrid_th0.5", "S_hybrid_th1.0",
                              "S_hybrid_th1.5", "S_hybrid_th-0.5", "S_hybrid_th-1.0",
                              "S_hybrid_th-1.5"});
    case DatasetId::PowerResonant: return power_panel(0.0, {});
    case DatasetId::PowerOffres: return power_panel(4.0, {});
    case DatasetId::DetuningResonant: return power_panel(0.0, {0.0, 1.0, 2.0});
    case DatasetId::DetuningOffres: return power_panel(4.0, {0.0, 1.0, 2.0});
    case DatasetId::RatioFreqBare: return contour_panel(0.0, false);
    case DatasetId::RatioFreqOpa: return contour_panel(0.2, false);
    case DatasetId::RatioPhase: return contour_panel(0.2, true);
  }
  throw std::invalid_argument("unknown dataset id");
}

}  // namespace cqnc
