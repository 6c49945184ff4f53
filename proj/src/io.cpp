#include "cqnc/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace cqnc {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return {buf, ptr};
}

double parse_quantity(const std::string& text, const SystemParams& ref) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  double value{};
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr == begin)
    throw std::invalid_argument("cannot parse quantity: " + text);
  std::string suffix(ptr, end);
  if (suffix.empty()) return value;
  if (suffix == "Hz") return value * kTwoPi;
  if (suffix == "kHz") return value * kTwoPi * 1e3;
  if (suffix == "MHz") return value * kTwoPi * 1e6;
  if (suffix == "GHz") return value * kTwoPi * 1e9;
  if (suffix == "kappa") return value * ref.kappa;
  if (suffix == "omega_m") return value * ref.omega_m;
  if (suffix == "gamma_m") return value * ref.gamma_m;
  if (suffix == "g0") return value * ref.g0;
  if (suffix == "pi") return value * std::numbers::pi;
  throw std::invalid_argument("unknown unit suffix '" + suffix + "' in: " + text);
}

namespace {

const char* damping_name(AtomDamping a) {
  return a == AtomDamping::Matched ? "matched" : "twice-mechanical";
}

const char* row5_name(Row5Sign s) {
  return s == Row5Sign::Damped ? "damped" : "antidamped";
}

AtomDamping damping_from(const std::string& s) {
  if (s == "matched") return AtomDamping::Matched;
  if (s == "twice-mechanical") return AtomDamping::TwiceMechanical;
  throw std::invalid_argument("atom_damping must be 'matched' or 'twice-mechanical'");
}

Row5Sign row5_from(const std::string& s) {
  if (s == "damped" || s == "corrected") return Row5Sign::Damped;
  if (s == "antidamped" || s == "literal") return Row5Sign::Antidamped;
  throw std::invalid_argument("row5_sign must be 'damped' or 'antidamped'");
}

json metadata(const SweepTable& table, const SystemParams& p, const std::string& label) {
  json meta;
  meta["label"] = label;
  meta["tool_version"] = kToolVersion;
  meta["columns"] = table.columns;
  meta["params"] = json::parse(params_to_json(p));
  if (!table.flagged.empty()) meta["unstable_rows"] = table.flagged;
  return meta;
}

}  // namespace

void write_table(std::ostream& os, const SweepTable& table, const SystemParams& p,
                 const std::string& label) {
  os << "# " << metadata(table, p, label).dump() << "\n";
  for (size_t c = 0; c < table.columns.size(); ++c)
    os << (c ? "," : "") << table.columns[c];
  os << "\n";
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c)
      os << (c ? "," : "") << format_double(row[c]);
    os << "\n";
  }
}

void write_table_file(const std::string& path, const SweepTable& table,
                      const SystemParams& p, const std::string& label) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_table(os, table, p, label);
}

void write_metadata_file(const std::string& path, const SweepTable& table,
                         const SystemParams& p, const std::string& label) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << metadata(table, p, label).dump(2) << "\n";
}

std::string params_to_json(const SystemParams& p) {
  json j;
  j["m"] = p.m;
  j["omega_m"] = p.omega_m / kTwoPi;
  j["gamma_m"] = p.gamma_m / kTwoPi;
  j["kappa"] = p.kappa / kTwoPi;
  j["g0"] = p.g0 / kTwoPi;
  j["P_L"] = p.P_L;
  j["omega_L"] = p.omega_L / kTwoPi;
  j["Delta"] = p.Delta / kTwoPi;
  j["G"] = p.G / kTwoPi;
  j["theta"] = p.theta;
  j["Gamma"] = p.Gamma / kTwoPi;
  j["G_prime"] = p.G_prime / kTwoPi;
  j["T"] = p.T;
  j["N_atoms"] = p.N_atoms;
  j["atom_damping"] = damping_name(p.atom_damping);
  j["row5_sign"] = row5_name(p.row5_sign);
  return j.dump();
}

SystemParams params_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("config root must be a JSON object");
  SystemParams p;
  for (const auto& [key, val] : j.items()) {
    auto num = [&]() -> double {
      if (!val.is_number()) throw std::invalid_argument("config key '" + key + "' must be a number");
      return val.get<double>();
    };
    auto str = [&]() -> std::string {
      if (!val.is_string()) throw std::invalid_argument("config key '" + key + "' must be a string");
      return val.get<std::string>();
    };
    if (key == "m") p.m = num();
    else if (key == "omega_m") p.omega_m = num() * kTwoPi;
    else if (key == "gamma_m") p.gamma_m = num() * kTwoPi;
    else if (key == "kappa") p.kappa = num() * kTwoPi;
    else if (key == "g0") p.g0 = num() * kTwoPi;
    else if (key == "P_L") p.P_L = num();
    else if (key == "omega_L") p.omega_L = num() * kTwoPi;
    else if (key == "Delta") p.Delta = num() * kTwoPi;
    else if (key == "G") p.G = num() * kTwoPi;
    else if (key == "theta") p.theta = num();
    else if (key == "Gamma") p.Gamma = num() * kTwoPi;
    else if (key == "G_prime") p.G_prime = num() * kTwoPi;
    else if (key == "T") p.T = num();
    else if (key == "N_atoms") p.N_atoms = num();
    else if (key == "atom_damping") p.atom_damping = damping_from(str());
    else if (key == "row5_sign") p.row5_sign = row5_from(str());
    else throw std::invalid_argument("unknown config key: " + key);
  }
  validate(p);
  return p;
}

SystemParams load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return params_from_json(ss.str());
}

std::string derived_to_json(const SystemParams& p, const DerivedState& d) {
  const ExcitationCheck ex = validate_low_excitation(p, d);
  json j;
  j["E_L"] = d.E_L;
  j["alpha_s"] = {d.alpha_s.real(), d.alpha_s.imag()};
  j["X_s"] = d.X_s;
  j["d_s"] = {d.d_s.real(), d.d_s.imag()};
  j["g"] = d.g;
  j["Q"] = d.Q;
  j["n_excitation"] = d.n_excitation;
  j["excitation_ratio"] = ex.ratio;
  j["low_excitation_warning"] = ex.warn;
  j["range_warnings"] = validate_experimental_ranges(p);
  return j.dump(2);
}

}  // namespace cqnc
