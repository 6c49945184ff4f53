#pragma once

#include <iosfwd>
#include <string>

#include "cqnc/sweep.hpp"

namespace cqnc {

inline constexpr const char* kToolVersion = "1.0.0";

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Parse a scalar with an optional unit or parameter-multiple suffix.
// "300kHz" means an angular 2*pi*300e3 rad/s (frequency inputs follow the
// usual omega/2pi convention); "0.3kappa", "2omega_m", "0.5gamma_m",
// "10g0" scale the corresponding entry of ref; a bare number is taken
// verbatim (rad/s for frequencies).
double parse_quantity(const std::string& text, const SystemParams& ref);

// CSV with a '#'-prefixed JSON metadata prologue: parameter snapshot,
// column list, tool version, and any flagged (unstable) row indices.
void write_table(std::ostream& os, const SweepTable& table, const SystemParams& p,
                 const std::string& label);
void write_table_file(const std::string& path, const SweepTable& table,
                      const SystemParams& p, const std::string& label);

// Sidecar copy of the same metadata as plain JSON.
void write_metadata_file(const std::string& path, const SweepTable& table,
                         const SystemParams& p, const std::string& label);

// JSON configuration: keys are the SystemParams field names.  Frequencies
// and rates are stored as omega/2pi in Hz; theta in rad, m in kg, P_L in
// W, T in K.  Unknown keys are an error.
std::string params_to_json(const SystemParams& p);
SystemParams params_from_json(const std::string& text);
SystemParams load_config(const std::string& path);

std::string derived_to_json(const SystemParams& p, const DerivedState& d);

}  // namespace cqnc
