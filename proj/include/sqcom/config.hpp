#pragma once

#include <string>
#include <string_view>

#include "sqcom/params.hpp"

namespace sqcom {

/// Reads the flat JSON parameter config. Keys: kappa_hz, gamma_m_hz,
/// omega_m_hz, omega_l_hz, g0_hz, G_hz, theta_rad, delta_hz, p_in_w,
/// temperature_k. All *_hz values are ordinary frequencies nu = omega / 2pi.
/// Throws ConfigError (with line/column for syntax errors).
SystemParams parse_params(std::string_view text);
SystemParams load_params(const std::string& path);

/// Serializes params back to the config format. Re-parsing the output yields
/// bit-identical SystemParams.
std::string dump_params(const SystemParams& p);

double hz_to_angular(double nu);

/// Inverse of hz_to_angular chosen so that hz_to_angular(result) == omega
/// whenever such a double exists.
double angular_to_hz(double omega);

}  // namespace sqcom
