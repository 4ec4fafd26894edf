#pragma once

#include <string>
#include <string_view>

namespace atomslit {

// Double-slit geometries. A: rigid slits. B: two independent trapped atoms.
// C1/C2: one oscillator records the recoil (single slit moves, or the double
// slit moves as a unit). D: C1 with an additional longitudinal mode.
// E: two atoms coupled by a weak spring.
enum class Config { A, B, C1, C2, D, E };

// SHORT: pulse much shorter than the trap period, scattering is a coherent
// kick. LONG: golden-rule regime, final states of different energy are
// distinguishable and the state is an incoherent mixture.
enum class Pulse { Short, Long };

enum class Treatment { Exact, FirstOrder };

std::string_view to_string(Config c);
std::string_view to_string(Pulse p);
std::string_view to_string(Treatment t);

// Case-insensitive. Accepts "first" and "first_order" for FirstOrder.
// Throws std::invalid_argument on unknown names.
Config parse_config(std::string_view s);
Pulse parse_pulse(std::string_view s);
Treatment parse_treatment(std::string_view s);

inline bool is_config_c(Config c) { return c == Config::C1 || c == Config::C2; }

}  // namespace atomslit
