#include "atomslit/config.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace atomslit {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

}  // namespace

std::string_view to_string(Config c) {
  switch (c) {
    case Config::A: return "A";
    case Config::B: return "B";
    case Config::C1: return "C1";
    case Config::C2: return "C2";
    case Config::D: return "D";
    case Config::E: return "E";
  }
  return "?";
}

std::string_view to_string(Pulse p) { return p == Pulse::Short ? "short" : "long"; }

std::string_view to_string(Treatment t) { return t == Treatment::Exact ? "exact" : "first"; }

Config parse_config(std::string_view s) {
  const std::string u = upper(s);
  for (Config c : {Config::A, Config::B, Config::C1, Config::C2, Config::D, Config::E}) {
    if (to_string(c) == u) return c;
  }
  throw std::invalid_argument("unknown config '" + std::string(s) + "'");
}

Pulse parse_pulse(std::string_view s) {
  const std::string u = upper(s);
  if (u == "SHORT") return Pulse::Short;
  if (u == "LONG") return Pulse::Long;
  throw std::invalid_argument("unknown pulse '" + std::string(s) + "'");
}

Treatment parse_treatment(std::string_view s) {
  const std::string u = upper(s);
  if (u == "EXACT") return Treatment::Exact;
  if (u == "FIRST" || u == "FIRST_ORDER") return Treatment::FirstOrder;
  throw std::invalid_argument("unknown treatment '" + std::string(s) + "'");
}

}  // namespace atomslit
