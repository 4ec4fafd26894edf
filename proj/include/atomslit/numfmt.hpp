#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace atomslit {

// Shortest decimal string that parses back to the same double.
inline std::string format_double(double x) {
  if (x == 0.0) return "0";  // folds -0
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

inline double parse_double(std::string_view s) {
  double x = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [end, ec] = std::from_chars(first, last, x);
  if (ec != std::errc{} || end != last) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return x;
}

// "re" when the imaginary part is zero, otherwise "(re,im)".
inline std::string format_complex(std::complex<double> z) {
  if (z.imag() == 0.0) return format_double(z.real());
  return "(" + format_double(z.real()) + "," + format_double(z.imag()) + ")";
}

// Accepts "re", "(re,im)" and "re,im".
inline std::complex<double> parse_complex(std::string_view s) {
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw std::invalid_argument("unbalanced parenthesis in '" + std::string(s) + "'");
    s = s.substr(1, s.size() - 2);
  }
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) return {parse_double(s), 0.0};
  return {parse_double(s.substr(0, comma)), parse_double(s.substr(comma + 1))};
}

}  // namespace atomslit
