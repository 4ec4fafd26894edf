// Reproduction gate: one line per criterion, nonzero exit on any failure.

#include "atomslit/acceptance.hpp"

#include <iostream>

int main() {
  const auto results = atomslit::run_acceptance();
  std::cout << atomslit::acceptance_summary(results);
  const bool ok = atomslit::all_passed(results);
  std::cout << (ok ? "ALL CRITERIA PASSED" : "ACCEPTANCE FAILED") << "\n";
  return ok ? 0 : 1;
}
