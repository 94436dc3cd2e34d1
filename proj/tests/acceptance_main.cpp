// Acceptance driver: one pass/fail line per criterion. With arguments, runs
// only the criteria they select (number, tag or title fragment).

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <string>
#include <thread>

#include "multirel/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> filters(argv + 1, argv + argc);
  multirel::AcceptanceOptions opt;
  opt.jobs = std::max(1U, std::thread::hardware_concurrency());

  bool all = true;
  int ran = 0;
  for (const auto& c : multirel::criteria()) {
    bool selected = filters.empty();
    for (const auto& f : filters) selected = selected || multirel::matches(c, f);
    if (!selected) continue;
    ++ran;
    const auto r = multirel::run_criterion(c, opt);
    all = all && r.pass();
    std::cout << "criterion " << std::setw(2) << c.id << ": " << (r.pass() ? "PASS" : "FAIL") << "  " << c.title
              << "  (" << std::fixed << std::setprecision(2) << r.seconds << "s / " << std::setprecision(0)
              << c.budget_seconds << "s, " << r.checks.size() << " checks)";
    if (!r.pass()) {
      std::string why = r.summary();
      for (auto pos = why.find("\n  "); pos != std::string::npos; pos = why.find("\n  ")) why.replace(pos, 3, "; ");
      std::cout << "  " << why;
    }
    std::cout << "\n";
  }
  if (ran == 0) {
    std::cerr << "no criterion matches\n";
    return 2;
  }
  return all ? 0 : 1;
}
