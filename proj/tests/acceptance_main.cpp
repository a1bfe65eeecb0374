#include "logchart/acceptance.hpp"

#include <cstring>
#include <iostream>
#include <string>

using namespace logchart::acceptance;

int main(int argc, char** argv) {
  SuiteOptions opt;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--scale" && i + 1 < argc) {
      opt.scale = parse_scale(argv[++i]);
    } else if (a == "--seed" && i + 1 < argc) {
      opt.seed = std::stoull(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--scale smoke|full] [--seed N]\n";
      return 2;
    }
  }
  std::cout << "acceptance battery, scale " << scale_name(opt.scale) << ", seed " << opt.seed << "\n";
  bool all = true;
  for (const auto& r : run_suite(opt)) {
    std::cout << format_line(r) << "\n";
    if (!r.pass) {
      std::cout << "  evidence: " << r.evidence.dump() << "\n";
      all = false;
    }
  }
  std::cout << (all ? "all criteria pass" : "SOME CRITERIA FAIL") << "\n";
  return all ? 0 : 1;
}
