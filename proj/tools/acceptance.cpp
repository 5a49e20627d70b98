// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "toricbott/suite.hpp"

int main(int argc, char** argv) {
  toricbott::suite::Options opt;
  if (argc > 1) opt.jobs = static_cast<unsigned>(std::strtoul(argv[1], nullptr, 10));
  int failed = 0;
  try {
    for (const auto& r : toricbott::suite::run_all(opt)) {
      std::printf("%s %s  %s [%zu instances, %.2fs]\n    %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                  r.title.c_str(), r.instances, r.seconds, r.detail.c_str());
      failed += r.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::printf("FAIL  suite aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
