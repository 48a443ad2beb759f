// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <CLI11.hpp>
#include <iostream>

#include "cli.hpp"
#include "verify.hpp"

#ifndef COXREG_FIXTURE_DIR
#define COXREG_FIXTURE_DIR "fixtures"
#endif

int main(int argc, char** argv) {
  CLI::App app{"coxreg acceptance criteria"};
  coxreg::cli::VerifyOptions opts;
  opts.fixtures = COXREG_FIXTURE_DIR;
  opts.threads = coxreg::cli::default_threads();
  std::vector<std::string> only;
  app.add_option("--fixtures", opts.fixtures, "Fixture directory");
  app.add_option("--only", only, "Criterion ids to run (default: all)");
  app.add_option("--threads", opts.threads, "Worker threads");
  CLI11_PARSE(app, argc, argv);

  if (only.empty()) only = coxreg::cli::all_criteria();
  int failed = 0;
  for (const std::string& id : only) {
    coxreg::cli::Check c;
    try {
      c = coxreg::cli::run_check(id, opts);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    if (!c.informational && !c.pass) ++failed;
    std::cout << coxreg::cli::format_check(c, true) << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? 1 : 0;
}
