// Command line front end. Links only against the public C API so it doubles
// as a smoke test for the shared library surface.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "kt/kt.h"

namespace {

int fail_with(const std::string& stage, kt_status status) {
  std::fprintf(stderr, "kt: %s: %s\n", stage.c_str(), kt_last_error());
  switch (status) {
    case KT_ERR_CONSISTENCY:
    case KT_ERR_INTERNAL:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact intersection-number and mixed-volume analysis"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string output_path;
  std::string format = "text";
  uint64_t run_seed = 0;
  double tolerance = 0.0;

  CLI::App* run = app.add_subcommand("run", "run the tasks in a problem file");
  run->add_option("problem", problem_path, "problem file")->required();
  run->add_option("--output", output_path, "write the report to this path");
  run->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "structured"}));
  run->add_option("--seed", run_seed,
                  "seed for scan tasks without an explicit seed");
  CLI::Option* tol_opt =
      run->add_option("--tolerance", tolerance,
                      "comparison tolerance (float table models only)");

  uint64_t selftest_seed = 42;
  CLI::App* selftest =
      app.add_subcommand("selftest", "run the built-in property suites");
  selftest->add_option("--seed", selftest_seed, "suite seed");

  CLI11_PARSE(app, argc, argv);

  if (selftest->parsed()) {
    char* summary = nullptr;
    const int code = kt_selftest(selftest_seed, &summary);
    if (code < 0) return fail_with("selftest", KT_ERR_INTERNAL);
    std::fputs(summary, stdout);
    kt_string_free(summary);
    return code;
  }

  std::ifstream in(problem_path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "kt: cannot open %s\n", problem_path.c_str());
    return 1;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  kt_problem* problem = nullptr;
  kt_status status = kt_problem_parse(text.c_str(), &problem);
  if (status != KT_OK) return fail_with(problem_path, status);

  kt_report* report = nullptr;
  status = kt_problem_run(problem, run_seed, tolerance,
                          tol_opt->count() > 0 ? 1 : 0, &report);
  kt_problem_free(problem);
  if (status != KT_OK) return fail_with(problem_path, status);

  char* rendered = nullptr;
  status = (format == "structured") ? kt_report_render_json(report, &rendered)
                                    : kt_report_render_text(report, &rendered);
  if (status != KT_OK) {
    kt_report_free(report);
    return fail_with("render", status);
  }
  const int exit_code = kt_report_exit_code(report);
  kt_report_free(report);

  if (!output_path.empty()) {
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
      kt_string_free(rendered);
      std::fprintf(stderr, "kt: cannot write %s\n", output_path.c_str());
      return 1;
    }
    out << rendered;
  } else {
    std::fputs(rendered, stdout);
  }
  kt_string_free(rendered);
  return exit_code;
}
