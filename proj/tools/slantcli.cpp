// slantcli: command-line front end over the slantlab C API.
//
// Exit codes: 0 all audited assertions pass, 1 an audit failed,
// 2 usage error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "slantlab.h"

namespace {

struct CommonArgs {
  std::string immersion;
  std::string point;
  std::string grid;
  std::string split;
  std::string suite = "all";
  std::string out;
  std::string format = "json";
  sll_options opts{};
};

class OwnedString {
 public:
  ~OwnedString() { sll_string_free(s_); }
  char** slot() { return &s_; }
  const char* get() const { return s_ ? s_ : ""; }
  bool empty() const { return !s_ || !*s_; }

 private:
  char* s_ = nullptr;
};

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

// builtin example name, else a path to an immersion spec document
int make_immersion(const std::string& source, sll_immersion** out) {
  if (sll_immersion_builtin(source.c_str(), out) == SLL_OK) return 0;
  std::ifstream in(source);
  if (!in)
    return usage_error("'" + source +
                       "' is neither a built-in example nor a readable file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (sll_immersion_from_spec(text.c_str(), out) != SLL_OK)
    return usage_error(std::string(sll_last_error()));
  return 0;
}

int write_output(const CommonArgs& args, const char* json) {
  std::string payload;
  if (args.format == "json") {
    payload = json;
  } else if (args.format == "csv") {
    OwnedString csv;
    if (sll_report_csv(json, csv.slot()) != SLL_OK)
      return usage_error(std::string(sll_last_error()));
    payload = csv.get();
  } else {
    return usage_error("unknown format '" + args.format + "'");
  }
  if (args.out.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(args.out, std::ios::binary);
  if (!out) return usage_error("cannot write '" + args.out + "'");
  out << payload;
  return 0;
}

int status_to_exit(sll_status status, int passed) {
  switch (status) {
    case SLL_OK: return passed ? 0 : 1;
    case SLL_ERR_USAGE: return 2;
    case SLL_ERR_NUMERICAL: return 3;
    case SLL_ERR_INTERNAL: return 3;
  }
  return 3;
}

int finish(const CommonArgs& args, sll_status status, int passed,
           const OwnedString& report) {
  if (!report.empty()) {
    const int write_rc = write_output(args, report.get());
    if (write_rc != 0) return write_rc;
  } else if (status != SLL_OK) {
    return usage_error(std::string(sll_last_error()));
  }
  return status_to_exit(status, passed);
}

void add_tolerance_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--tol-structural", args.opts.tol_structural,
                  "structural (metric block) tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-identity", args.opts.tol_identity,
                  "tolerance for AD-path identities")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-fd", args.opts.tol_fd,
                  "tolerance for finite-difference-path residuals")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--theta-guard", args.opts.theta_guard,
                  "slant-angle guard band in radians")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "slantlab: classify parametric submanifolds of complex Euclidean "
      "space and audit warped-product identities"};
  app.require_subcommand(1);

  CommonArgs args;
  sll_options_init(&args.opts);

  auto* list_cmd = app.add_subcommand("list-examples",
                                      "list the built-in immersions");
  auto* describe_cmd =
      app.add_subcommand("describe", "print an immersion's coordinates");
  auto* classify_cmd =
      app.add_subcommand("classify", "classify one parameter point");
  auto* scan_cmd =
      app.add_subcommand("scan", "classify every point of a parameter grid");
  auto* warped_cmd = app.add_subcommand(
      "check-warped", "detect warped-product structure for a split");
  auto* identities_cmd = app.add_subcommand(
      "identities", "run the identity suite over a grid");
  auto* inequality_cmd = app.add_subcommand(
      "audit-inequality",
      "audit the second-fundamental-form inequality over a grid");

  for (CLI::App* cmd :
       {describe_cmd, classify_cmd, scan_cmd, warped_cmd, identities_cmd,
        inequality_cmd})
    cmd->add_option("--immersion", args.immersion,
                    "built-in example name or spec document path")
        ->required();
  classify_cmd->add_option("--point", args.point, "point as name=value,...")
      ->required();
  for (CLI::App* cmd : {scan_cmd, warped_cmd, identities_cmd, inequality_cmd})
    cmd->add_option("--grid", args.grid,
                    "grid as name=start:stop:count,... (default: the "
                    "immersion's default grid)");
  for (CLI::App* cmd : {warped_cmd, identities_cmd, inequality_cmd})
    cmd->add_option("--split", args.split, "split as base=...;fiber=...");
  warped_cmd->get_option("--split")->required();
  inequality_cmd->get_option("--split")->required();
  identities_cmd->add_option("--suite", args.suite,
                             "comma-separated identity names, or 'all'");
  identities_cmd->add_option("--probes", args.opts.probes,
                             "probe vectors per grid point")
      ->check(CLI::PositiveNumber);
  for (CLI::App* cmd : {classify_cmd, scan_cmd, warped_cmd, identities_cmd,
                        inequality_cmd}) {
    cmd->add_option("--seed", args.opts.seed, "probe-sampling seed");
    cmd->add_option("--out", args.out, "output path (default: stdout)");
    cmd->add_option("--format", args.format, "json|csv (json is authoritative)");
    add_tolerance_flags(cmd, args);
  }
  for (CLI::App* cmd : {list_cmd, describe_cmd}) {
    cmd->add_option("--out", args.out, "output path (default: stdout)");
    cmd->add_option("--format", args.format, "json");
  }

  CLI11_PARSE(app, argc, argv);

  if (list_cmd->parsed()) {
    OwnedString report;
    const sll_status status = sll_list_examples(report.slot());
    return finish(args, status, 1, report);
  }

  sll_immersion* imm = nullptr;
  const int rc = make_immersion(args.immersion, &imm);
  if (rc != 0) return rc;

  OwnedString report;
  sll_status status = SLL_OK;
  int passed = 1;
  if (describe_cmd->parsed()) {
    status = sll_describe(imm, report.slot());
  } else if (classify_cmd->parsed()) {
    status = sll_classify(imm, args.point.c_str(), &args.opts, report.slot(),
                          &passed);
  } else if (scan_cmd->parsed()) {
    status = sll_scan(imm, args.grid.c_str(), &args.opts, report.slot(),
                      &passed);
  } else if (warped_cmd->parsed()) {
    status = sll_check_warped(imm, args.split.c_str(), args.grid.c_str(),
                              &args.opts, report.slot(), &passed);
  } else if (identities_cmd->parsed()) {
    status = sll_identities(imm, args.split.empty() ? nullptr
                                                    : args.split.c_str(),
                            args.grid.c_str(), args.suite.c_str(), &args.opts,
                            report.slot(), &passed);
  } else if (inequality_cmd->parsed()) {
    status = sll_audit_inequality(imm, args.split.c_str(), args.grid.c_str(),
                                  &args.opts, report.slot(), &passed);
  }
  const int exit_code = finish(args, status, passed, report);
  sll_immersion_free(imm);
  return exit_code;
}
