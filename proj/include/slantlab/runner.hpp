#pragma once

#include <cstdint>
#include <string>

#include "slantlab/immersion.hpp"
#include "slantlab/report.hpp"
#include "slantlab/types.hpp"

namespace slantlab {

struct RunOptions {
  Tolerances tols;
  std::uint64_t seed = 0;
  int probes = 20;
  int threads = 0;  // 0 = hardware concurrency (SLANTLAB_THREADS still caps)
};

// exit codes: 0 all audited assertions pass, 1 audit failure,
// 2 usage error, 3 numerical failure
struct RunOutcome {
  int exit_code = 0;
  std::string report_json;
  std::string error_message;  // set when exit_code is 2 or 3
};

RunOutcome run_list_examples();
RunOutcome run_describe(const Immersion& imm);
RunOutcome run_classify(const Immersion& imm, const std::string& point,
                        const RunOptions& opts);
// empty grid string = the immersion's default grid
RunOutcome run_scan(const Immersion& imm, const std::string& grid,
                    const RunOptions& opts);
RunOutcome run_check_warped(const Immersion& imm, const std::string& split,
                            const std::string& grid, const RunOptions& opts);
// empty suite or "all" = the full identity catalog; split may be empty for
// identities that do not need one
RunOutcome run_identities(const Immersion& imm, const std::string& split,
                          const std::string& grid, const std::string& suite,
                          const RunOptions& opts);
RunOutcome run_audit_inequality(const Immersion& imm, const std::string& split,
                                const std::string& grid,
                                const RunOptions& opts);

// CSV view of a JSON report produced by run_scan / run_audit_inequality
std::string render_csv(const std::string& report_json);

}  // namespace slantlab
