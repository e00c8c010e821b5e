#include "slantlab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "slantlab/runner.hpp"

namespace {

thread_local std::string g_last_error;

char* owned_copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

slantlab::RunOptions to_options(const sll_options* opts) {
  slantlab::RunOptions out;
  if (!opts) return out;
  out.tols.structural = opts->tol_structural;
  out.tols.identity = opts->tol_identity;
  out.tols.fd = opts->tol_fd;
  out.tols.theta_guard = opts->theta_guard;
  out.seed = opts->seed;
  out.probes = opts->probes;
  out.threads = opts->threads;
  return out;
}

sll_status status_of(const slantlab::Error& e) {
  return slantlab::is_usage_error(e.code()) ? SLL_ERR_USAGE
                                            : SLL_ERR_NUMERICAL;
}

// exit-code convention of RunOutcome: 0 pass, 1 audit failed, 2 usage,
// 3 numerical
sll_status emit(const slantlab::RunOutcome& outcome, char** out_json,
                int* out_passed) {
  if (out_json) *out_json = owned_copy(outcome.report_json);
  if (out_passed) *out_passed = outcome.exit_code == 0 ? 1 : 0;
  switch (outcome.exit_code) {
    case 0:
    case 1: return SLL_OK;
    case 2: g_last_error = outcome.error_message; return SLL_ERR_USAGE;
    default: g_last_error = outcome.error_message; return SLL_ERR_NUMERICAL;
  }
}

template <typename Fn>
sll_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const slantlab::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SLL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SLL_ERR_INTERNAL;
  }
}

}  // namespace

struct sll_immersion {
  slantlab::Immersion imm;
};

extern "C" {

const char* sll_version(void) { return "1.0.0"; }

const char* sll_status_name(sll_status status) {
  switch (status) {
    case SLL_OK: return "ok";
    case SLL_ERR_USAGE: return "usage-error";
    case SLL_ERR_NUMERICAL: return "numerical-error";
    case SLL_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* sll_last_error(void) { return g_last_error.c_str(); }

void sll_string_free(char* s) { std::free(s); }

void sll_options_init(sll_options* opts) {
  if (!opts) return;
  const slantlab::Tolerances defaults;
  opts->tol_structural = defaults.structural;
  opts->tol_identity = defaults.identity;
  opts->tol_fd = defaults.fd;
  opts->theta_guard = defaults.theta_guard;
  opts->seed = 0;
  opts->probes = 20;
  opts->threads = 0;
}

sll_status sll_immersion_builtin(const char* name, sll_immersion** out) {
  if (!name || !out) {
    g_last_error = "null argument";
    return SLL_ERR_USAGE;
  }
  return guarded([&] {
    *out = new sll_immersion{slantlab::get_example(name)};
    return SLL_OK;
  });
}

sll_status sll_immersion_from_spec(const char* json_text,
                                   sll_immersion** out) {
  if (!json_text || !out) {
    g_last_error = "null argument";
    return SLL_ERR_USAGE;
  }
  return guarded([&] {
    *out = new sll_immersion{slantlab::load_spec_text(json_text)};
    return SLL_OK;
  });
}

void sll_immersion_free(sll_immersion* imm) { delete imm; }

sll_status sll_immersion_default_grid(const sll_immersion* imm, char** out) {
  if (!imm || !out) {
    g_last_error = "null argument";
    return SLL_ERR_USAGE;
  }
  return guarded([&] {
    *out = owned_copy(slantlab::default_grid(imm->imm).to_string());
    return SLL_OK;
  });
}

sll_status sll_list_examples(char** out_json) {
  if (!out_json) {
    g_last_error = "null argument";
    return SLL_ERR_USAGE;
  }
  return guarded([&] {
    return emit(slantlab::run_list_examples(), out_json, nullptr);
  });
}

sll_status sll_describe(const sll_immersion* imm, char** out_json) {
  if (!imm || !out_json) {
    g_last_error = "null argument";
    return SLL_ERR_USAGE;
  }
  return guarded([&] {
    return emit(slantlab::run_describe(imm->imm), out_json, nullptr);
  });
}

sll_status sll_classify(const sll_immersion* imm, const char* point,
                        const sll_options* opts, char** out_json,
                        int* out_passed) {
  if (!imm || !point) {
    g_last_error = "null argument";
    return SLL_ERR_USAGE;
  }
  return guarded([&] {
    return emit(slantlab::run_classify(imm->imm, point, to_options(opts)),
                out_json, out_passed);
  });
}

sll_status sll_scan(const sll_immersion* imm, const char* grid,
                    const sll_options* opts, char** out_json,
                    int* out_passed) {
  if (!imm) {
    g_last_error = "null argument";
    return SLL_ERR_USAGE;
  }
  return guarded([&] {
    return emit(slantlab::run_scan(imm->imm, grid ? grid : "",
                                   to_options(opts)),
                out_json, out_passed);
  });
}

sll_status sll_check_warped(const sll_immersion* imm, const char* split,
                            const char* grid, const sll_options* opts,
                            char** out_json, int* out_passed) {
  if (!imm || !split) {
    g_last_error = "null argument";
    return SLL_ERR_USAGE;
  }
  return guarded([&] {
    return emit(slantlab::run_check_warped(imm->imm, split, grid ? grid : "",
                                           to_options(opts)),
                out_json, out_passed);
  });
}

sll_status sll_identities(const sll_immersion* imm, const char* split_or_null,
                          const char* grid, const char* suite,
                          const sll_options* opts, char** out_json,
                          int* out_passed) {
  if (!imm) {
    g_last_error = "null argument";
    return SLL_ERR_USAGE;
  }
  return guarded([&] {
    return emit(slantlab::run_identities(
                    imm->imm, split_or_null ? split_or_null : "",
                    grid ? grid : "", suite ? suite : "", to_options(opts)),
                out_json, out_passed);
  });
}

sll_status sll_audit_inequality(const sll_immersion* imm, const char* split,
                                const char* grid, const sll_options* opts,
                                char** out_json, int* out_passed) {
  if (!imm || !split) {
    g_last_error = "null argument";
    return SLL_ERR_USAGE;
  }
  return guarded([&] {
    return emit(slantlab::run_audit_inequality(imm->imm, split,
                                               grid ? grid : "",
                                               to_options(opts)),
                out_json, out_passed);
  });
}

sll_status sll_report_csv(const char* report_json, char** out_csv) {
  if (!report_json || !out_csv) {
    g_last_error = "null argument";
    return SLL_ERR_USAGE;
  }
  return guarded([&] {
    *out_csv = owned_copy(slantlab::render_csv(report_json));
    return SLL_OK;
  });
}

}  // extern "C"
