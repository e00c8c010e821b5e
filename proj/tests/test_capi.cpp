#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <string>

#include "slantlab.h"

namespace {

using nlohmann::json;

struct Owned {
  char* s = nullptr;
  ~Owned() { sll_string_free(s); }
  json parse() const {
    REQUIRE(s != nullptr);
    return json::parse(s);
  }
};

struct Handle {
  sll_immersion* h = nullptr;
  ~Handle() { sll_immersion_free(h); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(sll_version()) == "1.0.0");
  CHECK(std::string(sll_status_name(SLL_OK)) == "ok");
  CHECK(std::string(sll_status_name(SLL_ERR_USAGE)) == "usage-error");
}

TEST_CASE("builtin handles") {
  Handle imm;
  CHECK(sll_immersion_builtin("example-5.1", &imm.h) == SLL_OK);
  Owned grid;
  CHECK(sll_immersion_default_grid(imm.h, &grid.s) == SLL_OK);
  CHECK(std::string(grid.s).find("t=") != std::string::npos);

  sll_immersion* missing = nullptr;
  CHECK(sll_immersion_builtin("nonesuch", &missing) == SLL_ERR_USAGE);
  CHECK(std::string(sll_last_error()).find("nonesuch") != std::string::npos);
}

TEST_CASE("spec documents through the C surface") {
  Handle imm;
  const char* doc = R"({"name":"plane","params":["a","b"],
    "ambient_complex_dim":2,"coords":["a","b","0","0"]})";
  REQUIRE(sll_immersion_from_spec(doc, &imm.h) == SLL_OK);
  Owned report;
  int passed = 0;
  sll_options opts;
  sll_options_init(&opts);
  CHECK(sll_classify(imm.h, "a=0.5,b=0.5", &opts, &report.s, &passed) ==
        SLL_OK);
  CHECK(passed == 1);
  const json j = report.parse();
  CHECK(j["payload"]["tag"] == "complex-point");
  CHECK(j["payload"]["m2"] == 0);

  sll_immersion* bad = nullptr;
  CHECK(sll_immersion_from_spec("{\"name\":1}", &bad) == SLL_ERR_USAGE);
}

TEST_CASE("list and describe") {
  Owned listed;
  CHECK(sll_list_examples(&listed.s) == SLL_OK);
  const json j = listed.parse();
  CHECK(j["payload"]["examples"].size() == 6);

  Handle imm;
  REQUIRE(sll_immersion_builtin("example-3.1", &imm.h) == SLL_OK);
  Owned described;
  CHECK(sll_describe(imm.h, &described.s) == SLL_OK);
  const json d = described.parse();
  CHECK(d["payload"]["coords"][3] == "sin(v)");
  CHECK(d["payload"]["ambient_dim"] == 6);
}

TEST_CASE("classify through the C surface") {
  Handle imm;
  REQUIRE(sll_immersion_builtin("example-3.1", &imm.h) == SLL_OK);
  sll_options opts;
  sll_options_init(&opts);
  Owned report;
  int passed = 0;
  REQUIRE(sll_classify(imm.h, "t=0,s=0,u=0,v=1.0471976", &opts, &report.s,
                       &passed) == SLL_OK);
  const json j = report.parse();
  CHECK(j["payload"]["tag"] == "pointwise-semi-slant");
  CHECK(std::abs(j["payload"]["theta"].get<double>() - 1.0471976) < 1e-9);

  // usage error: missing parameters
  Owned err_report;
  const sll_status st =
      sll_classify(imm.h, "t=2", &opts, &err_report.s, &passed);
  CHECK(st == SLL_ERR_USAGE);
  const json e = err_report.parse();
  CHECK(e["error"]["code"] == "InvalidArgument");
  CHECK(e["passed"] == false);
}

TEST_CASE("audit commands and CSV rendering") {
  Handle imm;
  REQUIRE(sll_immersion_builtin("example-5.1", &imm.h) == SLL_OK);
  sll_options opts;
  sll_options_init(&opts);
  opts.probes = 5;
  opts.seed = 11;

  Owned warped;
  int passed = 0;
  REQUIRE(sll_check_warped(imm.h, "base=t,s;fiber=u,v",
                           "t=0.6:3.1:3,s=0.6:3.1:3,u=0.2:1.3:2,v=0.2:1.3:2",
                           &opts, &warped.s, &passed) == SLL_OK);
  CHECK(passed == 1);

  Owned audit;
  REQUIRE(sll_audit_inequality(
              imm.h, "base=t,s;fiber=u,v",
              "t=0.6:3.1:3,s=0.6:3.1:3,u=0.2:1.3:2,v=0.2:1.3:2", &opts,
              &audit.s, &passed) == SLL_OK);
  CHECK(passed == 1);
  Owned csv;
  REQUIRE(sll_report_csv(audit.s, &csv.s) == SLL_OK);
  const std::string header(csv.s, std::string(csv.s).find('\n'));
  CHECK(header == "index,t,s,u,v,lhs,rhs,margin,theta,grad_lnf_sq,skipped");

  // CSV is only defined for grid-shaped reports
  Owned described;
  REQUIRE(sll_describe(imm.h, &described.s) == SLL_OK);
  Owned bad_csv;
  CHECK(sll_report_csv(described.s, &bad_csv.s) == SLL_ERR_USAGE);
}

TEST_CASE("identities through the C surface, byte-stable across repeats") {
  Handle imm;
  REQUIRE(sll_immersion_builtin("example-5.1", &imm.h) == SLL_OK);
  sll_options opts;
  sll_options_init(&opts);
  opts.probes = 6;
  opts.seed = 3;
  const char* grid = "t=0.6:3.1:2,s=0.6:3.1:2,u=0.2:1.3:2,v=0.2:1.3:2";
  Owned a, b;
  int pa = 0, pb = 0;
  REQUIRE(sll_identities(imm.h, "base=t,s;fiber=u,v", grid, "all", &opts,
                         &a.s, &pa) == SLL_OK);
  opts.threads = 3;
  REQUIRE(sll_identities(imm.h, "base=t,s;fiber=u,v", grid, "all", &opts,
                         &b.s, &pb) == SLL_OK);
  CHECK(pa == 1);
  CHECK(std::string(a.s) == std::string(b.s));

  // MissingSplit surfaces as a usage error
  Owned c;
  int pc = 0;
  CHECK(sll_identities(imm.h, nullptr, grid, "all", &opts, &c.s, &pc) ==
        SLL_ERR_USAGE);
  CHECK(c.parse()["error"]["code"] == "MissingSplit");
}
