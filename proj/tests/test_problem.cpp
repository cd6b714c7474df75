#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/problem.hpp"
#include "core/version.hpp"

using namespace kt;

namespace {

std::string error_text(const std::string& problem) {
  try {
    parse_problem(problem);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kRingProblem =
    "# toy surface\n"
    "model multiproj\n"
    "factors 1 1\n"
    "\n"
    "class alpha 1 1\n"
    "class beta 2 2\n"
    "task sequence alpha beta\n"
    "task equivalence alpha beta\n";

}  // namespace

TEST_CASE("parsing a ring problem") {
  const ProblemFile p = parse_problem(kRingProblem);
  CHECK(p.kind == ProblemFile::ModelKind::MultiProj);
  CHECK(p.factor_dims == std::vector<uint32_t>{1, 1});
  CHECK(p.classes.size() == 2);
  CHECK(p.classes.at("alpha").coords == std::vector<Rat>{Rat(1), Rat(1)});
  REQUIRE(p.tasks.size() == 2);
  CHECK(p.tasks[0].kind == "sequence");
  CHECK(p.tasks[1].args == std::vector<std::string>{"alpha", "beta"});
  CHECK(p.source == kRingProblem);
}

TEST_CASE("parsing a polytope problem") {
  const ProblemFile p = parse_problem(
      "model polytope\n"
      "dim 2\n"
      "polytope square\n"
      "vertex 0 0\n"
      "vertex 1 0\n"
      "vertex 0 1\n"
      "vertex 1 1\n"
      "end\n"
      "task sequence square square\n");
  CHECK(p.kind == ProblemFile::ModelKind::Polytope);
  CHECK(p.dim == 2);
  CHECK(p.polytopes.at("square").vertices().size() == 4);
}

TEST_CASE("parse diagnostics carry line numbers") {
  CHECK(error_text("model polytope\n"
                   "dim 2\n"
                   "polytope bad\n"
                   "vertex 1/0 0\n"
                   "end\n")
            .find("line 4") != std::string::npos);
  CHECK(error_text("model nowhere\n").find("line 1") != std::string::npos);
  CHECK(error_text("model multiproj\nfactors 1 1\nclass a 1\n")
            .find("line 3") != std::string::npos);
  CHECK(error_text("model multiproj\nfactors 1 1\ntask sequence a b\n")
            .find("line 3") != std::string::npos);
  CHECK(error_text("model multiproj\nfactors 1 1\nclass a 1 1\n"
                   "task juggle a a\n")
            .find("juggle") != std::string::npos);
}

TEST_CASE("structural validation") {
  // No model at all.
  CHECK(error_text("class a 1 1\n") != "");
  // Duplicate names.
  CHECK(error_text("model multiproj\nfactors 1 1\nclass a 1 1\nclass a 2 2\n") !=
        "");
  // vertex outside a polytope block, unterminated block.
  CHECK(error_text("model polytope\ndim 2\nvertex 0 0\n") != "");
  CHECK(error_text("model polytope\ndim 2\npolytope p\nvertex 0 0\n") != "");
  // Tasks that need pairs.
  CHECK(error_text("model multiproj\nfactors 1 1\nclass a 1 1\n"
                   "task sequence a\n") != "");
  // Scan is meaningless on a table model.
  CHECK(error_text("model table\nn 2\nbasis 1\nentry 1 1 1\ntask scan 5\n") !=
        "");
  // Signature needs n - 2 reference classes.
  CHECK(error_text("model multiproj\nfactors 1 1 1\nclass a 1 1 1\n"
                   "task signature\n") != "");
  // Mixing model kinds.
  CHECK(error_text("model multiproj\nfactors 1 1\ndim 2\n") != "");
}

TEST_CASE("table entries symmetrize") {
  // Exact mode: permuted duplicates must agree...
  const ProblemFile ok = parse_problem(
      "model table\n"
      "n 2\n"
      "basis 2\n"
      "entry 1 2 3\n"
      "entry 2 1 3\n"
      "entry 1 1 2\n"
      "class a 1 1\n"
      "task inequalities a a\n");
  CHECK(ok.table_entries.at({1, 1}) == 3);
  CHECK(ok.table_entries.at({2, 0}) == 2);
  // ...and a conflict is rejected.
  CHECK(error_text("model table\nn 2\nbasis 2\n"
                   "entry 1 2 3\nentry 2 1 4\n")
            .find("conflict") != std::string::npos);
  // Float mode averages instead.
  const ProblemFile avg = parse_problem(
      "model table\n"
      "n 2\n"
      "basis 2\n"
      "values float\n"
      "entry 1 2 3.0\n"
      "entry 2 1 3.0\n"
      "class a 1 1\n"
      "task inequalities a a\n");
  CHECK(avg.table_float);
  CHECK(avg.table_entries.at({1, 1}) == 3);

  CHECK(error_text("model table\nn 2\nbasis 2\nentry 1 3 1\n") != "");
  CHECK(error_text("model table\nn 2\nbasis 2\nentry 1 1.5\n") != "");
}

TEST_CASE("run produces a frozen sequence report") {
  const ProblemFile p = parse_problem(
      "model polytope\n"
      "dim 2\n"
      "polytope square\n"
      "vertex 0 0\nvertex 1 0\nvertex 0 1\nvertex 1 1\n"
      "end\n"
      "polytope triangle\n"
      "vertex 0 0\nvertex 1 0\nvertex 0 1\n"
      "end\n"
      "task sequence square triangle\n");
  const Report r = run_problem(p, 0, std::nullopt);
  CHECK(r.model == "polytope dim 2");
  CHECK(r.mode == "exact");
  CHECK(r.version == kVersion);
  REQUIRE(r.tasks.size() == 1);
  REQUIRE(r.tasks[0].sequence.has_value());
  CHECK(r.tasks[0].sequence->s ==
        std::vector<Rat>{Rat(1, 2), Rat(1), Rat(1)});
  CHECK(report_exit_code(r) == 0);

  const std::string text = render_report_text(r);
  CHECK(text.find("s: 1/2 1 1") != std::string::npos);
  CHECK(text.find("input_digest:") != std::string::npos);
}

TEST_CASE("determinism and structured round trip") {
  const ProblemFile p = parse_problem(kRingProblem);
  const Report a = run_problem(p, 3, std::nullopt);
  const Report b = run_problem(p, 3, std::nullopt);
  CHECK(a == b);
  CHECK(render_report_text(a) == render_report_text(b));
  const std::string json = render_report_json(a);
  CHECK(json == render_report_json(b));
  CHECK(parse_report_json(json) == a);
}

TEST_CASE("task failures name the task") {
  const ProblemFile p = parse_problem(
      "model multiproj\n"
      "factors 1 1\n"
      "class border 1 0\n"
      "class inner 1 1\n"
      "task equivalence border inner\n");
  try {
    run_problem(p, 0, std::nullopt);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
    CHECK(std::string(e.what()).find("task 1") != std::string::npos);
    CHECK(std::string(e.what()).find("border") != std::string::npos);
  }
}

TEST_CASE("tolerance is rejected outside float tables") {
  const ProblemFile p = parse_problem(kRingProblem);
  CHECK_THROWS_AS(run_problem(p, 0, 1e-9), Error);

  const ProblemFile table = parse_problem(
      "model table\n"
      "n 2\n"
      "basis 2\n"
      "values float\n"
      "entry 1 1 0.0\n"
      "entry 1 2 1.0\n"
      "entry 2 2 0.0\n"
      "class a 1 1\n"
      "class b 3 3\n"
      "task equivalence a b\n");
  const Report r = run_problem(table, 0, 1e-8);
  CHECK(r.mode == "approximate tolerance=1e-08");
  REQUIRE(r.tasks[0].equivalence.has_value());
  CHECK(r.tasks[0].equivalence->approximate);
  for (const bool h : r.tasks[0].equivalence->holds) CHECK(h);
  CHECK(report_exit_code(r) == 0);
}

TEST_CASE("equivalence inconsistency surfaces in the exit code") {
  // A rank-one "intersection table" satisfies every numeric equality while
  // its classes are wildly non-proportional; the report must flag the
  // disagreement instead of passing silently.
  const ProblemFile p = parse_problem(
      "model table\n"
      "n 2\n"
      "basis 2\n"
      "entry 1 1 1\n"
      "entry 1 2 1\n"
      "entry 2 2 1\n"
      "class a 1 2\n"
      "class b 2 1\n"
      "task equivalence a b\n");
  const Report r = run_problem(p, 0, std::nullopt);
  REQUIRE(r.tasks[0].equivalence.has_value());
  CHECK_FALSE(r.tasks[0].equivalence->consistent);
  CHECK(report_exit_code(r) == 2);
  CHECK(render_report_text(r).find("consistent: NO") != std::string::npos);
}

TEST_CASE("scan task carries its seed and the run seed") {
  const ProblemFile with_seed = parse_problem(
      "model multiproj\nfactors 1 1\ntask scan 6 11\n");
  const Report a = run_problem(with_seed, 999, std::nullopt);
  REQUIRE(a.tasks[0].scan.has_value());
  CHECK(a.tasks[0].scan->samples == 6);
  CHECK(a.tasks[0].subject == "samples=6 seed=11");

  const ProblemFile seedless =
      parse_problem("model multiproj\nfactors 1 1\ntask scan 6\n");
  const Report b = run_problem(seedless, 11, std::nullopt);
  CHECK(b.tasks[0].subject == "samples=6 seed=11");
  CHECK(a.tasks[0].scan == b.tasks[0].scan);
}

TEST_CASE("signature task output") {
  const ProblemFile p = parse_problem(
      "model multiproj\n"
      "factors 2 1\n"
      "class omega 1 1\n"
      "task signature omega\n");
  const Report r = run_problem(p, 0, std::nullopt);
  REQUIRE(r.tasks[0].signature.has_value());
  CHECK(*r.tasks[0].signature == Inertia{1, 1, 0});
  CHECK(render_report_text(r).find("positives=1") != std::string::npos);
}

TEST_CASE("json parse rejects junk") {
  CHECK_THROWS_AS(parse_report_json("not json"), Error);
  CHECK_THROWS_AS(parse_report_json("{}"), Error);
}
