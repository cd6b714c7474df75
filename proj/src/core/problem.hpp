#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/hodge.hpp"
#include "core/intersect.hpp"
#include "core/polytope.hpp"

namespace kt {

// Parsed problem file. The input format is line-oriented: a `model` header
// (polytope / multiproj / table with its parameters), named classes or
// polytopes, then tasks. Rationals are written "p/q"; float literals are
// only legal for table values after `values float`.
struct ProblemFile {
  enum class ModelKind { Polytope, MultiProj, Table };

  ModelKind kind = ModelKind::Polytope;
  uint32_t dim = 0;                   // polytope ambient dimension
  std::vector<uint32_t> factor_dims;  // multiproj factors
  uint32_t table_n = 0;
  uint32_t table_h = 0;
  bool table_float = false;
  std::map<std::vector<uint32_t>, Rat> table_entries;

  std::map<std::string, ClassVector> classes;
  std::map<std::string, Polytope> polytopes;

  struct Task {
    std::string kind;
    std::vector<std::string> args;
    uint32_t line = 0;
  };
  std::vector<Task> tasks;

  std::string source;  // raw bytes, for the provenance digest
};

// Throws Error(Parse) with a line diagnostic on malformed input, including
// name/dimension validation of every task.
ProblemFile parse_problem(const std::string& text);

struct TaskResult {
  std::string kind;
  std::string subject;
  std::optional<KTSequence> sequence;
  std::optional<InequalityReport> inequalities;
  std::optional<EquivalenceReport> equivalence;
  std::optional<Inertia> signature;
  std::optional<InjectivityScan> scan;

  bool operator==(const TaskResult&) const = default;
};

struct Report {
  std::string model;
  std::string mode;          // "exact" or "approximate tolerance=<t>"
  std::string input_digest;  // fnv1a64 of the problem bytes
  uint64_t seed = 0;
  std::string version;
  std::vector<TaskResult> tasks;

  bool operator==(const Report&) const = default;
};

// Executes every task in order. `seed` feeds scan tasks that do not carry
// their own; `tolerance` overrides the default only for float-table models
// and is rejected otherwise.
Report run_problem(const ProblemFile& problem, uint64_t seed,
                   std::optional<double> tolerance);

std::string render_report_text(const Report& report);
std::string render_report_json(const Report& report);
Report parse_report_json(const std::string& text);

// 0, or 2 when a report contains a consistency violation (disagreeing
// equivalence statuses, scan counterexamples, or a broken expansion
// identity).
int report_exit_code(const Report& report);

}  // namespace kt
