#include "core/problem.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <sstream>

#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/version.hpp"

namespace kt {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kDefaultTableTolerance = 1e-9;

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string current;
  for (const char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

bool parse_u64(const std::string& text, uint64_t& out) {
  if (text.empty()) return false;
  for (const char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
  if (errno != 0 || end != text.c_str() + text.size()) return false;
  out = value;
  return true;
}

bool parse_u32(const std::string& text, uint32_t& out) {
  uint64_t wide = 0;
  if (!parse_u64(text, wide) || wide > 0xffffffffull) return false;
  out = static_cast<uint32_t>(wide);
  return true;
}

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') {
    return false;
  }
  for (const char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

struct Parser {
  ProblemFile problem;
  bool model_declared = false;
  bool dim_set = false;
  bool n_set = false;
  bool basis_set = false;
  bool saw_entry = false;
  std::string block_name;  // polytope currently being collected
  std::vector<std::vector<Rat>> block_vertices;
  uint32_t line_no = 0;
  std::map<std::vector<uint32_t>, std::vector<Rat>> entry_values;
  std::map<std::vector<uint32_t>, uint32_t> entry_first_line;

  [[noreturn]] void error(const std::string& message) const {
    fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + message);
  }

  void require_model(ProblemFile::ModelKind kind, const char* directive) const {
    if (!model_declared) {
      error(std::string(directive) + " before a model declaration");
    }
    if (problem.kind != kind) {
      error(std::string(directive) + " does not apply to this model kind");
    }
  }

  void require_ring_model(const char* directive) const {
    if (!model_declared) {
      error(std::string(directive) + " before a model declaration");
    }
    if (problem.kind == ProblemFile::ModelKind::Polytope) {
      error(std::string(directive) + " applies to multiproj or table models only");
    }
  }

  uint32_t class_space_dim() const {
    return problem.kind == ProblemFile::ModelKind::MultiProj
               ? static_cast<uint32_t>(problem.factor_dims.size())
               : problem.table_h;
  }

  uint32_t model_degree() const {
    if (problem.kind == ProblemFile::ModelKind::MultiProj) {
      uint32_t total = 0;
      for (const uint32_t d : problem.factor_dims) total += d;
      return total;
    }
    return problem.table_n;
  }

  void handle(const std::vector<std::string>& tokens) {
    const std::string& head = tokens[0];
    if (!block_name.empty() && head != "vertex" && head != "end") {
      error("polytope block '" + block_name + "' is still open (missing `end`)");
    }
    if (head == "model") {
      handle_model(tokens);
    } else if (head == "dim") {
      handle_dim(tokens);
    } else if (head == "factors") {
      handle_factors(tokens);
    } else if (head == "n") {
      handle_n(tokens);
    } else if (head == "basis") {
      handle_basis(tokens);
    } else if (head == "values") {
      handle_values(tokens);
    } else if (head == "entry") {
      handle_entry(tokens);
    } else if (head == "class") {
      handle_class(tokens);
    } else if (head == "polytope") {
      handle_polytope(tokens);
    } else if (head == "vertex") {
      handle_vertex(tokens);
    } else if (head == "end") {
      handle_end(tokens);
    } else if (head == "task") {
      handle_task(tokens);
    } else {
      error("unknown directive '" + head + "'");
    }
  }

  void handle_model(const std::vector<std::string>& tokens) {
    if (model_declared) error("duplicate model declaration");
    if (tokens.size() != 2) error("usage: model polytope|multiproj|table");
    if (tokens[1] == "polytope") {
      problem.kind = ProblemFile::ModelKind::Polytope;
    } else if (tokens[1] == "multiproj") {
      problem.kind = ProblemFile::ModelKind::MultiProj;
    } else if (tokens[1] == "table") {
      problem.kind = ProblemFile::ModelKind::Table;
    } else {
      error("unknown model kind '" + tokens[1] + "'");
    }
    model_declared = true;
  }

  void handle_dim(const std::vector<std::string>& tokens) {
    require_model(ProblemFile::ModelKind::Polytope, "dim");
    if (dim_set) error("duplicate dim");
    if (tokens.size() != 2 || !parse_u32(tokens[1], problem.dim) ||
        problem.dim == 0) {
      error("usage: dim <positive integer>");
    }
    dim_set = true;
  }

  void handle_factors(const std::vector<std::string>& tokens) {
    require_model(ProblemFile::ModelKind::MultiProj, "factors");
    if (!problem.factor_dims.empty()) error("duplicate factors");
    if (tokens.size() < 2) error("usage: factors <d1> [d2 ...]");
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      uint32_t d = 0;
      if (!parse_u32(tokens[i], d) || d == 0) {
        error("factor dimensions must be positive integers");
      }
      problem.factor_dims.push_back(d);
    }
  }

  void handle_n(const std::vector<std::string>& tokens) {
    require_model(ProblemFile::ModelKind::Table, "n");
    if (n_set) error("duplicate n");
    if (tokens.size() != 2 || !parse_u32(tokens[1], problem.table_n) ||
        problem.table_n == 0) {
      error("usage: n <positive integer>");
    }
    n_set = true;
  }

  void handle_basis(const std::vector<std::string>& tokens) {
    require_model(ProblemFile::ModelKind::Table, "basis");
    if (basis_set) error("duplicate basis");
    if (tokens.size() != 2 || !parse_u32(tokens[1], problem.table_h) ||
        problem.table_h == 0) {
      error("usage: basis <positive integer>");
    }
    basis_set = true;
  }

  void handle_values(const std::vector<std::string>& tokens) {
    require_model(ProblemFile::ModelKind::Table, "values");
    if (tokens.size() != 2 || tokens[1] != "float") {
      error("usage: values float");
    }
    if (saw_entry) error("`values float` must precede the first entry");
    problem.table_float = true;
  }

  void handle_entry(const std::vector<std::string>& tokens) {
    require_model(ProblemFile::ModelKind::Table, "entry");
    if (!n_set || !basis_set) error("entry before n/basis");
    if (tokens.size() != 2 + problem.table_n) {
      error("entry needs " + std::to_string(problem.table_n) +
            " basis indices and one value");
    }
    std::vector<uint32_t> powers(problem.table_h, 0);
    for (uint32_t i = 0; i < problem.table_n; ++i) {
      uint32_t index = 0;
      if (!parse_u32(tokens[1 + i], index) || index == 0 ||
          index > problem.table_h) {
        error("basis index '" + tokens[1 + i] + "' out of range 1.." +
              std::to_string(problem.table_h));
      }
      powers[index - 1] += 1;
    }
    const std::string& literal = tokens.back();
    Rat value;
    if (problem.table_float) {
      errno = 0;
      char* end = nullptr;
      const double parsed = std::strtod(literal.c_str(), &end);
      if (errno != 0 || end != literal.c_str() + literal.size() ||
          !std::isfinite(parsed)) {
        error("invalid float value '" + literal + "'");
      }
      value = Rat(parsed);
    } else {
      value = parse_rational(literal);
    }
    saw_entry = true;
    entry_values[powers].push_back(std::move(value));
    entry_first_line.emplace(powers, line_no);
  }

  void handle_class(const std::vector<std::string>& tokens) {
    require_ring_model("class");
    const uint32_t h = class_space_dim();
    if (h == 0) error("class before the model's basis size is known");
    if (tokens.size() != 2 + h) {
      error("class needs a name and " + std::to_string(h) + " coordinates");
    }
    if (!valid_name(tokens[1])) error("invalid class name '" + tokens[1] + "'");
    if (problem.classes.count(tokens[1])) {
      error("duplicate class '" + tokens[1] + "'");
    }
    std::vector<Rat> coords(h);
    for (uint32_t i = 0; i < h; ++i) coords[i] = parse_rational(tokens[2 + i]);
    problem.classes.emplace(tokens[1], ClassVector(std::move(coords)));
  }

  void handle_polytope(const std::vector<std::string>& tokens) {
    require_model(ProblemFile::ModelKind::Polytope, "polytope");
    if (!dim_set) error("polytope before dim");
    if (tokens.size() != 2) error("usage: polytope <name>");
    if (!valid_name(tokens[1])) {
      error("invalid polytope name '" + tokens[1] + "'");
    }
    if (problem.polytopes.count(tokens[1])) {
      error("duplicate polytope '" + tokens[1] + "'");
    }
    block_name = tokens[1];
    block_vertices.clear();
  }

  void handle_vertex(const std::vector<std::string>& tokens) {
    if (block_name.empty()) error("vertex outside a polytope block");
    if (tokens.size() != 1 + problem.dim) {
      error("vertex needs " + std::to_string(problem.dim) + " coordinates");
    }
    std::vector<Rat> point(problem.dim);
    for (uint32_t i = 0; i < problem.dim; ++i) {
      point[i] = parse_rational(tokens[1 + i]);
    }
    block_vertices.push_back(std::move(point));
  }

  void handle_end(const std::vector<std::string>& tokens) {
    if (block_name.empty()) error("`end` outside a polytope block");
    if (tokens.size() != 1) error("usage: end");
    if (block_vertices.empty()) {
      error("polytope '" + block_name + "' has no vertices");
    }
    problem.polytopes.emplace(
        block_name, Polytope::from_points(problem.dim, std::move(block_vertices)));
    block_name.clear();
    block_vertices.clear();
  }

  void handle_task(const std::vector<std::string>& tokens) {
    if (!model_declared) error("task before a model declaration");
    if (tokens.size() < 2) error("usage: task <kind> [args]");
    ProblemFile::Task task;
    task.kind = tokens[1];
    task.args.assign(tokens.begin() + 2, tokens.end());
    task.line = line_no;
    problem.tasks.push_back(std::move(task));
  }

  void check_pair_args(const ProblemFile::Task& task) const {
    if (task.args.size() != 2) {
      fail(ErrorKind::Parse, "line " + std::to_string(task.line) + ": task " +
                                 task.kind + " needs exactly two names");
    }
    for (const std::string& name : task.args) {
      const bool known = problem.kind == ProblemFile::ModelKind::Polytope
                             ? problem.polytopes.count(name) > 0
                             : problem.classes.count(name) > 0;
      if (!known) {
        fail(ErrorKind::Parse, "line " + std::to_string(task.line) + ": task " +
                                   task.kind + " references undeclared name '" +
                                   name + "'");
      }
    }
  }

  void finish() {
    if (!block_name.empty()) {
      fail(ErrorKind::Parse,
           "polytope block '" + block_name + "' is never closed");
    }
    if (!model_declared) fail(ErrorKind::Parse, "missing model declaration");
    switch (problem.kind) {
      case ProblemFile::ModelKind::Polytope:
        if (!dim_set) fail(ErrorKind::Parse, "polytope model: missing dim");
        break;
      case ProblemFile::ModelKind::MultiProj:
        if (problem.factor_dims.empty()) {
          fail(ErrorKind::Parse, "multiproj model: missing factors");
        }
        break;
      case ProblemFile::ModelKind::Table:
        if (!n_set || !basis_set) {
          fail(ErrorKind::Parse, "table model: missing n or basis");
        }
        break;
    }
    symmetrize_entries();
    for (const auto& task : problem.tasks) validate_task(task);
  }

  void symmetrize_entries() {
    const Rat tol(kDefaultTableTolerance);
    for (auto& [powers, values] : entry_values) {
      Rat sum(0);
      for (const Rat& v : values) sum += v;
      Rat mean = sum / Rat(static_cast<long>(values.size()));
      mean.canonicalize();
      for (const Rat& v : values) {
        Rat deviation = abs(v - mean);
        Rat bound = abs(mean);
        if (bound < 1) bound = 1;
        const bool close =
            problem.table_float ? deviation <= tol * bound : deviation == 0;
        if (!close) {
          fail(ErrorKind::Parse,
               "line " + std::to_string(entry_first_line.at(powers)) +
                   ": conflicting entries for one monomial (the form must be "
                   "symmetric)");
        }
      }
      problem.table_entries.emplace(powers, std::move(mean));
    }
  }

  void validate_task(const ProblemFile::Task& task) const {
    if (task.kind == "sequence" || task.kind == "inequalities" ||
        task.kind == "equivalence") {
      check_pair_args(task);
    } else if (task.kind == "signature") {
      if (problem.kind == ProblemFile::ModelKind::Polytope) {
        fail(ErrorKind::Parse,
             "line " + std::to_string(task.line) +
                 ": signature task needs a multiproj or table model");
      }
      const uint32_t n = model_degree();
      if (n < 2 || task.args.size() != n - 2) {
        fail(ErrorKind::Parse,
             "line " + std::to_string(task.line) + ": signature task needs " +
                 std::to_string(n >= 2 ? n - 2 : 0) + " reference classes");
      }
      for (const std::string& name : task.args) {
        if (!problem.classes.count(name)) {
          fail(ErrorKind::Parse, "line " + std::to_string(task.line) +
                                     ": undeclared class '" + name + "'");
        }
      }
    } else if (task.kind == "scan") {
      if (problem.kind == ProblemFile::ModelKind::Table) {
        fail(ErrorKind::Parse, "line " + std::to_string(task.line) +
                                   ": scan task needs a polytope or multiproj "
                                   "model (tables cannot be sampled)");
      }
      if (task.args.empty() || task.args.size() > 2) {
        fail(ErrorKind::Parse, "line " + std::to_string(task.line) +
                                   ": usage: task scan <samples> [seed]");
      }
      uint32_t count = 0;
      if (!parse_u32(task.args[0], count) || count == 0) {
        fail(ErrorKind::Parse, "line " + std::to_string(task.line) +
                                   ": scan sample count must be a positive "
                                   "integer");
      }
      uint64_t seed = 0;
      if (task.args.size() == 2 && !parse_u64(task.args[1], seed)) {
        fail(ErrorKind::Parse,
             "line " + std::to_string(task.line) + ": invalid scan seed");
      }
    } else {
      fail(ErrorKind::Parse, "line " + std::to_string(task.line) +
                                 ": unknown task kind '" + task.kind + "'");
    }
  }
};

std::string describe_model(const ProblemFile& problem) {
  switch (problem.kind) {
    case ProblemFile::ModelKind::Polytope:
      return "polytope dim " + std::to_string(problem.dim);
    case ProblemFile::ModelKind::MultiProj:
      return MultiProjModel(problem.factor_dims).describe();
    case ProblemFile::ModelKind::Table:
      return "table n=" + std::to_string(problem.table_n) +
             " h=" + std::to_string(problem.table_h);
  }
  return "";
}

std::string join_args(const std::vector<std::string>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += " ";
    out += args[i];
  }
  return out;
}

// ---- JSON serialization -------------------------------------------------

Json rat_json(const Rat& value) { return Json(format_rational(value)); }

Rat rat_from(const Json& j) { return parse_rational(j.get<std::string>()); }

Json rats_json(const std::vector<Rat>& values) {
  Json out = Json::array();
  for (const Rat& v : values) out.push_back(format_rational(v));
  return out;
}

std::vector<Rat> rats_from(const Json& j) {
  std::vector<Rat> out;
  for (const auto& item : j) out.push_back(parse_rational(item.get<std::string>()));
  return out;
}

Json inequalities_json(const InequalityReport& r) {
  Json out;
  out["n"] = r.n;
  out["log_concavity_defects"] = rats_json(r.log_concavity_defects);
  out["power_chain_defects"] = rats_json(r.power_chain_defects);
  out["endpoint_defect"] = rat_json(r.endpoint_defect);
  out["ratio_chain"] = rats_json(r.ratio_chain);
  out["log_concavity_equalities"] = r.log_concavity_equalities;
  out["power_chain_equalities"] = r.power_chain_equalities;
  out["endpoint_equality"] = r.endpoint_equality;
  return out;
}

InequalityReport inequalities_from(const Json& j) {
  InequalityReport r;
  r.n = j.at("n").get<uint32_t>();
  r.log_concavity_defects = rats_from(j.at("log_concavity_defects"));
  r.power_chain_defects = rats_from(j.at("power_chain_defects"));
  r.endpoint_defect = rat_from(j.at("endpoint_defect"));
  r.ratio_chain = rats_from(j.at("ratio_chain"));
  r.log_concavity_equalities = j.at("log_concavity_equalities").get<bool>();
  r.power_chain_equalities = j.at("power_chain_equalities").get<bool>();
  r.endpoint_equality = j.at("endpoint_equality").get<bool>();
  return r;
}

Json equivalence_json(const EquivalenceReport& r) {
  Json out;
  out["model"] = r.model;
  out["n"] = r.n;
  out["approximate"] = r.approximate;
  out["s"] = rats_json(r.sequence.s);
  out["inequalities"] = inequalities_json(r.inequalities);
  out["vol_sum"] = rat_json(r.bm.vol_sum);
  out["identity_defect"] = rat_json(r.bm.identity_defect);
  Json holds;
  for (std::size_t i = 0; i < r.holds.size(); ++i) {
    holds[kEquivalenceLabels[i]] = r.holds[i];
  }
  out["holds"] = std::move(holds);
  out["scale"] = r.scale ? rat_json(*r.scale) : Json();
  out["power_alpha"] = rats_json(r.power_alpha);
  out["power_beta"] = rats_json(r.power_beta);
  out["consistent"] = r.consistent;
  return out;
}

EquivalenceReport equivalence_from(const Json& j) {
  EquivalenceReport r;
  r.model = j.at("model").get<std::string>();
  r.n = j.at("n").get<uint32_t>();
  r.approximate = j.at("approximate").get<bool>();
  r.sequence.s = rats_from(j.at("s"));
  r.inequalities = inequalities_from(j.at("inequalities"));
  r.bm.vol_sum = rat_from(j.at("vol_sum"));
  r.bm.identity_defect = rat_from(j.at("identity_defect"));
  const Json& holds = j.at("holds");
  for (std::size_t i = 0; i < r.holds.size(); ++i) {
    r.holds[i] = holds.at(kEquivalenceLabels[i]).get<bool>();
  }
  r.bm.equality = r.holds[3];
  if (!j.at("scale").is_null()) r.scale = rat_from(j.at("scale"));
  r.power_alpha = rats_from(j.at("power_alpha"));
  r.power_beta = rats_from(j.at("power_beta"));
  r.consistent = j.at("consistent").get<bool>();
  return r;
}

Json task_json(const TaskResult& task) {
  Json out;
  out["kind"] = task.kind;
  out["subject"] = task.subject;
  if (task.sequence) out["s"] = rats_json(task.sequence->s);
  if (task.inequalities) {
    out["inequalities"] = inequalities_json(*task.inequalities);
  }
  if (task.equivalence) out["equivalence"] = equivalence_json(*task.equivalence);
  if (task.signature) {
    Json inertia;
    inertia["positives"] = task.signature->positives;
    inertia["negatives"] = task.signature->negatives;
    inertia["zeros"] = task.signature->zeros;
    out["inertia"] = std::move(inertia);
  }
  if (task.scan) {
    Json scan;
    scan["samples"] = task.scan->samples;
    scan["counterexamples"] = task.scan->counterexamples;
    scan["details"] = task.scan->details;
    out["scan"] = std::move(scan);
  }
  return out;
}

TaskResult task_from(const Json& j) {
  TaskResult task;
  task.kind = j.at("kind").get<std::string>();
  task.subject = j.at("subject").get<std::string>();
  if (j.contains("s")) {
    KTSequence seq;
    seq.s = rats_from(j.at("s"));
    task.sequence = std::move(seq);
  }
  if (j.contains("inequalities")) {
    task.inequalities = inequalities_from(j.at("inequalities"));
  }
  if (j.contains("equivalence")) {
    task.equivalence = equivalence_from(j.at("equivalence"));
  }
  if (j.contains("inertia")) {
    Inertia inertia;
    inertia.positives = j.at("inertia").at("positives").get<uint32_t>();
    inertia.negatives = j.at("inertia").at("negatives").get<uint32_t>();
    inertia.zeros = j.at("inertia").at("zeros").get<uint32_t>();
    task.signature = inertia;
  }
  if (j.contains("scan")) {
    InjectivityScan scan;
    scan.samples = j.at("scan").at("samples").get<uint32_t>();
    scan.counterexamples = j.at("scan").at("counterexamples").get<uint32_t>();
    scan.details = j.at("scan").at("details").get<std::vector<std::string>>();
    task.scan = std::move(scan);
  }
  return task;
}

const char* hold_word(bool hold) { return hold ? "hold" : "fail"; }

void render_inequalities_text(std::ostringstream& out,
                              const InequalityReport& r) {
  out << "  log_concavity defects: "
      << format_rational_vector(r.log_concavity_defects) << "\n";
  out << "  power_chain defects: "
      << format_rational_vector(r.power_chain_defects) << "\n";
  out << "  endpoint defect: " << format_rational(r.endpoint_defect) << "\n";
  out << "  ratio chain: " << format_rational_vector(r.ratio_chain) << "\n";
  out << "  log_concavity: " << (r.log_concavity_equalities ? "equality" : "strict")
      << "\n";
  out << "  power_chain: " << (r.power_chain_equalities ? "equality" : "strict")
      << "\n";
  out << "  endpoint: " << (r.endpoint_equality ? "equality" : "strict") << "\n";
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  Parser parser;
  parser.problem.source = text;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++parser.line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    try {
      parser.handle(tokens);
    } catch (const Error& e) {
      const std::string message = e.what();
      if (message.rfind("line ", 0) == 0) throw;
      fail(e.kind(), "line " + std::to_string(parser.line_no) + ": " + message);
    }
  }
  parser.finish();
  return std::move(parser.problem);
}

Report run_problem(const ProblemFile& problem, uint64_t seed,
                   std::optional<double> tolerance) {
  const bool approximate =
      problem.kind == ProblemFile::ModelKind::Table && problem.table_float;
  if (tolerance && !approximate) {
    fail(ErrorKind::InvalidArgument,
         "tolerance applies only to float-valued table models");
  }
  const DecisionPolicy policy =
      approximate
          ? DecisionPolicy::with_tolerance(tolerance.value_or(kDefaultTableTolerance))
          : DecisionPolicy::exact();

  Report report;
  report.model = describe_model(problem);
  if (approximate) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "approximate tolerance=%g",
                  tolerance.value_or(kDefaultTableTolerance));
    report.mode = buffer;
  } else {
    report.mode = "exact";
  }
  report.input_digest = digest_hex(problem.source);
  report.seed = seed;
  report.version = kVersion;

  std::optional<MultiProjModel> mp;
  std::unique_ptr<IntersectionOracle> oracle;
  if (problem.kind == ProblemFile::ModelKind::MultiProj) {
    mp.emplace(problem.factor_dims);
    oracle = std::make_unique<MultiProjOracle>(*mp);
  } else if (problem.kind == ProblemFile::ModelKind::Table) {
    oracle = std::make_unique<TableOracle>(problem.table_n, problem.table_h,
                                           problem.table_entries,
                                           problem.table_float);
  }

  const auto ensure_nef_big = [&](const std::string& name,
                                  const ClassVector& v) {
    if (!mp) return;  // table classes carry no cone; positivity of s decides
    const ConeMembership cone = cone_membership(*mp, v);
    if (!cone.is_nef || !cone.is_big) {
      fail(ErrorKind::Precondition,
           "class '" + name +
               "' is not nef and big (coordinates must be strictly positive)");
    }
  };

  for (std::size_t index = 0; index < problem.tasks.size(); ++index) {
    const ProblemFile::Task& task = problem.tasks[index];
    TaskResult result;
    result.kind = task.kind;
    result.subject = join_args(task.args);
    try {
      if (task.kind == "sequence" || task.kind == "inequalities") {
        KTSequence seq;
        if (problem.kind == ProblemFile::ModelKind::Polytope) {
          seq = mixed_volume_sequence(problem.polytopes.at(task.args[0]),
                                      problem.polytopes.at(task.args[1]));
        } else {
          seq = kt_sequence(*oracle, problem.classes.at(task.args[0]),
                            problem.classes.at(task.args[1]));
        }
        result.sequence = seq;
        if (task.kind == "inequalities") {
          result.inequalities = check_inequalities(seq, policy);
        }
      } else if (task.kind == "equivalence") {
        if (problem.kind == ProblemFile::ModelKind::Polytope) {
          result.equivalence =
              equivalence_report(problem.polytopes.at(task.args[0]),
                                 problem.polytopes.at(task.args[1]));
        } else {
          const ClassVector& alpha = problem.classes.at(task.args[0]);
          const ClassVector& beta = problem.classes.at(task.args[1]);
          ensure_nef_big(task.args[0], alpha);
          ensure_nef_big(task.args[1], beta);
          result.equivalence = equivalence_report(*oracle, report.model, alpha,
                                                  beta, policy);
        }
      } else if (task.kind == "signature") {
        std::vector<ClassVector> kahler;
        for (const std::string& name : task.args) {
          kahler.push_back(problem.classes.at(name));
        }
        result.signature = gram_signature(*oracle, kahler);
      } else if (task.kind == "scan") {
        uint32_t count = 0;
        parse_u32(task.args[0], count);
        uint64_t scan_seed = seed;
        if (task.args.size() == 2) parse_u64(task.args[1], scan_seed);
        result.subject =
            "samples=" + std::to_string(count) + " seed=" + std::to_string(scan_seed);
        if (problem.kind == ProblemFile::ModelKind::Polytope) {
          result.scan = power_map_injectivity_scan_polytopes(problem.dim, count,
                                                             scan_seed);
        } else {
          result.scan = power_map_injectivity_scan(*mp, count, scan_seed);
        }
      }
    } catch (const Error& e) {
      fail(e.kind(), "task " + std::to_string(index + 1) + " (" + task.kind +
                         " " + result.subject + "): " + e.what());
    }
    report.tasks.push_back(std::move(result));
  }
  return report;
}

std::string render_report_text(const Report& report) {
  std::ostringstream out;
  out << "kt report\n";
  out << "model: " << report.model << "\n";
  out << "mode: " << report.mode << "\n";
  out << "input_digest: " << report.input_digest << "\n";
  out << "seed: " << report.seed << "\n";
  out << "version: " << report.version << "\n";
  out << "tasks: " << report.tasks.size() << "\n";
  for (std::size_t i = 0; i < report.tasks.size(); ++i) {
    const TaskResult& task = report.tasks[i];
    out << "\ntask " << (i + 1) << ": " << task.kind;
    if (!task.subject.empty()) out << " " << task.subject;
    out << "\n";
    if (task.sequence) {
      out << "  s: " << format_rational_vector(task.sequence->s) << "\n";
    }
    if (task.inequalities) render_inequalities_text(out, *task.inequalities);
    if (task.equivalence) {
      const EquivalenceReport& eq = *task.equivalence;
      out << "  s: " << format_rational_vector(eq.sequence.s) << "\n";
      out << "  vol(sum): " << format_rational(eq.bm.vol_sum) << "\n";
      out << "  expansion defect: " << format_rational(eq.bm.identity_defect)
          << "\n";
      if (eq.approximate) out << "  decisions: approximate\n";
      for (std::size_t k = 0; k < eq.holds.size(); ++k) {
        out << "  " << kEquivalenceLabels[k] << ": " << hold_word(eq.holds[k]);
        if (k == 4 && eq.scale) {
          out << " (scale " << format_rational(*eq.scale) << ")";
        }
        out << "\n";
      }
      if (!eq.power_alpha.empty()) {
        out << "  power functional left: "
            << format_rational_vector(eq.power_alpha) << "\n";
        out << "  power functional right: "
            << format_rational_vector(eq.power_beta) << "\n";
      }
      out << "  consistent: " << (eq.consistent ? "yes" : "NO") << "\n";
    }
    if (task.signature) {
      out << "  inertia: positives=" << task.signature->positives
          << " negatives=" << task.signature->negatives
          << " zeros=" << task.signature->zeros << "\n";
    }
    if (task.scan) {
      out << "  samples: " << task.scan->samples << "\n";
      out << "  counterexamples: " << task.scan->counterexamples << "\n";
      for (const std::string& detail : task.scan->details) {
        out << "  counterexample: " << detail << "\n";
      }
    }
  }
  return out.str();
}

std::string render_report_json(const Report& report) {
  Json out;
  out["model"] = report.model;
  out["mode"] = report.mode;
  out["input_digest"] = report.input_digest;
  out["seed"] = report.seed;
  out["version"] = report.version;
  Json tasks = Json::array();
  for (const TaskResult& task : report.tasks) tasks.push_back(task_json(task));
  out["tasks"] = std::move(tasks);
  return out.dump(2) + "\n";
}

Report parse_report_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    Report report;
    report.model = j.at("model").get<std::string>();
    report.mode = j.at("mode").get<std::string>();
    report.input_digest = j.at("input_digest").get<std::string>();
    report.seed = j.at("seed").get<uint64_t>();
    report.version = j.at("version").get<std::string>();
    for (const auto& t : j.at("tasks")) report.tasks.push_back(task_from(t));
    return report;
  } catch (const Json::exception& e) {
    fail(ErrorKind::Parse, std::string("report JSON: ") + e.what());
  }
}

int report_exit_code(const Report& report) {
  for (const TaskResult& task : report.tasks) {
    if (task.equivalence) {
      if (!task.equivalence->consistent) return 2;
      if (task.equivalence->bm.identity_defect != 0) return 2;
    }
    if (task.scan && task.scan->counterexamples > 0) return 2;
  }
  return 0;
}

}  // namespace kt
