// Acceptance runner: one line per criterion, [PASS]/[FAIL] plus timing.
// Criteria 1-7 exercise the library directly; criterion 8 drives the
// installed CLI binary (path passed as --cli-path=...).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/hodge.hpp"
#include "core/intersect.hpp"
#include "core/polytope.hpp"
#include "core/rng.hpp"

using namespace kt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

bool report_line(int index, const char* title, const Outcome& outcome,
                 double seconds, double budget) {
  const bool in_budget = seconds < budget;
  const bool ok = outcome.passed && in_budget;
  std::printf("[%s] criterion %d: %s (%.2fs, budget %.0fs)\n",
              ok ? "PASS" : "FAIL", index, title, seconds, budget);
  if (!outcome.passed) std::printf("       %s\n", outcome.detail.c_str());
  if (!in_budget) std::printf("       over time budget\n");
  std::fflush(stdout);
  return ok;
}

struct PolytopePair {
  Polytope p;
  Polytope q;
  KTSequence seq;
};

struct RingPair {
  ClassVector alpha;
  ClassVector beta;
  KTSequence seq;
};

struct Corpus {
  std::vector<uint32_t> poly_dims{2, 3, 4};
  std::vector<std::vector<PolytopePair>> poly;  // indexed like poly_dims
  std::vector<MultiProjModel> models{MultiProjModel({1, 1}),
                                     MultiProjModel({1, 1, 1}),
                                     MultiProjModel({2, 1})};
  std::vector<std::vector<RingPair>> ring;  // indexed like models
};

Corpus build_corpus() {
  Corpus corpus;
  Rng rng(0xC0FFEE);
  for (const uint32_t dim : corpus.poly_dims) {
    std::vector<PolytopePair> pairs;
    for (int i = 0; i < 50; ++i) {
      Polytope p = sample_lattice_polytope(rng, dim);
      Polytope q = sample_lattice_polytope(rng, dim);
      // Every fifth pair gets non-integer rational vertices.
      if (i % 5 == 4) p = scale_polytope(p, Rat(1, 2));
      if (i % 5 == 3) q = scale_polytope(q, Rat(1, 3));
      KTSequence seq = mixed_volume_sequence(p, q);
      pairs.push_back({std::move(p), std::move(q), std::move(seq)});
    }
    corpus.poly.push_back(std::move(pairs));
  }
  for (const MultiProjModel& model : corpus.models) {
    const MultiProjOracle oracle = make_multiproj_oracle(model);
    std::vector<RingPair> pairs;
    for (int i = 0; i < 200; ++i) {
      ClassVector alpha = sample_big_class(rng, model.basis_dim());
      ClassVector beta = sample_big_class(rng, model.basis_dim());
      KTSequence seq = kt_sequence(oracle, alpha, beta);
      pairs.push_back({std::move(alpha), std::move(beta), std::move(seq)});
    }
    corpus.ring.push_back(std::move(pairs));
  }
  return corpus;
}

Outcome criterion_oracle_equivalence(const Corpus& corpus) {
  Outcome outcome;
  for (std::size_t d = 0; d < corpus.poly_dims.size(); ++d) {
    const uint32_t dim = corpus.poly_dims[d];
    for (const PolytopePair& pair : corpus.poly[d]) {
      for (uint32_t k = 0; k <= dim; ++k) {
        std::vector<Polytope> bodies;
        for (uint32_t i = 0; i < k; ++i) bodies.push_back(pair.p);
        for (uint32_t i = k; i < dim; ++i) bodies.push_back(pair.q);
        if (mixed_volume_polarization(bodies) != pair.seq.s[k]) {
          outcome.fail("dim " + std::to_string(dim) + " k=" +
                       std::to_string(k) + ": interpolation " +
                       format_rational(pair.seq.s[k]) + " != polarization");
        }
      }
    }
  }
  return outcome;
}

Outcome criterion_log_concavity(const Corpus& corpus) {
  Outcome outcome;
  const auto check_seq = [&outcome](const KTSequence& seq, const char* label) {
    const InequalityReport r = check_inequalities(seq);
    for (const Rat& defect : r.log_concavity_defects) {
      if (defect < 0) {
        outcome.fail(std::string(label) + " violation: s=" +
                     format_rational_vector(seq.s));
      }
    }
  };
  for (const auto& dim_pairs : corpus.poly) {
    for (const PolytopePair& pair : dim_pairs) check_seq(pair.seq, "polytope");
  }
  for (const auto& model_pairs : corpus.ring) {
    for (const RingPair& pair : model_pairs) check_seq(pair.seq, "multiproj");
  }
  return outcome;
}

Outcome criterion_chain_identities(const Corpus& corpus) {
  Outcome outcome;
  const auto check_seq = [&outcome](const KTSequence& seq) {
    const InequalityReport r = check_inequalities(seq);
    const uint32_t n = seq.n();
    // s_{n-1}/s_0 >= (s_n/s_{n-1})^{n-1}, cleared of denominators, is the
    // endpoint defect; the power chain covers every k.
    if (r.endpoint_defect < 0) {
      outcome.fail("endpoint violation: s=" + format_rational_vector(seq.s));
    }
    for (uint32_t k = 0; k <= n; ++k) {
      if (r.power_chain_defects[k] < 0) {
        outcome.fail("power chain violation at k=" + std::to_string(k) +
                     ": s=" + format_rational_vector(seq.s));
      }
    }
  };
  for (const auto& dim_pairs : corpus.poly) {
    for (const PolytopePair& pair : dim_pairs) {
      check_seq(pair.seq);
      const BMResult bm = check_bm_superadditivity(pair.p, pair.q);
      if (bm.identity_defect != 0) {
        outcome.fail("binomial identity defect " +
                     format_rational(bm.identity_defect));
      }
    }
  }
  for (std::size_t m = 0; m < corpus.models.size(); ++m) {
    const MultiProjOracle oracle = make_multiproj_oracle(corpus.models[m]);
    for (const RingPair& pair : corpus.ring[m]) {
      check_seq(pair.seq);
      const BMResult bm =
          check_bm_superadditivity(oracle, pair.alpha, pair.beta);
      if (bm.identity_defect != 0) {
        outcome.fail("binomial identity defect " +
                     format_rational(bm.identity_defect));
      }
    }
  }
  return outcome;
}

Outcome criterion_equivalence_consistency(const Corpus& corpus) {
  Outcome outcome;
  for (std::size_t d = 0; d < corpus.poly_dims.size(); ++d) {
    for (const PolytopePair& pair : corpus.poly[d]) {
      if (!equivalence_report(pair.p, pair.q).consistent) {
        outcome.fail("inconsistent polytope report, dim " +
                     std::to_string(corpus.poly_dims[d]));
      }
    }
  }
  for (std::size_t m = 0; m < corpus.models.size(); ++m) {
    const MultiProjOracle oracle = make_multiproj_oracle(corpus.models[m]);
    for (const RingPair& pair : corpus.ring[m]) {
      if (!equivalence_report(oracle, corpus.models[m].describe(), pair.alpha,
                              pair.beta)
               .consistent) {
        outcome.fail("inconsistent ring report on " +
                     corpus.models[m].describe());
      }
    }
  }

  // Constructed proportional families, and non-proportional perturbations
  // of the same instances.
  const Rat scales[3] = {Rat(1, 2), Rat(1), Rat(3)};
  Rng rng(0xFACADE);
  const auto all_of = [](const EquivalenceReport& r, bool want) {
    if (!r.consistent) return false;
    for (const bool h : r.holds)
      if (h != want) return false;
    return true;
  };
  for (int i = 0; i < 10; ++i) {
    const MultiProjModel& model = corpus.models[i % corpus.models.size()];
    const MultiProjOracle oracle = make_multiproj_oracle(model);
    const ClassVector alpha = sample_big_class(rng, model.basis_dim());
    const ClassVector beta = scale_class(alpha, scales[i % 3]);
    if (!all_of(equivalence_report(oracle, model.describe(), alpha, beta),
                true)) {
      outcome.fail("proportional ring pair not all-hold on " +
                   model.describe());
    }
    ClassVector perturbed = beta;
    perturbed.coords[0] += 1;
    if (!all_of(
            equivalence_report(oracle, model.describe(), alpha, perturbed),
            false)) {
      outcome.fail("perturbed ring pair not all-fail on " + model.describe());
    }
  }
  for (int i = 0; i < 10; ++i) {
    const uint32_t dim = 2 + (i % 2);
    const Polytope p = sample_lattice_polytope(rng, dim);
    std::vector<Rat> shift(dim);
    for (auto& x : shift) x = Rat(rng.uniform_int(0, 5));
    const Polytope q =
        translate_polytope(scale_polytope(p, scales[i % 3]), shift);
    if (!all_of(equivalence_report(p, q), true)) {
      outcome.fail("homothetic polytope pair not all-hold, dim " +
                   std::to_string(dim));
    }
    // Adding a segment breaks any homothety with p.
    std::vector<std::vector<Rat>> seg(2, std::vector<Rat>(dim, Rat(0)));
    seg[1][0] = 1;
    const Polytope perturbed =
        minkowski_sum(q, Polytope::from_points(dim, seg));
    if (!all_of(equivalence_report(p, perturbed), false)) {
      outcome.fail("perturbed polytope pair not all-fail, dim " +
                   std::to_string(dim));
    }
  }
  return outcome;
}

Outcome criterion_injectivity() {
  Outcome outcome;
  const auto expect_clean = [&outcome](const InjectivityScan& scan,
                                       const std::string& label) {
    if (scan.counterexamples != 0) {
      outcome.fail(label + ": " +
                   (scan.details.empty() ? "counterexample" : scan.details[0]));
    }
  };
  uint64_t seed = 0xABCD;
  for (const auto& dims :
       {std::vector<uint32_t>{1, 1}, std::vector<uint32_t>{1, 1, 1},
        std::vector<uint32_t>{2, 1}}) {
    const MultiProjModel model(dims);
    expect_clean(power_map_injectivity_scan(model, 100, seed++),
                 model.describe());
  }
  expect_clean(power_map_injectivity_scan_polytopes(2, 100, seed++),
               "polytope dim 2");
  expect_clean(power_map_injectivity_scan_polytopes(3, 100, seed++),
               "polytope dim 3");
  return outcome;
}

Outcome criterion_hodge_identities() {
  Outcome outcome;
  Rng rng(0xDECADE);
  for (uint32_t dim = 2; dim <= 6; ++dim) {
    for (int i = 0; i < 1000; ++i) {
      const HermitianForm a = random_posdef(rng, dim);
      const double det = determinant(a);
      const HermitianForm adj = adjugate(a);

      const ComplexMat product = multiply(adj, a);
      double worst = 0;
      for (uint32_t r = 0; r < dim; ++r) {
        for (uint32_t c = 0; c < dim; ++c) {
          const Complex want = (r == c) ? Complex(det, 0) : Complex(0, 0);
          worst = std::max(worst, std::abs(product[r][c] - want));
        }
      }
      if (worst > kIdentityRelTol * std::max(1.0, std::abs(det))) {
        outcome.fail("adj(A) A != det(A) I at dim " + std::to_string(dim));
      }

      const double det_adj = determinant(adj);
      const double det_pow = std::pow(det, static_cast<double>(dim - 1));
      if (std::abs(det_adj - det_pow) >
          kIdentityRelTol * std::max(1.0, std::abs(det_pow))) {
        outcome.fail("det(adj A) != det(A)^(n-1) at dim " +
                     std::to_string(dim));
      }

      const HermitianForm back = recover_from_adjugate(adj);
      double round_trip = 0;
      for (uint32_t r = 0; r < dim; ++r) {
        for (uint32_t c = 0; c < dim; ++c) {
          round_trip = std::max(round_trip,
                                std::abs(back.entries[r][c] - a.entries[r][c]));
        }
      }
      if (round_trip > kIdentityRelTol * std::max(1.0, frobenius_norm(a))) {
        outcome.fail("adjugate round trip drift at dim " +
                     std::to_string(dim));
      }

      // AM-GM: unperturbed, negligible, and sizable admissible Theta.
      HermitianForm theta = HermitianForm::zero(dim);
      if (i % 3 == 1) {
        theta = scale_form(random_hermitian(rng, dim), 1e-14);
      } else if (i % 3 == 2) {
        const HermitianForm h = random_hermitian(rng, dim);
        const auto h_eig = eigenvalues(h);
        const double radius =
            std::max(std::abs(h_eig.front()), std::abs(h_eig.back()));
        if (radius > 0) {
          theta = scale_form(h, 0.9 * eigenvalues(a).front() / radius);
        }
      }
      try {
        const AmGmResult r = amgm_bound(a, theta);
        if (r.lhs > r.rhs + kInequalitySlack) {
          outcome.fail("amgm bound out of order at dim " +
                       std::to_string(dim));
        }
        if (r.equality &&
            r.theta_norm > kForcingFactor * std::max(1.0, r.m_norm)) {
          outcome.fail("amgm equality band with a sizable perturbation");
        }
      } catch (const Error& e) {
        outcome.fail(std::string("amgm bound violated: ") + e.what());
      }
    }
  }
  return outcome;
}

Outcome criterion_signature() {
  Outcome outcome;
  Rng rng(0xBEEF);
  for (const auto& dims :
       {std::vector<uint32_t>{2}, std::vector<uint32_t>{1, 1},
        std::vector<uint32_t>{1, 1, 1}, std::vector<uint32_t>{2, 1},
        std::vector<uint32_t>{1, 1, 1, 1}}) {
    const MultiProjModel model(dims);
    const MultiProjOracle oracle = make_multiproj_oracle(model);
    const uint32_t n = model.n();
    const uint32_t h = model.basis_dim();
    for (int i = 0; i < 10; ++i) {
      std::vector<ClassVector> kahler;
      for (uint32_t k = 2; k < n; ++k) kahler.push_back(sample_big_class(rng, h));
      const Inertia inertia = gram_signature(oracle, kahler);
      if (inertia.positives != 1 || inertia.zeros != 0) {
        outcome.fail(model.describe() + ": inertia (" +
                     std::to_string(inertia.positives) + "," +
                     std::to_string(inertia.negatives) + "," +
                     std::to_string(inertia.zeros) + ")");
      }
      const ClassVector alpha = sample_big_class(rng, h);
      const ClassVector beta = sample_big_class(rng, h);
      if (discriminant_inequality(oracle, alpha, beta, kahler) < 0) {
        outcome.fail(model.describe() + ": negative discriminant defect");
      }
    }
    // With reference classes drawn from the pair itself the discriminant
    // defect must coincide with the log-concavity defect, exactly.
    const ClassVector alpha = sample_big_class(rng, h);
    const ClassVector beta = sample_big_class(rng, h);
    const InequalityReport chain =
        check_inequalities(kt_sequence(oracle, alpha, beta));
    for (uint32_t k = 1; k < n; ++k) {
      std::vector<ClassVector> kahler;
      for (uint32_t i = 0; i + 1 < k; ++i) kahler.push_back(alpha);
      for (uint32_t i = k + 1; i < n; ++i) kahler.push_back(beta);
      if (discriminant_inequality(oracle, alpha, beta, kahler) !=
          chain.log_concavity_defects[k - 1]) {
        outcome.fail(model.describe() + ": discriminant defect at k=" +
                     std::to_string(k) + " disagrees with the chain");
      }
    }
  }
  return outcome;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

Outcome criterion_cli(const std::string& cli) {
  Outcome outcome;
  if (cli.empty()) {
    outcome.fail("missing --cli-path");
    return outcome;
  }

  const CommandResult first = run_command(cli + " selftest --seed 42");
  const CommandResult second = run_command(cli + " selftest --seed 42");
  if (first.exit_code != 0) outcome.fail("selftest failed:\n" + first.output);
  if (first.output != second.output) {
    outcome.fail("selftest output is not byte-identical across runs");
  }

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const auto write = [&dir](const char* name, const char* text) {
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path.string();
  };

  const std::string ring = write("kt_acceptance_ring.kt",
                                 "model multiproj\n"
                                 "factors 1 1\n"
                                 "class alpha 1 1\n"
                                 "class beta 2 2\n"
                                 "task equivalence alpha beta\n");
  const CommandResult r1 = run_command(cli + " run " + ring);
  if (r1.exit_code != 0 ||
      r1.output.find("consistent: yes") == std::string::npos ||
      r1.output.find("fail") != std::string::npos) {
    outcome.fail("proportional ring example did not report all six holding:\n" +
                 r1.output);
  }

  const std::string poly = write("kt_acceptance_poly.kt",
                                 "model polytope\n"
                                 "dim 2\n"
                                 "polytope square\n"
                                 "vertex 0 0\nvertex 1 0\nvertex 0 1\nvertex 1 1\n"
                                 "end\n"
                                 "polytope triangle\n"
                                 "vertex 0 0\nvertex 1 0\nvertex 0 1\n"
                                 "end\n"
                                 "task sequence square triangle\n");
  const CommandResult r2 = run_command(cli + " run " + poly);
  if (r2.exit_code != 0 || r2.output.find("s: 1/2 1 1") == std::string::npos) {
    outcome.fail("square/triangle sequence example mismatch:\n" + r2.output);
  }

  const std::string bad = write("kt_acceptance_bad.kt",
                                "model polytope\n"
                                "dim 2\n"
                                "polytope p\n"
                                "vertex 1/0 0\n"
                                "end\n"
                                "task sequence p p\n");
  const CommandResult r3 = run_command(cli + " run " + bad);
  if (r3.exit_code != 1 ||
      r3.output.find("invalid rational") == std::string::npos) {
    outcome.fail("malformed vertex example: expected exit 1 with a parse "
                 "diagnostic, got exit " +
                 std::to_string(r3.exit_code) + ":\n" + r3.output);
  }
  return outcome;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--cli-path=", 0) == 0) cli = arg.substr(11);
  }

  const Clock::time_point corpus_start = Clock::now();
  const Corpus corpus = build_corpus();
  const double corpus_seconds =
      std::chrono::duration<double>(Clock::now() - corpus_start).count();
  std::printf("corpus: %zu polytope pairs, %zu ring pairs (%.2fs)\n",
              corpus.poly.size() * corpus.poly[0].size(),
              corpus.ring.size() * corpus.ring[0].size(), corpus_seconds);

  bool all = true;
  const auto run = [&all](int index, const char* title, double budget,
                          auto&& fn) {
    const Clock::time_point start = Clock::now();
    Outcome outcome;
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome.fail(std::string("unexpected exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    all = report_line(index, title, outcome, seconds, budget) && all;
  };

  run(1, "interpolation and polarization mixed volumes agree exactly", 30,
      [&corpus] { return criterion_oracle_equivalence(corpus); });
  run(2, "log-concavity holds across the corpus", 10,
      [&corpus] { return criterion_log_concavity(corpus); });
  run(3, "endpoint/power chains and the binomial expansion are exact", 10,
      [&corpus] { return criterion_chain_identities(corpus); });
  run(4, "six-way equivalence statuses agree everywhere", 20,
      [&corpus] { return criterion_equivalence_consistency(corpus); });
  run(5, "power map injectivity scans are clean", 10,
      [] { return criterion_injectivity(); });
  run(6, "adjugate identities and the AM-GM bound hold at scale", 30,
      [] { return criterion_hodge_identities(); });
  run(7, "Gram signatures and discriminant defects", 20,
      [] { return criterion_signature(); });
  run(8, "CLI determinism and the worked examples", 60,
      [&cli] { return criterion_cli(cli); });

  std::printf("%s\n", all ? "acceptance: PASS" : "acceptance: FAIL");
  return all ? 0 : 1;
}
