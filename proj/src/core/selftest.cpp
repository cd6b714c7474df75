#include "core/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/hodge.hpp"
#include "core/intersect.hpp"
#include "core/polytope.hpp"
#include "core/problem.hpp"
#include "core/rng.hpp"

namespace kt {

namespace {

struct SuiteRun {
  SuiteResult result;

  void check(bool ok, const std::string& instance) {
    ++result.checks;
    if (!ok && result.passed) {
      result.passed = false;
      result.counterexample = instance;
    }
  }
};

std::string describe_pair(const Polytope& p, const Polytope& q) {
  std::ostringstream out;
  const auto dump = [&](const char* name, const Polytope& body) {
    out << name << "=";
    for (std::size_t i = 0; i < body.vertices().size(); ++i) {
      out << (i ? " " : "{") << "("
          << format_rational_vector(body.vertices()[i], ",") << ")";
    }
    out << "}";
  };
  dump("P", p);
  out << " ";
  dump("Q", q);
  return out.str();
}

std::vector<std::vector<uint32_t>> ring_model_shapes() {
  return {{1, 1}, {2}, {1, 1, 1}, {2, 1}, {1, 1, 1, 1}};
}

SuiteResult suite_oracle_agreement(uint64_t seed) {
  SuiteRun run;
  run.result.name = "oracle_agreement";
  Rng rng(seed);
  for (uint32_t dim = 2; dim <= 3; ++dim) {
    for (int pair = 0; pair < 4; ++pair) {
      const Polytope p = sample_lattice_polytope(rng, dim);
      const Polytope q = sample_lattice_polytope(rng, dim);
      const KTSequence seq = mixed_volume_sequence(p, q);
      for (uint32_t k = 0; k <= dim; ++k) {
        std::vector<Polytope> bodies;
        for (uint32_t i = 0; i < k; ++i) bodies.push_back(p);
        for (uint32_t i = k; i < dim; ++i) bodies.push_back(q);
        const Rat direct = mixed_volume_polarization(bodies);
        run.check(direct == seq.s[k],
                  describe_pair(p, q) + " k=" + std::to_string(k) +
                      " interpolation=" + format_rational(seq.s[k]) +
                      " polarization=" + format_rational(direct));
      }
    }
  }
  return run.result;
}

SuiteResult suite_inequality_chain(uint64_t seed, bool inject) {
  SuiteRun run;
  run.result.name = "inequality_chain";
  Rng rng(seed);
  std::vector<std::pair<std::string, KTSequence>> corpus;

  for (uint32_t dim = 2; dim <= 3; ++dim) {
    for (int pair = 0; pair < 3; ++pair) {
      const Polytope p = sample_lattice_polytope(rng, dim);
      const Polytope q = sample_lattice_polytope(rng, dim);
      corpus.emplace_back(describe_pair(p, q), mixed_volume_sequence(p, q));
      const BMResult bm = check_bm_superadditivity(p, q);
      run.check(bm.identity_defect == 0,
                describe_pair(p, q) + " expansion defect " +
                    format_rational(bm.identity_defect));
    }
  }
  for (const auto& shape : ring_model_shapes()) {
    const MultiProjModel model(shape);
    const MultiProjOracle oracle = make_multiproj_oracle(model);
    for (int pair = 0; pair < 20; ++pair) {
      const ClassVector alpha = sample_big_class(rng, model.basis_dim());
      const ClassVector beta = sample_big_class(rng, model.basis_dim());
      corpus.emplace_back(model.describe(), kt_sequence(oracle, alpha, beta));
      const BMResult bm = check_bm_superadditivity(oracle, alpha, beta);
      run.check(bm.identity_defect == 0,
                model.describe() + " expansion defect " +
                    format_rational(bm.identity_defect));
    }
  }
  if (inject) {
    KTSequence poisoned;
    poisoned.s = {Rat(1), Rat(1), Rat(3)};
    corpus.emplace_back("injected", poisoned);
  }

  for (const auto& [label, seq] : corpus) {
    const InequalityReport report = check_inequalities(seq);
    const std::string prefix =
        label + " s: " + format_rational_vector(seq.s) + " ";
    for (std::size_t k = 0; k < report.log_concavity_defects.size(); ++k) {
      run.check(report.log_concavity_defects[k] >= 0,
                prefix + "log_concavity defect " +
                    format_rational(report.log_concavity_defects[k]) +
                    " at k=" + std::to_string(k + 1));
    }
    for (std::size_t k = 0; k < report.power_chain_defects.size(); ++k) {
      run.check(report.power_chain_defects[k] >= 0,
                prefix + "power_chain defect " +
                    format_rational(report.power_chain_defects[k]) +
                    " at k=" + std::to_string(k));
    }
    run.check(report.endpoint_defect >= 0,
              prefix + "endpoint defect " +
                  format_rational(report.endpoint_defect));
    for (std::size_t k = 0; k + 1 < report.ratio_chain.size(); ++k) {
      run.check(report.ratio_chain[k] >= report.ratio_chain[k + 1],
                prefix + "ratio chain increases at k=" + std::to_string(k));
    }
  }
  return run.result;
}

SuiteResult suite_equivalence_consistency(uint64_t seed) {
  SuiteRun run;
  run.result.name = "equivalence_consistency";
  Rng rng(seed);

  for (const auto& shape : ring_model_shapes()) {
    const MultiProjModel model(shape);
    const MultiProjOracle oracle = make_multiproj_oracle(model);
    const uint32_t h = model.basis_dim();
    for (int i = 0; i < 8; ++i) {
      const ClassVector alpha = sample_big_class(rng, h);
      const ClassVector beta = sample_big_class(rng, h);
      const EquivalenceReport report =
          equivalence_report(oracle, model.describe(), alpha, beta);
      run.check(report.consistent,
                model.describe() + " alpha=(" +
                    format_rational_vector(alpha.coords, ",") + ") beta=(" +
                    format_rational_vector(beta.coords, ",") +
                    ") statuses disagree");
    }
    for (int i = 0; i < 4; ++i) {
      const ClassVector alpha = sample_big_class(rng, h);
      Rat c(rng.uniform_int(1, 6), rng.uniform_int(1, 2));
      c.canonicalize();
      const ClassVector beta = scale_class(alpha, c);
      const EquivalenceReport report =
          equivalence_report(oracle, model.describe(), alpha, beta);
      bool all_hold = report.consistent;
      for (const bool hold : report.holds) all_hold = all_hold && hold;
      run.check(all_hold, model.describe() + " proportional pair alpha=(" +
                              format_rational_vector(alpha.coords, ",") +
                              ") scale=" + format_rational(c) +
                              " does not report all-hold");
      ClassVector perturbed = beta;
      perturbed.coords[0] += 1;
      if (proportionality_check(alpha, perturbed)) continue;  // h == 1
      const EquivalenceReport perturbed_report =
          equivalence_report(oracle, model.describe(), alpha, perturbed);
      bool any_hold = false;
      for (const bool hold : perturbed_report.holds) any_hold = any_hold || hold;
      run.check(perturbed_report.consistent && !any_hold,
                model.describe() + " perturbed pair alpha=(" +
                    format_rational_vector(alpha.coords, ",") +
                    ") does not report all-fail");
    }
  }

  const Rat scales[3] = {Rat(1, 2), Rat(1), Rat(3)};
  for (uint32_t dim = 2; dim <= 3; ++dim) {
    for (int i = 0; i < 3; ++i) {
      const Polytope p = sample_lattice_polytope(rng, dim);
      std::vector<Rat> shift(dim);
      for (auto& x : shift) x = Rat(rng.uniform_int(0, 4));
      const Polytope q = translate_polytope(scale_polytope(p, scales[i]), shift);
      const EquivalenceReport report = equivalence_report(p, q);
      bool all_hold = report.consistent;
      for (const bool hold : report.holds) all_hold = all_hold && hold;
      run.check(all_hold, describe_pair(p, q) + " homothety pair not all-hold");

      const Polytope random_q = sample_lattice_polytope(rng, dim);
      const EquivalenceReport random_report = equivalence_report(p, random_q);
      run.check(random_report.consistent,
                describe_pair(p, random_q) + " statuses disagree");
    }
  }
  return run.result;
}

SuiteResult suite_injectivity(uint64_t seed) {
  SuiteRun run;
  run.result.name = "injectivity";
  const auto record = [&run](const InjectivityScan& scan,
                             const std::string& label) {
    run.check(scan.counterexamples == 0,
              label + ": " + (scan.details.empty() ? "?" : scan.details[0]));
  };
  record(power_map_injectivity_scan(MultiProjModel({1, 1}), 40, seed),
         "multiproj [1,1]");
  record(power_map_injectivity_scan(MultiProjModel({1, 1, 1}), 40, seed + 1),
         "multiproj [1,1,1]");
  record(power_map_injectivity_scan_polytopes(2, 24, seed + 2), "polytope dim 2");
  record(power_map_injectivity_scan_polytopes(3, 12, seed + 3), "polytope dim 3");
  return run.result;
}

std::string describe_form(const HermitianForm& form) {
  std::ostringstream out;
  out << "dim " << form.dim << " [";
  for (uint32_t i = 0; i < form.dim; ++i) {
    for (uint32_t j = 0; j < form.dim; ++j) {
      out << form.entries[i][j].real() << (form.entries[i][j].imag() >= 0 ? "+" : "")
          << form.entries[i][j].imag() << "i ";
    }
    out << (i + 1 < form.dim ? "; " : "]");
  }
  return out.str();
}

SuiteResult suite_hodge_identity(uint64_t seed) {
  SuiteRun run;
  run.result.name = "hodge_identity";
  Rng rng(seed);
  for (uint32_t dim = 2; dim <= 6; ++dim) {
    for (int i = 0; i < 20; ++i) {
      const HermitianForm a = random_posdef(rng, dim);
      const HermitianForm adj = adjugate(a);
      const double det = determinant(a);
      const ComplexMat product = multiply(adj, a);
      double worst = 0;
      for (uint32_t r = 0; r < dim; ++r) {
        for (uint32_t c = 0; c < dim; ++c) {
          const Complex expected = (r == c) ? Complex(det, 0.0) : Complex(0.0, 0.0);
          worst = std::max(worst, std::abs(product[r][c] - expected));
        }
      }
      run.check(worst <= kIdentityRelTol * std::max(1.0, std::abs(det)),
                "adjugate product " + describe_form(a));

      const HermitianForm b = random_posdef(rng, dim);
      run.check(check_power_det_identity(a, b) <= kIdentityRelTol,
                "determinant power identity " + describe_form(a));

      const HermitianForm recovered = recover_from_adjugate(adj);
      double round_trip = 0;
      for (uint32_t r = 0; r < dim; ++r) {
        for (uint32_t c = 0; c < dim; ++c) {
          round_trip = std::max(
              round_trip, std::abs(recovered.entries[r][c] - a.entries[r][c]));
        }
      }
      run.check(round_trip <= kIdentityRelTol * std::max(1.0, frobenius_norm(a)),
                "adjugate round trip " + describe_form(a));
    }
  }
  return run.result;
}

SuiteResult suite_amgm(uint64_t seed) {
  SuiteRun run;
  run.result.name = "amgm";
  Rng rng(seed);
  for (uint32_t dim = 2; dim <= 6; ++dim) {
    for (int i = 0; i < 30; ++i) {
      const HermitianForm m = random_posdef(rng, dim);
      HermitianForm theta = HermitianForm::zero(dim);
      if (i % 3 == 1) {
        theta = scale_form(random_hermitian(rng, dim), 1e-14);
      } else if (i % 3 == 2) {
        const HermitianForm h = random_hermitian(rng, dim);
        const auto m_eigen = eigenvalues(m);
        const auto h_eigen = eigenvalues(h);
        const double h_radius =
            std::max(std::abs(h_eigen.front()), std::abs(h_eigen.back()));
        if (h_radius > 0) {
          theta = scale_form(h, 0.9 * m_eigen.front() / h_radius);
        }
      }
      bool violated = false;
      AmGmResult result;
      try {
        result = amgm_bound(m, theta);
      } catch (const Error&) {
        violated = true;
      }
      run.check(!violated, "bound violated for " + describe_form(m) +
                               " theta " + describe_form(theta));
      if (violated) continue;
      if (result.equality) {
        run.check(result.theta_norm <=
                      kForcingFactor * std::max(1.0, result.m_norm),
                  "equality band with theta norm " +
                      std::to_string(result.theta_norm) + " for " +
                      describe_form(m));
      } else {
        run.check(result.lhs < result.rhs, "strict case out of order");
      }
    }
  }
  return run.result;
}

SuiteResult suite_signature(uint64_t seed) {
  SuiteRun run;
  run.result.name = "signature";
  Rng rng(seed);
  for (const auto& shape : ring_model_shapes()) {
    const MultiProjModel model(shape);
    const MultiProjOracle oracle = make_multiproj_oracle(model);
    const uint32_t n = model.n();
    const uint32_t h = model.basis_dim();
    if (n < 2) continue;
    for (int i = 0; i < 5; ++i) {
      std::vector<ClassVector> kahler;
      for (uint32_t k = 2; k < n; ++k) {
        kahler.push_back(sample_big_class(rng, h));
      }
      const Inertia inertia = gram_signature(oracle, kahler);
      run.check(inertia.positives == 1 && inertia.zeros == 0 &&
                    inertia.negatives == h - 1,
                model.describe() + " inertia (" +
                    std::to_string(inertia.positives) + "," +
                    std::to_string(inertia.negatives) + "," +
                    std::to_string(inertia.zeros) + ")");

      const ClassVector alpha = sample_big_class(rng, h);
      const ClassVector beta = sample_big_class(rng, h);
      const Rat defect = discriminant_inequality(oracle, alpha, beta, kahler);
      run.check(defect >= 0, model.describe() + " discriminant defect " +
                                 format_rational(defect));
    }
    // With the reference classes set to copies of the pair itself, the
    // discriminant defect is literally a log-concavity defect.
    const ClassVector alpha = sample_big_class(rng, h);
    const ClassVector beta = sample_big_class(rng, h);
    const KTSequence seq = kt_sequence(oracle, alpha, beta);
    const InequalityReport chain = check_inequalities(seq);
    for (uint32_t k = 1; k < n; ++k) {
      std::vector<ClassVector> kahler;
      for (uint32_t i = 0; i + 1 < k; ++i) kahler.push_back(alpha);
      for (uint32_t i = k + 1; i < n; ++i) kahler.push_back(beta);
      const Rat defect = discriminant_inequality(oracle, alpha, beta, kahler);
      run.check(defect == chain.log_concavity_defects[k - 1],
                model.describe() + " discriminant defect at k=" +
                    std::to_string(k) + " is " + format_rational(defect) +
                    ", chain has " +
                    format_rational(chain.log_concavity_defects[k - 1]));
    }
  }
  return run.result;
}

SuiteResult suite_report_roundtrip() {
  SuiteRun run;
  run.result.name = "report_roundtrip";
  const std::string text =
      "model multiproj\n"
      "factors 1 1\n"
      "class alpha 1 1\n"
      "class beta 2 2\n"
      "class gamma 1 2\n"
      "task sequence alpha beta\n"
      "task inequalities alpha gamma\n"
      "task equivalence alpha beta\n"
      "task scan 8 7\n";
  const ProblemFile problem = parse_problem(text);
  const Report first = run_problem(problem, 5, std::nullopt);
  const Report second = run_problem(problem, 5, std::nullopt);
  run.check(first == second, "re-running the same problem changed the report");
  run.check(render_report_text(first) == render_report_text(second),
            "text rendering is not deterministic");
  const std::string json = render_report_json(first);
  run.check(json == render_report_json(second),
            "structured rendering is not deterministic");
  const Report parsed = parse_report_json(json);
  run.check(parsed == first, "structured report round-trip lost information");
  run.check(report_exit_code(first) == 0, "clean report has nonzero exit");
  return run.result;
}

}  // namespace

SelftestReport run_selftest(uint64_t seed) {
  const char* inject_env = std::getenv("KT_SELFTEST_INJECT");
  const bool inject_chain = inject_env && std::string(inject_env) == "chain";

  SelftestReport report;
  report.seed = seed;
  report.suites.push_back(suite_oracle_agreement(seed + 1));
  report.suites.push_back(suite_inequality_chain(seed + 2, inject_chain));
  report.suites.push_back(suite_equivalence_consistency(seed + 3));
  report.suites.push_back(suite_injectivity(seed + 4));
  report.suites.push_back(suite_hodge_identity(seed + 5));
  report.suites.push_back(suite_amgm(seed + 6));
  report.suites.push_back(suite_signature(seed + 7));
  report.suites.push_back(suite_report_roundtrip());
  for (const SuiteResult& suite : report.suites) {
    if (!suite.passed) report.all_passed = false;
  }
  return report;
}

std::string render_selftest(const SelftestReport& report) {
  std::ostringstream out;
  out << "kt selftest seed=" << report.seed << "\n";
  for (const SuiteResult& suite : report.suites) {
    out << "suite " << suite.name << ": " << (suite.passed ? "pass" : "FAIL")
        << " (" << suite.checks << " checks)\n";
    if (!suite.passed) {
      out << "  counterexample: " << suite.counterexample << "\n";
    }
  }
  out << "result: " << (report.all_passed ? "PASS" : "FAIL") << " ("
      << report.suites.size() << " suites)\n";
  return out.str();
}

}  // namespace kt
