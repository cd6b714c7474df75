#include "kt/kt.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/polytope.hpp"
#include "core/problem.hpp"
#include "core/rational.hpp"
#include "core/selftest.hpp"
#include "core/version.hpp"

struct kt_problem {
  kt::ProblemFile value;
};

struct kt_report {
  kt::Report value;
};

struct kt_polytope {
  explicit kt_polytope(kt::Polytope p) : value(std::move(p)) {}

  kt::Polytope value;
};

namespace {

thread_local std::string g_last_error;

kt_status set_error(kt_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

kt_status map_kind(kt::ErrorKind kind) {
  switch (kind) {
    case kt::ErrorKind::InvalidArgument: return KT_ERR_INVALID_ARGUMENT;
    case kt::ErrorKind::Parse: return KT_ERR_PARSE;
    case kt::ErrorKind::Precondition: return KT_ERR_PRECONDITION;
    case kt::ErrorKind::Consistency: return KT_ERR_CONSISTENCY;
    case kt::ErrorKind::Internal: return KT_ERR_INTERNAL;
  }
  return KT_ERR_INTERNAL;
}

// Runs `body` and converts any escaping exception into a status + message.
template <typename F>
kt_status guarded(F&& body) {
  try {
    return body();
  } catch (const kt::Error& error) {
    return set_error(map_kind(error.kind()), error.what());
  } catch (const std::bad_alloc&) {
    return set_error(KT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& error) {
    return set_error(KT_ERR_INTERNAL, error.what());
  } catch (...) {
    return set_error(KT_ERR_INTERNAL, "unknown error");
  }
}

kt_status write_string(const std::string& text, char** out) {
  char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buffer) return set_error(KT_ERR_INTERNAL, "out of memory");
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  *out = buffer;
  return KT_OK;
}

kt_status require(bool ok, const char* what) {
  if (ok) return KT_OK;
  return set_error(KT_ERR_INVALID_ARGUMENT, std::string("null ") + what);
}

}  // namespace

extern "C" {

const char* kt_version(void) { return kt::kVersion; }

const char* kt_last_error(void) { return g_last_error.c_str(); }

kt_status kt_problem_parse(const char* text, kt_problem** out) {
  if (kt_status s = require(text, "text"); s != KT_OK) return s;
  if (kt_status s = require(out, "out"); s != KT_OK) return s;
  return guarded([&] {
    auto handle = std::make_unique<kt_problem>();
    handle->value = kt::parse_problem(text);
    *out = handle.release();
    return KT_OK;
  });
}

void kt_problem_free(kt_problem* problem) { delete problem; }

kt_status kt_problem_run(const kt_problem* problem, uint64_t seed,
                         double tolerance, int has_tolerance, kt_report** out) {
  if (kt_status s = require(problem, "problem"); s != KT_OK) return s;
  if (kt_status s = require(out, "out"); s != KT_OK) return s;
  return guarded([&] {
    std::optional<double> tol;
    if (has_tolerance) tol = tolerance;
    auto handle = std::make_unique<kt_report>();
    handle->value = kt::run_problem(problem->value, seed, tol);
    *out = handle.release();
    return KT_OK;
  });
}

void kt_report_free(kt_report* report) { delete report; }

kt_status kt_report_render_text(const kt_report* report, char** out) {
  if (kt_status s = require(report, "report"); s != KT_OK) return s;
  if (kt_status s = require(out, "out"); s != KT_OK) return s;
  return guarded([&] { return write_string(kt::render_report_text(report->value), out); });
}

kt_status kt_report_render_json(const kt_report* report, char** out) {
  if (kt_status s = require(report, "report"); s != KT_OK) return s;
  if (kt_status s = require(out, "out"); s != KT_OK) return s;
  return guarded([&] { return write_string(kt::render_report_json(report->value), out); });
}

int kt_report_exit_code(const kt_report* report) {
  if (!report) return 2;
  return kt::report_exit_code(report->value);
}

void kt_string_free(char* text) { std::free(text); }

int kt_selftest(uint64_t seed, char** summary) {
  if (!summary) {
    set_error(KT_ERR_INVALID_ARGUMENT, "null summary");
    return -1;
  }
  int exit_code = -1;
  const kt_status status = guarded([&] {
    const kt::SelftestReport report = kt::run_selftest(seed);
    if (kt_status s = write_string(kt::render_selftest(report), summary); s != KT_OK) {
      return s;
    }
    exit_code = report.all_passed ? 0 : 2;
    return KT_OK;
  });
  return status == KT_OK ? exit_code : -1;
}

kt_status kt_polytope_create(uint32_t dim, size_t n_points,
                             const char* const* coords, kt_polytope** out) {
  if (kt_status s = require(coords, "coords"); s != KT_OK) return s;
  if (kt_status s = require(out, "out"); s != KT_OK) return s;
  return guarded([&] {
    std::vector<std::vector<kt::Rat>> points(n_points);
    for (size_t i = 0; i < n_points; ++i) {
      points[i].reserve(dim);
      for (uint32_t j = 0; j < dim; ++j) {
        const char* literal = coords[i * dim + j];
        if (!literal) return set_error(KT_ERR_INVALID_ARGUMENT, "null coordinate");
        points[i].push_back(kt::parse_rational(literal));
      }
    }
    auto handle = std::make_unique<kt_polytope>(
        kt::Polytope::from_points(dim, std::move(points)));
    *out = handle.release();
    return KT_OK;
  });
}

void kt_polytope_free(kt_polytope* polytope) { delete polytope; }

kt_status kt_polytope_vertex_count(const kt_polytope* polytope, size_t* out) {
  if (kt_status s = require(polytope, "polytope"); s != KT_OK) return s;
  if (kt_status s = require(out, "out"); s != KT_OK) return s;
  *out = polytope->value.vertices().size();
  return KT_OK;
}

kt_status kt_polytope_volume(const kt_polytope* polytope, char** out) {
  if (kt_status s = require(polytope, "polytope"); s != KT_OK) return s;
  if (kt_status s = require(out, "out"); s != KT_OK) return s;
  return guarded(
      [&] { return write_string(kt::format_rational(kt::volume(polytope->value)), out); });
}

kt_status kt_polytope_minkowski_sum(const kt_polytope* a, const kt_polytope* b,
                                    kt_polytope** out) {
  if (kt_status s = require(a, "polytope"); s != KT_OK) return s;
  if (kt_status s = require(b, "polytope"); s != KT_OK) return s;
  if (kt_status s = require(out, "out"); s != KT_OK) return s;
  return guarded([&] {
    auto handle =
        std::make_unique<kt_polytope>(kt::minkowski_sum(a->value, b->value));
    *out = handle.release();
    return KT_OK;
  });
}

kt_status kt_polytope_sequence(const kt_polytope* p, const kt_polytope* q,
                               char** out) {
  if (kt_status s = require(p, "polytope"); s != KT_OK) return s;
  if (kt_status s = require(q, "polytope"); s != KT_OK) return s;
  if (kt_status s = require(out, "out"); s != KT_OK) return s;
  return guarded([&] {
    const kt::KTSequence seq = kt::mixed_volume_sequence(p->value, q->value);
    return write_string(kt::format_rational_vector(seq.s), out);
  });
}

kt_status kt_polytope_homothety(const kt_polytope* p, const kt_polytope* q,
                                char** out) {
  if (kt_status s = require(p, "polytope"); s != KT_OK) return s;
  if (kt_status s = require(q, "polytope"); s != KT_OK) return s;
  if (kt_status s = require(out, "out"); s != KT_OK) return s;
  return guarded([&] {
    const kt::HomothetyResult result = kt::homothety_detect(p->value, q->value);
    if (result.witness) {
      std::string text = "scale " + kt::format_rational(result.witness->scale) +
                         " shift " +
                         kt::format_rational_vector(result.witness->translation);
      return write_string(text, out);
    }
    return write_string(result.irrational_scale ? "irrational" : "none", out);
  });
}

}  // extern "C"
