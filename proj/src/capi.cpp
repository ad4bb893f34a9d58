#include "gasketbvp.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "gasketbvp/greens.hpp"
#include "gasketbvp/io.hpp"
#include "gasketbvp/verify.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return GBVP_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return GBVP_ERR_INVALID;
  } catch (const std::out_of_range& e) {
    g_last_error = e.what();
    return GBVP_ERR_INVALID;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GBVP_ERR_RUNTIME;
  }
}

int g_threads = -1;  // -1: read the environment once

int effective_threads() {
  if (g_threads >= 0) return g_threads;
  const char* env = std::getenv("GASKET_BVP_THREADS");
  g_threads = env ? std::atoi(env) : 0;
  if (g_threads < 0) g_threads = 0;
  return g_threads;
}

}  // namespace

struct gbvp_domain {
  gasketbvp::Domain dom;
};

struct gbvp_spectrum {
  gasketbvp::HaarSpectrum spec;
};

extern "C" {

const char* gbvp_last_error(void) { return g_last_error.c_str(); }

void gbvp_free(char* text) { std::free(text); }

int gbvp_set_threads(int threads) {
  if (threads < 0) {
    g_last_error = "thread count must be >= 0";
    return GBVP_ERR_INVALID;
  }
  g_threads = threads;
  return GBVP_OK;
}

int gbvp_domain_create(const char* x_spec, int depth, int level, gbvp_domain** out) {
  if (!x_spec || !out) {
    g_last_error = "null argument";
    return GBVP_ERR_INVALID;
  }
  return guarded([&] {
    auto seq = gasketbvp::parse_x_spec(x_spec, depth);
    *out = new gbvp_domain{gasketbvp::Domain(std::move(seq), level)};
  });
}

void gbvp_domain_destroy(gbvp_domain* dom) { delete dom; }

int gbvp_domain_info(const gbvp_domain* dom, int* depth, int* level, double* x_value) {
  if (!dom) {
    g_last_error = "null domain";
    return GBVP_ERR_INVALID;
  }
  if (depth) *depth = dom->dom.seq.size();
  if (level) *level = dom->dom.level();
  if (x_value) *x_value = dom->dom.seq.value();
  return GBVP_OK;
}

int gbvp_domain_mesh_json(const gbvp_domain* dom, char** json_out) {
  if (!dom || !json_out) {
    g_last_error = "null argument";
    return GBVP_ERR_INVALID;
  }
  return guarded([&] { *json_out = dup_string(gasketbvp::mesh_to_json(*dom->dom.mesh)); });
}

int gbvp_ratios(const char* x_spec, int depth, double* m0, double* m1, double* m2,
                double* error_bound) {
  if (!x_spec) {
    g_last_error = "null x-spec";
    return GBVP_ERR_INVALID;
  }
  return guarded([&] {
    auto seq = gasketbvp::parse_x_spec(x_spec, depth);
    auto t = gasketbvp::ratio_triple(seq);
    if (m0) *m0 = t.m0;
    if (m1) *m1 = t.m1;
    if (m2) *m2 = t.m2;
    if (error_bound)
      *error_bound = seq.size() >= 2 ? gasketbvp::m0(seq).error_bound : 0.0;
  });
}

int gbvp_ratio_table_csv(const char* x_spec, int depth, char** csv_out) {
  if (!x_spec || !csv_out) {
    g_last_error = "null argument";
    return GBVP_ERR_INVALID;
  }
  return guarded([&] {
    auto seq = gasketbvp::parse_x_spec(x_spec, depth);
    auto table = gasketbvp::ratio_table(seq);
    std::ostringstream os;
    os.precision(17);
    os << "level,n,m0,est_error\n";
    for (size_t j = 0; j < table.m0_per_level.size(); ++j)
      os << j << ',' << seq.exponent(static_cast<int>(j)) << ',' << table.m0_per_level[j] << ','
         << table.est_error[j] << '\n';
    *csv_out = dup_string(os.str());
  });
}

int gbvp_ratio_sweep_csv(double a, double b, int n, int depth, char** csv_out) {
  if (!csv_out || n < 2 || !(a < b) || a <= 0.0 || b > 1.0) {
    g_last_error = "sweep wants 0 < a < b <= 1 and n >= 2";
    return GBVP_ERR_INVALID;
  }
  return guarded([&] {
    std::ostringstream os;
    os.precision(17);
    os << "x,m0\n";
    for (int i = 0; i < n; ++i) {
      const double x = a + (b - a) * i / (n - 1);
      auto seq = gasketbvp::DyadicSequence::from_value(x, depth);
      if (seq.size() < 2) continue;  // terminating dyadic expansion, m0 undefined
      os << x << ',' << gasketbvp::ratio_triple(seq).m0 << '\n';
    }
    *csv_out = dup_string(os.str());
  });
}

int gbvp_spectrum_from_json(const char* json_text, gbvp_spectrum** out) {
  if (!json_text || !out) {
    g_last_error = "null argument";
    return GBVP_ERR_INVALID;
  }
  return guarded([&] {
    auto spec = gasketbvp::spectrum_from_json(json_text);
    *out = new gbvp_spectrum{std::move(spec)};
  });
}

void gbvp_spectrum_destroy(gbvp_spectrum* spec) { delete spec; }

int gbvp_solve_harmonic_csv(const gbvp_domain* dom, const gbvp_spectrum* spec, char** csv_out) {
  if (!dom || !spec || !csv_out) {
    g_last_error = "null argument";
    return GBVP_ERR_INVALID;
  }
  return guarded([&] {
    auto u = gasketbvp::synthesize(dom->dom, spec->spec);
    *csv_out = dup_string(gasketbvp::function_to_csv(u, &dom->dom.mask));
  });
}

int gbvp_solve_green_csv(const gbvp_domain* dom, double forcing, int m, char** csv_out) {
  if (!dom || !csv_out) {
    g_last_error = "null argument";
    return GBVP_ERR_INVALID;
  }
  return guarded([&] {
    (void)effective_threads();
    gasketbvp::GreenOperator op(dom->dom, m);
    gasketbvp::MeshFunction f(*dom->dom.mesh, forcing);
    auto u = op.solve(f);
    *csv_out = dup_string(gasketbvp::function_to_csv(u, &dom->dom.mask));
  });
}

int gbvp_solve_dtn_json(const char* x_spec, int depth, const gbvp_spectrum* spec,
                        char** json_out) {
  if (!x_spec || !spec || !json_out) {
    g_last_error = "null argument";
    return GBVP_ERR_INVALID;
  }
  return guarded([&] {
    auto seq = gasketbvp::parse_x_spec(x_spec, depth);
    auto flux = gasketbvp::normal_derivative(seq, spec->spec);
    *json_out = dup_string(gasketbvp::flux_to_json(flux));
  });
}

int gbvp_verify_group(const char* group, unsigned long long seed, int trials,
                      char** report_out, int* passed) {
  if (!group || !report_out || !passed) {
    g_last_error = "null argument";
    return GBVP_ERR_INVALID;
  }
  return guarded([&] {
    (void)effective_threads();
    gasketbvp::VerifyOptions opts;
    opts.seed = seed;
    opts.trials = trials;
    auto rep = gasketbvp::check_group(group, opts);
    std::ostringstream os;
    os << rep.name << ": " << (rep.passed ? "pass" : "FAIL") << '\n';
    for (const auto& d : rep.details) os << "  " << d << '\n';
    *report_out = dup_string(os.str());
    *passed = rep.passed ? 1 : 0;
  });
}

int gbvp_verify_groups(char** names_out) {
  if (!names_out) {
    g_last_error = "null argument";
    return GBVP_ERR_INVALID;
  }
  std::string all;
  for (const auto& g : gasketbvp::verify_group_names()) {
    if (!all.empty()) all += ',';
    all += g;
  }
  *names_out = dup_string(all);
  return GBVP_OK;
}

}  // extern "C"
