// Batch front end; everything goes through the C API.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gasketbvp.h"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

int fail(const std::string& what) {
  std::cerr << "error: " << what << ": " << gbvp_last_error() << '\n';
  return kExitUsage;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream os(out_path);
  if (!os) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return kExitUsage;
  }
  os << text;
  return 0;
}

std::string take(char* text) {
  std::string s = text ? text : "";
  gbvp_free(text);
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CLI::ValidationError("cannot read " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct SpecArgs {
  std::string x_spec;
  int depth = 6;
  int level = 0;  // 0: pick n_K + 2

  void add_to(CLI::App& app, bool with_level) {
    app.add_option("--x,--seq", x_spec,
                   "x as decimal, exponent list, arith:a,d or periodic:p1,..,pr")
        ->required();
    app.add_option("--depth", depth, "truncation depth K for decimal/pattern specs");
    if (with_level) app.add_option("--level", level, "mesh level L (default n_K + 2)");
  }

  gbvp_domain* make_domain() const {
    gbvp_domain* dom = nullptr;
    if (level > 0) {
      if (gbvp_domain_create(x_spec.c_str(), depth, level, &dom) != GBVP_OK) return nullptr;
      return dom;
    }
    for (int l = 1; l <= 12; ++l)
      if (gbvp_domain_create(x_spec.c_str(), depth, l, &dom) == GBVP_OK) {
        gbvp_domain_destroy(dom);
        int ok = gbvp_domain_create(x_spec.c_str(), depth, std::min(l + 2, 12), &dom);
        return ok == GBVP_OK ? dom : nullptr;
      }
    return nullptr;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary value problems on subdomains of the Sierpinski gasket"};
  app.require_subcommand(1);
  int threads = -1;
  app.add_option("--threads", threads, "solver thread count (also GASKET_BVP_THREADS)");

  // ratios
  auto* ratios = app.add_subcommand("ratios", "harmonic ratios m0, m1, m2");
  SpecArgs rspec;
  ratios->add_option("--x,--seq", rspec.x_spec, "x-spec (see solve --help)");
  ratios->add_option("--depth", rspec.depth, "truncation depth");
  std::string sweep, rout;
  ratios->add_option("--sweep", sweep, "a:b:n sweep of x, emits (x, m0) CSV");
  ratios->add_option("--out", rout, "output path (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "harmonic / green / dtn solvers");
  solve->require_subcommand(1);

  auto* harm = solve->add_subcommand("harmonic", "harmonic function from a boundary spectrum");
  SpecArgs hspec;
  hspec.add_to(*harm, true);
  std::string hspectrum, hout;
  harm->add_option("--spectrum", hspectrum, "spectrum JSON file")->required();
  harm->add_option("--out", hout, "output CSV path");

  auto* green = solve->add_subcommand("green", "-Lap u = F with zero boundary values");
  SpecArgs gspec;
  gspec.add_to(*green, true);
  std::string forcing = "const:1", gout;
  int gm = 3;
  green->add_option("--forcing", forcing, "forcing spec, const:<value>");
  green->add_option("--m", gm, "kernel truncation depth (1..K-1)");
  green->add_option("--out", gout, "output CSV path");

  auto* dtn = solve->add_subcommand("dtn", "Dirichlet-to-Neumann image of a spectrum");
  SpecArgs dspec;
  dspec.add_to(*dtn, false);
  std::string dspectrum, dout;
  dtn->add_option("--spectrum", dspectrum, "spectrum JSON file")->required();
  dtn->add_option("--out", dout, "output JSON path");

  // verify
  auto* verify = app.add_subcommand("verify", "run named check groups");
  std::vector<std::string> groups;
  bool all_groups = false;
  unsigned long long seed = 42;
  int trials = 0;
  std::string vout;
  verify->add_option("--group", groups, "check group (repeatable)");
  verify->add_flag("--all", all_groups, "run every group");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--trials", trials, "trial count override (0 = default)");
  verify->add_option("--out", vout, "report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (threads >= 0 && gbvp_set_threads(threads) != GBVP_OK) return fail("threads");

  if (*ratios) {
    char* text = nullptr;
    if (!sweep.empty()) {
      double a = 0, b = 0;
      int n = 0;
      if (std::sscanf(sweep.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3) {
        std::cerr << "error: --sweep wants a:b:n\n";
        return kExitUsage;
      }
      if (gbvp_ratio_sweep_csv(a, b, n, rspec.depth, &text) != GBVP_OK) return fail("sweep");
      return emit(take(text), rout);
    }
    if (rspec.x_spec.empty()) {
      std::cerr << "error: ratios wants --x/--seq or --sweep\n";
      return kExitUsage;
    }
    double m0 = 0, m1 = 0, m2 = 0, err = 0;
    if (gbvp_ratios(rspec.x_spec.c_str(), rspec.depth, &m0, &m1, &m2, &err) != GBVP_OK)
      return fail("ratios");
    if (gbvp_ratio_table_csv(rspec.x_spec.c_str(), rspec.depth, &text) != GBVP_OK)
      return fail("ratio table");
    std::ostringstream os;
    os.precision(15);
    os << "m0," << m0 << "\nm1," << m1 << "\nm2," << m2 << "\nerror_bound," << err << "\n"
       << take(text);
    return emit(os.str(), rout);
  }

  if (*harm) {
    gbvp_domain* dom = hspec.make_domain();
    if (!dom) return fail("domain");
    gbvp_spectrum* spec = nullptr;
    if (gbvp_spectrum_from_json(read_file(hspectrum).c_str(), &spec) != GBVP_OK) {
      gbvp_domain_destroy(dom);
      return fail("spectrum");
    }
    char* csv = nullptr;
    const int rc = gbvp_solve_harmonic_csv(dom, spec, &csv);
    gbvp_spectrum_destroy(spec);
    gbvp_domain_destroy(dom);
    if (rc != GBVP_OK) return fail("solve harmonic");
    return emit(take(csv), hout);
  }

  if (*green) {
    double fval = 0;
    if (std::sscanf(forcing.c_str(), "const:%lf", &fval) != 1) {
      std::cerr << "error: --forcing wants const:<value>\n";
      return kExitUsage;
    }
    gbvp_domain* dom = gspec.make_domain();
    if (!dom) return fail("domain");
    char* csv = nullptr;
    const int rc = gbvp_solve_green_csv(dom, fval, gm, &csv);
    gbvp_domain_destroy(dom);
    if (rc != GBVP_OK) return fail("solve green");
    return emit(take(csv), gout);
  }

  if (*dtn) {
    gbvp_spectrum* spec = nullptr;
    if (gbvp_spectrum_from_json(read_file(dspectrum).c_str(), &spec) != GBVP_OK)
      return fail("spectrum");
    char* json = nullptr;
    const int rc = gbvp_solve_dtn_json(dspec.x_spec.c_str(), dspec.depth, spec, &json);
    gbvp_spectrum_destroy(spec);
    if (rc != GBVP_OK) return fail("solve dtn");
    return emit(take(json), dout);
  }

  if (*verify) {
    if (all_groups) {
      char* names = nullptr;
      gbvp_verify_groups(&names);
      std::stringstream ss(take(names));
      std::string g;
      groups.clear();
      while (std::getline(ss, g, ',')) groups.push_back(g);
    }
    if (groups.empty()) {
      std::cerr << "error: verify wants --group or --all\n";
      return kExitUsage;
    }
    std::ostringstream os;
    bool ok = true;
    for (const auto& g : groups) {
      char* report = nullptr;
      int passed = 0;
      if (gbvp_verify_group(g.c_str(), seed, trials, &report, &passed) != GBVP_OK)
        return fail("verify " + g);
      os << take(report);
      ok = ok && passed;
    }
    const int rc = emit(os.str(), vout);
    return rc != 0 ? rc : (ok ? 0 : kExitCheckFailed);
  }

  return kExitUsage;
}
