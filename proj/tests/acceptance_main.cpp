// Acceptance suite: prints one [PASS]/[FAIL] line per criterion and returns
// the number of failures. Run a single criterion with --criterion N.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vortexprop/entanglement.hpp"
#include "vortexprop/evolution.hpp"
#include "vortexprop/phase_space.hpp"
#include "vortexprop/state_factory.hpp"

using namespace vortexprop;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  int id;
  std::string title;
  std::function<Outcome()> body;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> values(count);
  for (int i = 0; i < count; ++i)
    values[i] = count == 1 ? lo : lo + (hi - lo) * double(i) / double(count - 1);
  return values;
}

bool require(Outcome& outcome, bool condition, const std::string& label) {
  if (!condition) {
    outcome.pass = false;
    outcome.detail += " [" + label + "]";
  }
  return condition;
}

// ---------------------------------------------------------------------------

Outcome criterion_tmsv_analytic() {
  Outcome outcome;
  const auto start = std::chrono::steady_clock::now();
  for (double r : {0.3, 0.6, 1.0}) {
    auto state = make_tmsv(SqueezeParams{r, 0.0}, AdaptiveCutoff{1e-14, 256});
    const double e_n = log_negativity(state, NegativityMethod::schmidt).e_n;
    const double expected = 2.0 * r / std::log(2.0);
    require(outcome, std::abs(e_n - expected) < 1e-6,
            "r=" + fmt(r) + " got " + fmt(e_n) + " want " + fmt(expected));
  }
  const double elapsed = seconds_since(start);
  require(outcome, elapsed < 5.0, "runtime " + fmt(elapsed) + "s >= 5s");
  outcome.detail = " E_N matches 2r/ln2 to 1e-6, " + fmt(elapsed) + "s" + outcome.detail;
  return outcome;
}

Outcome criterion_schmidt_vs_eigensolve() {
  Outcome outcome;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(20260809u);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    AmplitudeMatrix table(11, 11);
    for (int m = 0; m < 11; ++m)
      for (int n = 0; n < 11; ++n) table(m, n) = Complex(uniform(rng), uniform(rng));
    table /= table.norm();
    const TwoModeState state(table, FockCutoff{10, 0.99});
    const double s = log_negativity(state, NegativityMethod::schmidt).e_n;
    const double e = log_negativity(state, NegativityMethod::eigensolve).e_n;
    worst = std::max(worst, std::abs(s - e));
  }
  require(outcome, worst < 1e-8, "random-state disagreement " + fmt(worst));

  double worst_ps = 0.0;
  for (int k : {1, 2}) {
    auto state = make_ps_vortex(SqueezeParams{0.5, 0.0}, k, FockCutoff{12, 1e-5});
    const double s = log_negativity(state, NegativityMethod::schmidt).e_n;
    const double e = log_negativity(state, NegativityMethod::eigensolve).e_n;
    worst_ps = std::max(worst_ps, std::abs(s - e));
  }
  require(outcome, worst_ps < 1e-8, "subtracted-state disagreement " + fmt(worst_ps));

  const double elapsed = seconds_since(start);
  require(outcome, elapsed < 30.0, "runtime " + fmt(elapsed) + "s >= 30s");
  outcome.detail = " max |dE_N| random " + fmt(worst) + ", subtracted " + fmt(worst_ps) + ", " +
                   fmt(elapsed) + "s" + outcome.detail;
  return outcome;
}

Outcome criterion_fig5_anchors() {
  Outcome outcome;
  SweepOptions options;
  options.validate_interior = {0.25};
  auto series =
      negativity_sweep(PsVortexSpec{SqueezeParams{1.0, 0.0}, 2}, linspace(0, 10, 201), options);
  auto summary = summarize_sweep(series);
  const double e0 = series.points.front().e_n;

  require(outcome, std::abs(e0 - 2.525) / 2.525 < 0.01,
          "E_N(0) = " + fmt(e0) + " vs reference 2.525 (1%)");
  require(outcome, std::abs(summary.max_value - 2.541) / 2.541 < 0.05,
          "max E_N = " + fmt(summary.max_value) + " vs reference 2.541 (5%)");
  require(outcome, std::abs(summary.fundamental_period - 2.0) <= 0.01,
          "detected period = " + fmt(summary.fundamental_period) + " vs 2.000 +- 0.01");
  outcome.detail = " E_N(0)=" + fmt(e0) + " max=" + fmt(summary.max_value) + "@kappa=" +
                   fmt(summary.argmax) + " period=" + fmt(summary.fundamental_period) +
                   outcome.detail;
  return outcome;
}

Outcome criterion_fig6_anchors() {
  Outcome outcome;
  SweepOptions options;
  options.tail_tolerance = 1e-5;
  options.cutoff_cap = 1024;
  const BsVortexParams params{1.0, 1.0, 1.0, 0.75, 1, 0.0};
  auto series = negativity_sweep(params, linspace(0, 10, 201), options);
  auto summary = summarize_sweep(series);
  const double e0 = series.points.front().e_n;

  require(outcome, std::abs(e0 - 1.8) / 1.8 < 0.05,
          "E_N(0) = " + fmt(e0) + " vs reference 1.8 (5%)");
  require(outcome, summary.max_value >= e0, "max below the initial value");
  double min_early = std::numeric_limits<double>::infinity();
  double argmin_early = 0.0;
  for (const auto& point : series.points)
    if (point.kappa <= 2.0 && point.e_n < min_early) {
      min_early = point.e_n;
      argmin_early = point.kappa;
    }
  require(outcome, min_early <= 1e-6,
          "no zero in kappa <= 2: min " + fmt(min_early) + " at " + fmt(argmin_early));
  outcome.detail = " E_N(0)=" + fmt(e0) + " max=" + fmt(summary.max_value) + "@kappa=" +
                   fmt(summary.argmax) + " min=" + fmt(summary.min_value) + "@kappa=" +
                   fmt(summary.argmin) + outcome.detail;
  return outcome;
}

Outcome criterion_k1_oscillation() {
  Outcome outcome;
  SweepOptions options;
  options.validate_endpoints = false;
  auto series =
      negativity_sweep(PsVortexSpec{SqueezeParams{1.0, 0.0}, 1}, linspace(0, 2, 101), options);
  auto summary = summarize_sweep(series);
  const double e0 = series.points.front().e_n;
  const double ratio = (summary.max_value - summary.min_value) / e0;
  require(outcome, ratio > 0.0 && ratio < 0.05,
          "oscillation ratio " + fmt(ratio) + " outside (0, 0.05)");
  outcome.detail = " measured (max-min)/E_N(0) = " + fmt(ratio) + outcome.detail;
  return outcome;
}

Outcome criterion_wigner_cross_validation() {
  Outcome outcome;
  std::vector<Point4> points;
  for (double x : {-1.0, -0.3, 0.2, 0.8, 1.4})
    for (double y : {-0.9, -0.2, 0.3, 0.7, 1.2}) points.push_back(Point4{x, 0.15, y, -0.2});

  double worst = 0.0;
  for (int k : {1, 2})
    for (double r : {0.0, 0.5}) {
      auto state = make_ps_vortex(SqueezeParams{r, 0.0}, k, AdaptiveCutoff{1e-12, 128});
      auto sampler = wigner_sampler(state);
      auto closed = wigner_ps_closed_form(SqueezeParams{r, 0.0}, k, points);
      for (size_t i = 0; i < points.size(); ++i)
        worst = std::max(worst, std::abs(closed(i) - sampler(points[i])));
    }
  require(outcome, worst < 2e-6, "closed form vs kernel " + fmt(worst) + " >= 2e-6");

  auto odd = make_ps_vortex(SqueezeParams{0.5, 0.0}, 1, AdaptiveCutoff{1e-12, 128});
  const double origin = wigner_sampler(odd)(Point4{});
  require(outcome, std::abs(origin + wigner_peak()) < 1e-9,
          "odd-order origin " + fmt(origin) + " vs -4/pi^2");
  outcome.detail = " max |closed - kernel| = " + fmt(worst) + ", W(0) = " + fmt(origin) +
                   outcome.detail;
  return outcome;
}

Outcome criterion_transport_equivalence() {
  Outcome outcome;
  const auto start = std::chrono::steady_clock::now();
  SliceSpec spec;
  Grid2D grid{{-3, 3, 21}, {-3, 3, 21}, AxisLabel::x, AxisLabel::y};

  double worst = 0.0;
  for (double kappa : {0.25, 0.8}) {
    const auto wg = WaveguideParams::from_kappa(kappa);

    auto ps = make_ps_vortex(SqueezeParams{0.4, 0.0}, 1, FockCutoff{28, 1e-4});
    auto direct = wigner_slice(evolve_state(ps, wg), spec, grid);
    auto moved = transport_wigner(wigner_sampler(ps), wg, spec, grid);
    worst = std::max(worst, (direct.values - moved.values).cwiseAbs().maxCoeff());

    auto bs = make_bs_vortex(BsVortexParams{0.15, 0.25, 1, 0.75, 1, 0}, FockCutoff{28, 1e-4});
    auto direct_bs = wigner_slice(evolve_state(bs, wg), spec, grid);
    auto moved_bs = transport_wigner(wigner_sampler(bs), wg, spec, grid);
    worst = std::max(worst, (direct_bs.values - moved_bs.values).cwiseAbs().maxCoeff());
  }
  require(outcome, worst < 1e-6, "transport vs evolution " + fmt(worst) + " >= 1e-6");
  const double elapsed = seconds_since(start);
  require(outcome, elapsed < 60.0, "runtime " + fmt(elapsed) + "s >= 60s");
  outcome.detail =
      " max |difference| = " + fmt(worst) + " at n_max 28, " + fmt(elapsed) + "s" + outcome.detail;
  return outcome;
}

Outcome criterion_conservation_suite() {
  Outcome outcome;
  auto state = make_ps_vortex(SqueezeParams{0.5, 0.0}, 1, AdaptiveCutoff{1e-10, 256});

  double norm_drift = 0.0;
  for (double kappa = 0.0; kappa <= 10.0; kappa += 0.25) {
    auto evolved = evolve_state(state, WaveguideParams::from_kappa(kappa));
    norm_drift = std::max(norm_drift, std::abs(evolved.norm() - 1.0));
  }
  require(outcome, norm_drift < 1e-10, "norm drift " + fmt(norm_drift));

  auto evolved = evolve_state(state, WaveguideParams::from_kappa(0.37));
  double sector_drift = 0.0;
  for (int total = 0; total <= 2 * state.n_max(); ++total) {
    double before = 0.0, after = 0.0;
    for (int m = std::max(0, total - state.n_max()); m <= std::min(total, state.n_max()); ++m) {
      before += std::norm(state.amplitude(m, total - m));
      after += std::norm(evolved.amplitude(m, total - m));
    }
    sector_drift = std::max(sector_drift, std::abs(before - after));
  }
  require(outcome, sector_drift < 1e-13, "sector drift " + fmt(sector_drift));

  SweepOptions options;
  options.validate_endpoints = false;
  auto series = negativity_sweep(PsVortexSpec{SqueezeParams{0.5, 0.0}, 1},
                                 {0.3, 0.7, 1.1, 1.9, 2.3, 2.7, 3.1, 3.9}, options);
  double period_two = 0.0;
  for (int i = 0; i < 4; ++i)
    period_two =
        std::max(period_two, std::abs(series.points[i].e_n - series.points[i + 4].e_n));
  require(outcome, period_two < 1e-8, "E_N period-2 deviation " + fmt(period_two));

  Grid2D grid{{-4, 4, 81}, {-4, 4, 81}, AxisLabel::x, AxisLabel::y};
  bool winding_ok = true;
  for (int k : {1, 2}) {
    auto vortex = make_bs_vortex(BsVortexParams{0.1, 0.15, 1, 1, k, 0}, FockCutoff{24, 1e-6});
    for (double kappa : {0.0, 0.15, 0.3, 0.45}) {
      auto rotated = evolve_state(vortex, WaveguideParams::from_kappa(kappa));
      auto field = quadrature_wavefunction(rotated, grid);
      if (std::abs(winding_number(field, 1.2)) != k) winding_ok = false;
    }
  }
  require(outcome, winding_ok, "winding number not conserved");
  outcome.detail = " norm drift " + fmt(norm_drift) + ", sector drift " + fmt(sector_drift) +
                   ", period-2 dev " + fmt(period_two) + ", |w| conserved" + outcome.detail;
  return outcome;
}

Outcome criterion_enhancement() {
  Outcome outcome;
  for (double r : {0.5, 1.0}) {
    const double base =
        log_negativity(make_tmsv(SqueezeParams{r, 0.0}, AdaptiveCutoff{1e-12, 256}),
                       NegativityMethod::schmidt)
            .e_n;
    const double subtracted =
        log_negativity(make_ps_vortex(SqueezeParams{r, 0.0}, 1, AdaptiveCutoff{1e-12, 256}),
                       NegativityMethod::schmidt)
            .e_n;
    require(outcome, subtracted > base,
            "no enhancement at r=" + fmt(r) + ": " + fmt(subtracted) + " <= " + fmt(base));
  }
  double previous = 0.0;
  std::string ks;
  for (int k : {1, 2, 3}) {
    const double e_n =
        log_negativity(make_ps_vortex(SqueezeParams{1.0, 0.0}, k, AdaptiveCutoff{1e-12, 512}),
                       NegativityMethod::schmidt)
            .e_n;
    require(outcome, e_n > previous, "E_N not increasing at k=" + std::to_string(k));
    previous = e_n;
    ks += " E_N(k=" + std::to_string(k) + ")=" + fmt(e_n);
  }
  outcome.detail = ks + outcome.detail;
  return outcome;
}

Outcome criterion_cli_presets() {
  Outcome outcome;
  const std::string binary = VORTEXPROP_BINARY;
  const fs::path root = fs::temp_directory_path() / "vortexprop_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  auto run = [&](const std::string& args) {
    const std::string command = binary + " " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(command.c_str()));
  };
  auto slurp = [](const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };

  // determinism: two fig5a runs, byte-identical sweep data
  require(outcome, run("figure fig5a --out " + (root / "det_a").string()) == 0,
          "fig5a run 1 failed");
  require(outcome, run("figure fig5a --out " + (root / "det_b").string()) == 0,
          "fig5a run 2 failed");
  require(outcome,
          slurp(root / "det_a" / "fig5a" / "sweep.csv") ==
              slurp(root / "det_b" / "fig5a" / "sweep.csv"),
          "fig5a sweep files differ between runs");

  const auto start = std::chrono::steady_clock::now();
  std::string timings;
  for (const std::string id : {"fig2", "fig3", "fig4", "fig5a", "fig5b", "fig6"}) {
    const auto t0 = std::chrono::steady_clock::now();
    require(outcome, run("figure " + id + " --out " + (root / "timed").string()) == 0,
            id + " failed");
    timings += " " + id + "=" + fmt(seconds_since(t0)) + "s";
  }
  const double elapsed = seconds_since(start);
  require(outcome, elapsed < 600.0, "timed presets took " + fmt(elapsed) + "s >= 600s");

  // the large-squeezing preset runs outside the timed budget
  const auto t0 = std::chrono::steady_clock::now();
  require(outcome, run("figure fig1 --out " + (root / "untimed").string()) == 0, "fig1 failed");
  timings += " fig1=" + fmt(seconds_since(t0)) + "s(untimed)";

  outcome.detail = " total timed " + fmt(elapsed) + "s;" + timings + outcome.detail;
  return outcome;
}

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--criterion" && i + 1 < argc) selected = std::atoi(argv[i + 1]);
  }

  const std::vector<Check> checks = {
      {1, "squeezed-vacuum negativity matches 2r/ln2", criterion_tmsv_analytic},
      {2, "schmidt and eigensolve paths agree", criterion_schmidt_vs_eigensolve},
      {3, "subtracted-family sweep anchor values", criterion_fig5_anchors},
      {4, "beam-splitter sweep anchor values", criterion_fig6_anchors},
      {5, "first-order oscillation smallness", criterion_k1_oscillation},
      {6, "Wigner closed form cross-validation", criterion_wigner_cross_validation},
      {7, "transport equals state evolution", criterion_transport_equivalence},
      {8, "conservation suite", criterion_conservation_suite},
      {9, "subtraction enhances entanglement", criterion_enhancement},
      {10, "CLI determinism and figure presets", criterion_cli_presets},
  };

  int failures = 0;
  for (const auto& check : checks) {
    if (selected != 0 && check.id != selected) continue;
    Outcome outcome;
    try {
      outcome = check.body();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string(" exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s |%s\n", outcome.pass ? "PASS" : "FAIL", check.id,
                check.title.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures;
}
