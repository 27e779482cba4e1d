#include "doctest.h"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "json.hpp"

#include "cqed/entanglement.hpp"
#include "cqed/experiments.hpp"
#include "test_helpers.hpp"

using namespace cqed;
using testutil::kPi;

TEST_CASE("linspace hits both endpoints exactly") {
  std::vector<double> g = linspace(0.0, 2.0 * kPi, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 2.0 * kPi);
  CHECK(g[2] == doctest::Approx(kPi).epsilon(1e-15));
  CHECK_THROWS_AS(linspace(0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(linspace(1.0, 1.0, 3), std::invalid_argument);
}

TEST_CASE("fixed six-decimal rendering folds negative zero") {
  CHECK(format_fixed6(0.0) == "0.000000");
  CHECK(format_fixed6(-1e-9) == "0.000000");
  CHECK(format_fixed6(-4.9e-7) == "0.000000");
  CHECK(format_fixed6(0.75) == "0.750000");
  CHECK(format_fixed6(-0.3333333333) == "-0.333333");
  CHECK(format_fixed6(2.0000004) == "2.000000");
}

TEST_CASE("sweep series validates columns and serializes CSV") {
  SweepSeries s("x", {0.0, 0.5, 1.0});
  s.add_column("y", {1.0, 0.25, -0.0});
  CHECK_THROWS_AS(s.add_column("y", {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(s.add_column("z", {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(s.column("missing"), std::invalid_argument);
  CHECK(s.column("y")[1] == 0.25);

  std::string csv = s.to_csv();
  CHECK(csv.substr(0, csv.find('\n')) == "x,y");
  CHECK(csv.find("0,1.000000") != std::string::npos);
  CHECK(csv.find("0.5,0.250000") != std::string::npos);
  CHECK(csv.find("1,0.000000") != std::string::npos);  // -0 folded
  CHECK(csv.find("-0.000000") == std::string::npos);
}

TEST_CASE("sweep JSON carries config metadata and full-precision rows") {
  SweepSeries s("lambda_t", {0.0, 1.0 / 3.0});
  s.add_column("value", {0.1234567890123, 1.0});
  s.set_metadata("n", "3");
  s.set_metadata("note", "sample");

  auto doc = nlohmann::json::parse(s.to_json_string());
  REQUIRE(doc.contains("config"));
  REQUIRE(doc.contains("rows"));
  CHECK(doc["config"]["n"] == 3);  // numeric metadata becomes a JSON number
  CHECK(doc["config"]["note"] == "sample");
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["lambda_t"].get<double>() == 0.0);
  CHECK(doc["rows"][1]["value"].get<double>() == 1.0);
  CHECK(doc["rows"][0]["value"].get<double>() == doctest::Approx(0.1234567890123).epsilon(1e-15));
}

TEST_CASE("closed-form readout starts at certainty and stays normalized") {
  CollisionProbabilities start = collision_probabilities_closed_form(0.0);
  CHECK(start.eg == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(start.ge) < 1e-12);
  CHECK(std::abs(start.ee) < 1e-12);
  CHECK(std::abs(start.gg) < 1e-12);

  for (double lt : linspace(0.0, 2.0 * kPi, 1000))
    CHECK(std::abs(collision_probabilities_closed_form(lt).sum() - 1.0) < 1e-12);
}

TEST_CASE("closed-form readout at lambda_t = pi/3") {
  CollisionProbabilities p = collision_probabilities_closed_form(kPi / 3.0);
  CHECK(p.eg == doctest::Approx(0.2155).epsilon(1e-12));
  CHECK(p.ge == doctest::Approx(0.6725).epsilon(1e-12));
  CHECK(p.ee == doctest::Approx(0.056).epsilon(1e-12));
  CHECK(p.gg == doctest::Approx(0.056).epsilon(1e-12));
}

TEST_CASE("pure crossing channel is the two-atom exchange") {
  CollisionMixture only_a{1.0, 0.0, 0.0};
  for (double lt : {0.3, 1.1, 2.7}) {
    CollisionProbabilities p = collision_probabilities_mixture(only_a, lt);
    CHECK(p.eg == doctest::Approx(std::cos(lt) * std::cos(lt)).epsilon(1e-12));
    CHECK(p.ge == doctest::Approx(std::sin(lt) * std::sin(lt)).epsilon(1e-12));
    CHECK(std::abs(p.ee) < 1e-12);
    CHECK(std::abs(p.gg) < 1e-12);
  }
}

// Spectator channels in closed form: with z = exp(-3 i lambda_t), the kept
// pair sees |z+2|^2/9 on the unmoved branch and |z-1|^2/9 on each transfer.
TEST_CASE("spectator channels match their three-atom closed forms") {
  for (double lt : {0.4, 1.3, 2.9, 5.2}) {
    double keep = (5.0 + 4.0 * std::cos(3.0 * lt)) / 9.0;
    double move = (2.0 - 2.0 * std::cos(3.0 * lt)) / 9.0;

    CollisionProbabilities b = collision_probabilities_mixture({0.0, 1.0, 0.0}, lt);
    CHECK(b.eg == doctest::Approx(keep).epsilon(1e-11));
    CHECK(b.ge == doctest::Approx(move).epsilon(1e-11));
    CHECK(b.ee == doctest::Approx(move).epsilon(1e-11));
    CHECK(std::abs(b.gg) < 1e-12);

    CollisionProbabilities c = collision_probabilities_mixture({0.0, 0.0, 1.0}, lt);
    CHECK(c.eg == doctest::Approx(keep).epsilon(1e-11));
    CHECK(c.ge == doctest::Approx(move).epsilon(1e-11));
    CHECK(c.gg == doctest::Approx(move).epsilon(1e-11));
    CHECK(std::abs(c.ee) < 1e-12);
  }
}

TEST_CASE("default mixture reproduces the closed-form curves within 0.002") {
  CollisionMixture mix;
  double worst = 0.0;
  for (double lt : linspace(0.0, 2.0 * kPi, 400)) {
    CollisionProbabilities a = collision_probabilities_mixture(mix, lt);
    CollisionProbabilities b = collision_probabilities_closed_form(lt);
    worst = std::max({worst, std::abs(a.ee - b.ee), std::abs(a.gg - b.gg),
                      std::abs(a.eg - b.eg), std::abs(a.ge - b.ge)});
    CHECK(std::abs(a.sum() - 1.0) < 1e-12);
  }
  CHECK(worst < 0.002);
}

TEST_CASE("mixture weights are validated") {
  CHECK_THROWS_AS(collision_probabilities_mixture({-0.1, 0.55, 0.55}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(collision_probabilities_mixture({0.5, 0.5, 0.5}, 1.0), std::invalid_argument);
}

TEST_CASE("least-squares fit lands on the quarter-eighth-eighth split") {
  CollisionMixture fit = fit_mixture_weights();
  CHECK(std::abs(fit.two_atom - 0.75) < 0.005);
  CHECK(std::abs(fit.extra_pulse1 - 0.125) < 0.005);
  CHECK(std::abs(fit.extra_pulse2 - 0.125) < 0.005);
  CHECK_THROWS_AS(fit_mixture_weights(3), std::invalid_argument);
}

TEST_CASE("readout series columns follow the plotting order") {
  SweepSeries s = figure1_series(linspace(0.0, 2.0 * kPi, 7));
  REQUIRE(s.columns().size() == 4);
  CHECK(s.columns()[0].first == "P_eg");
  CHECK(s.columns()[1].first == "P_ge");
  CHECK(s.columns()[2].first == "P_ee");
  CHECK(s.columns()[3].first == "P_gg");
  CHECK(s.column("P_eg")[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < s.size(); ++i) {
    CollisionProbabilities p = collision_probabilities_closed_form(s.grid()[i]);
    CHECK(s.column("P_ge")[i] == doctest::Approx(p.ge).epsilon(1e-12));
  }
}

TEST_CASE("window-length errors reproduce the fixed reference fidelities") {
  double lt0 = 2.0 * kPi / 9.0;
  TimingErrorReport paper = timing_error_study(lt0, 0.1, 0.1, TimingPhaseMode::paper);
  CHECK(paper.late_entry_fidelity == doctest::Approx(0.99028782254835806).epsilon(1e-9));
  CHECK(paper.early_exit_fidelity == doctest::Approx(0.99218727096086172).epsilon(1e-9));

  TimingErrorReport model = timing_error_study(lt0, 0.1, 0.1, TimingPhaseMode::model);
  CHECK(model.late_entry_fidelity == doctest::Approx(paper.late_entry_fidelity).epsilon(1e-14));
  CHECK(model.early_exit_fidelity == doctest::Approx(0.99182164910066459).epsilon(1e-9));
  CHECK(model.lambda_t0 == lt0);
  CHECK(model.mode == TimingPhaseMode::model);
}

TEST_CASE("model-mode early exit equals the sequential pair evolution") {
  double lt0 = 2.0 * kPi / 9.0;
  double f = 0.17;
  StateVector ideal = analytic_w_evolution(3, lt0);
  StateVector partial = analytic_w_evolution(3, lt0 * (1.0 - f));

  // remaining pair = atoms 0 and 1; atom 2 idles after leaving
  BasisDescriptor basis(3);
  ComplexMatrix pair_gen = kronecker(vacuum_sector_hamiltonian(2, 1.0).matrix(),
                                     ComplexMatrix::Identity(2, 2));
  Propagator pair(Operator(basis, pair_gen, true));
  StateVector sequential = pair.evolve(partial, f * lt0);

  TimingErrorReport rep = timing_error_study(lt0, 0.0, f, TimingPhaseMode::model);
  CHECK(rep.early_exit_fidelity ==
        doctest::Approx(state_fidelity(ideal, sequential)).epsilon(1e-12));
}

TEST_CASE("window-length fidelity error grows quadratically") {
  double lt0 = 2.0 * kPi / 9.0;
  double f = 0.01;
  TimingErrorReport small = timing_error_study(lt0, f, f, TimingPhaseMode::model);
  TimingErrorReport doubled = timing_error_study(lt0, 2 * f, 2 * f, TimingPhaseMode::model);
  double ratio_late = (1.0 - doubled.late_entry_fidelity) / (1.0 - small.late_entry_fidelity);
  double ratio_early = (1.0 - doubled.early_exit_fidelity) / (1.0 - small.early_exit_fidelity);
  CHECK(ratio_late > 4.0 / 1.5);
  CHECK(ratio_late < 4.0 * 1.5);
  CHECK(ratio_early > 4.0 / 1.5);
  CHECK(ratio_early < 4.0 * 1.5);
}

TEST_CASE("timing study rejects out-of-range arguments") {
  CHECK_THROWS_AS(timing_error_study(0.0, 0.1, 0.1, TimingPhaseMode::paper), std::invalid_argument);
  CHECK_THROWS_AS(timing_error_study(1.0, 1.0, 0.1, TimingPhaseMode::paper), std::invalid_argument);
  CHECK_THROWS_AS(timing_error_study(1.0, 0.1, -0.2, TimingPhaseMode::paper), std::invalid_argument);
}

TEST_CASE("validity sweep shows the inverse-square collapse of the error") {
  SweepSeries s = dispersive_validation_sweep({10.0, 20.0, 40.0, 80.0}, kPi / 4.0, 2);
  const std::vector<double>& inf = s.column("infidelity");
  const std::vector<double>& leak = s.column("photon_leakage_max");
  const std::vector<double>& flagged = s.column("flagged");

  CHECK(inf[1] <= 0.5 * inf[0]);
  for (std::size_t i = 0; i + 1 < inf.size(); ++i) {
    CHECK(inf[i + 1] < inf[i]);
    CHECK(leak[i + 1] < leak[i]);
  }
  for (std::size_t i = 0; i < leak.size(); ++i) {
    CHECK(leak[i] > 0.0);
    CHECK(flagged[i] == 0.0);
  }

  // two-atom envelope: worst-case deviation saturates 4 g^2 / (delta^2 + 8 g^2)
  for (std::size_t i = 0; i < inf.size(); ++i) {
    double r = s.grid()[i];
    double envelope = 4.0 / (r * r + 8.0);
    CHECK(inf[i] > 0.95 * envelope);
    CHECK(inf[i] < 1.10 * envelope);
  }
}

TEST_CASE("validity sweep flags ratios below the dispersive threshold") {
  SweepSeries s = dispersive_validation_sweep({2.0, 10.0}, 0.3, 2);
  CHECK(s.column("flagged")[0] == 1.0);
  CHECK(s.column("flagged")[1] == 0.0);
  CHECK(s.metadata().size() >= 3);

  CHECK_THROWS_AS(dispersive_validation_sweep({}, 0.3, 2), std::invalid_argument);
  CHECK_THROWS_AS(dispersive_validation_sweep({-1.0}, 0.3, 2), std::invalid_argument);
  CHECK_THROWS_AS(dispersive_validation_sweep({10.0}, 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(dispersive_validation_sweep({10.0}, 0.3, 0), std::invalid_argument);
}

TEST_CASE("distillation scan locates the equal-amplitude point for four atoms") {
  // 201 points over [0, 2pi] place lambda_t = pi/4 exactly on the grid
  SweepSeries s = distillation_scan(4, linspace(0.0, 2.0 * kPi, 201));
  const std::vector<double>& p = s.column("p_distill");
  const std::vector<double>& gap = s.column("amplitude_gap");

  double best_gap = 1e9, max_p = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(p[i] == doctest::Approx(distillation_probability(4, s.grid()[i])).epsilon(1e-12));
    best_gap = std::min(best_gap, gap[i]);
    max_p = std::max(max_p, p[i]);
  }
  CHECK(best_gap < 1e-12);
  CHECK(max_p == doctest::Approx(0.75).epsilon(1e-12));

  CHECK_THROWS_AS(distillation_scan(2, linspace(0.0, 1.0, 5)), std::invalid_argument);
}
