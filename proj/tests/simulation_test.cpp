#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "trailerfuzz/simulation.hpp"

using namespace trailerfuzz;

namespace {

Scenario make(double x, double y, double alpha, double beta, Mode mode = Mode::cascade) {
  Scenario s;
  s.initial = {x, y, alpha, beta};
  s.mode = mode;
  return s;
}

const PlantState kRightHigh{80, 180, 60, 30};
const PlantState kLeftHigh{-40, 170, 20, 15};
const PlantState kLeftMid{-60, 120, 30, 0};

void expect_consistent(const Trajectory& t, const Scenario& s) {
  ASSERT_FALSE(t.samples.empty());
  EXPECT_EQ(t.samples.front().state, s.initial);
  EXPECT_EQ(t.outcome.steps + 1, t.samples.size());
  EXPECT_EQ(t.diagnostics.size(), t.outcome.steps);
  EXPECT_LE(t.outcome.steps, s.max_steps);
  for (std::size_t i = 0; i < t.samples.size(); ++i) EXPECT_EQ(t.samples[i].step, i);
}

}  // namespace

TEST(Run, AlignedStartBacksStraight) {
  const Scenario s = make(0, 50, 0, 0);
  const RunResult r = run(s);
  ASSERT_TRUE(r.cascade);
  EXPECT_FALSE(r.reference);
  const Trajectory& t = *r.cascade;
  expect_consistent(t, s);
  EXPECT_EQ(t.outcome.kind, OutcomeKind::docked);
  EXPECT_EQ(t.outcome.steps, 49u);
  for (const Sample& smp : t.samples) {
    EXPECT_EQ(smp.state.x, 0.0);
    EXPECT_EQ(smp.state.alpha, 0.0);
    EXPECT_EQ(smp.theta, 0.0);
  }
  EXPECT_EQ(t.outcome.final_state.y, 1.0);
}

TEST(Run, DemoScenariosDockInBothModes) {
  for (const PlantState& p : {kRightHigh, kLeftHigh, kLeftMid}) {
    Scenario s = make(p.x, p.y, p.alpha, p.beta, Mode::both);
    const RunResult r = run(s);
    ASSERT_TRUE(r.cascade && r.reference);
    expect_consistent(*r.cascade, s);
    expect_consistent(*r.reference, s);
    EXPECT_EQ(r.cascade->outcome.kind, OutcomeKind::docked) << p.x << "," << p.y;
    EXPECT_EQ(r.reference->outcome.kind, OutcomeKind::docked) << p.x << "," << p.y;
    EXPECT_TRUE(r.all_docked());
    EXPECT_TRUE(dock_check(r.cascade->outcome.final_state, s.tolerance));
  }
}

TEST(Run, ShallowStartFails) {
  const RunResult r = run(make(80, 20, 60, 30));
  const OutcomeKind k = r.cascade->outcome.kind;
  EXPECT_TRUE(k == OutcomeKind::insufficient_space || k == OutcomeKind::timeout) << to_string(k);
  EXPECT_FALSE(r.all_docked());
}

TEST(Run, InvalidScenariosRejected) {
  EXPECT_THROW(run(make(0, -5, 0, 0)), UsageError);
  EXPECT_THROW(run(make(150, 50, 0, 0)), UsageError);
  Scenario s = make(0, 50, 0, 0);
  s.max_steps = 0;
  EXPECT_THROW(run(s), UsageError);
  EXPECT_THROW(run_mode(make(0, 50, 0, 0), Mode::both), UsageError);
}

TEST(Run, TimeoutRespectsStepLimit) {
  Scenario s = make(kRightHigh.x, kRightHigh.y, kRightHigh.alpha, kRightHigh.beta);
  s.max_steps = 7;
  const Trajectory t = *run(s).cascade;
  expect_consistent(t, s);
  EXPECT_EQ(t.outcome.kind, OutcomeKind::timeout);
  EXPECT_EQ(t.outcome.steps, 7u);
}

TEST(Run, StartOnDockLineClassifiedImmediately) {
  const Trajectory t = *run(make(30, 0, 40, 0)).cascade;
  EXPECT_EQ(t.outcome.kind, OutcomeKind::insufficient_space);
  EXPECT_EQ(t.outcome.steps, 0u);
  EXPECT_EQ(t.samples.size(), 1u);
}

TEST(Run, ControllerErrorBecomesErrorOutcome) {
  // A beta that is non-finite passes no validation, so bypass run() and use run_mode directly.
  Scenario s = make(0, 50, 0, 0);
  s.initial.beta = NAN;
  const Trajectory t = run_mode(s, Mode::cascade);
  EXPECT_EQ(t.outcome.kind, OutcomeKind::error);
  EXPECT_FALSE(t.outcome.message.empty());
  EXPECT_EQ(t.outcome.steps + 1, t.samples.size());
}

TEST(Run, Deterministic) {
  const Scenario s = make(kLeftHigh.x, kLeftHigh.y, kLeftHigh.alpha, kLeftHigh.beta, Mode::both);
  const RunResult a = run(s), b = run(s);
  for (auto [ta, tb] : {std::pair{&*a.cascade, &*b.cascade}, std::pair{&*a.reference, &*b.reference}}) {
    ASSERT_EQ(ta->samples.size(), tb->samples.size());
    for (std::size_t i = 0; i < ta->samples.size(); ++i) {
      const Sample& p = ta->samples[i];
      const Sample& q = tb->samples[i];
      ASSERT_EQ(p.state, q.state);
      ASSERT_EQ(std::bit_cast<std::uint64_t>(p.theta), std::bit_cast<std::uint64_t>(q.theta));
      ASSERT_EQ(std::bit_cast<std::uint64_t>(p.beta_prime), std::bit_cast<std::uint64_t>(q.beta_prime));
    }
  }
}

TEST(Run, MirrorEquivariance) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> xs(-90, 90), ys(20, 200), as(-120, 120), bs(-30, 30);
  for (int trial = 0; trial < 20; ++trial) {
    const Scenario s = make(xs(rng), ys(rng), as(rng), bs(rng), Mode::both);
    const RunResult a = run(s), b = run(s.mirrored());
    for (auto [ta, tb] : {std::pair{&*a.cascade, &*b.cascade}, std::pair{&*a.reference, &*b.reference}}) {
      ASSERT_EQ(ta->outcome.kind, tb->outcome.kind);
      ASSERT_EQ(ta->samples.size(), tb->samples.size());
      for (std::size_t i = 0; i < ta->samples.size(); ++i) {
        const PlantState m = ta->samples[i].state.mirrored();
        const PlantState& q = tb->samples[i].state;
        ASSERT_NEAR(m.x, q.x, 1e-9);
        ASSERT_NEAR(m.y, q.y, 1e-9);
        ASSERT_NEAR(wrap_degrees(m.alpha - q.alpha), 0.0, 1e-9);
        ASSERT_NEAR(m.beta, q.beta, 1e-9);
        ASSERT_NEAR(-ta->samples[i].theta, tb->samples[i].theta, 1e-9);
      }
    }
  }
}

TEST(Run, ReferenceModeTracksCommand) {
  const Scenario s = make(kRightHigh.x, kRightHigh.y, kRightHigh.alpha, kRightHigh.beta, Mode::reference);
  const Trajectory& t = *run(s).reference;
  for (std::size_t i = 0; i + 1 < t.samples.size(); ++i) {
    ASSERT_EQ(t.samples[i + 1].state.beta, t.samples[i].beta_prime) << i;
  }
}

TEST(Run, CascadeReducesCabError) {
  for (const PlantState& p : {kRightHigh, kLeftHigh, kLeftMid}) {
    const Trajectory& t = *run(make(p.x, p.y, p.alpha, p.beta)).cascade;
    ASSERT_GE(t.samples.size(), 2u);
    // Last sample where a control was applied.
    const double last = std::abs(t.samples[t.samples.size() - 2].gamma);
    EXPECT_LE(last, std::abs(t.samples.front().gamma)) << p.x;
  }
}

TEST(Run, EveryRunTerminates) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> xs(-100, 100), ys(0, 250), as(-180, 180), bs(-30, 30);
  for (int i = 0; i < 100; ++i) {
    Scenario s = make(xs(rng), ys(rng), as(rng), bs(rng), Mode::both);
    s.max_steps = 400;
    const RunResult r = run(s);
    for (const Trajectory* t : r.trajectories()) {
      ASSERT_LE(t->outcome.steps, s.max_steps);
      ASSERT_NE(t->outcome.kind, OutcomeKind::error) << t->outcome.message;
    }
  }
}

TEST(Convergence, IdenticalTrajectoriesGiveZero) {
  const Trajectory t = *run(make(kLeftMid.x, kLeftMid.y, kLeftMid.alpha, kLeftMid.beta)).cascade;
  const Convergence c = convergence_metric(t, t);
  EXPECT_EQ(c.distance.size(), t.samples.size());
  for (double d : c.distance) EXPECT_EQ(d, 0.0);
  EXPECT_EQ(c.tail_mean, 0.0);
}

TEST(Convergence, AlignedModesCoincide) {
  const RunResult r = run(make(0, 50, 0, 0, Mode::both));
  const Convergence c = convergence_metric(*r.cascade, *r.reference);
  for (double d : c.distance) EXPECT_EQ(d, 0.0);
}

TEST(Convergence, TruncatesAndRejectsEmpty) {
  const RunResult r = run(make(kRightHigh.x, kRightHigh.y, kRightHigh.alpha, kRightHigh.beta, Mode::both));
  const Convergence c = convergence_metric(*r.cascade, *r.reference);
  EXPECT_EQ(c.distance.size(), std::min(r.cascade->samples.size(), r.reference->samples.size()));
  EXPECT_EQ(c.distance.front(), 0.0);
  EXPECT_THROW(convergence_metric(Trajectory{}, *r.cascade), UsageError);
}

TEST(Convergence, WindowArithmetic) {
  Convergence c;
  for (int i = 0; i < 25; ++i) c.distance.push_back(i < 5 ? 100.0 : 25.0 - i);
  // n = 25: early window [5, 7) -> max 20; late window = last 2 -> (2 + 1) / 2.
  const ConvergenceWindows w = convergence_windows(c);
  EXPECT_EQ(w.early_max, 20.0);
  EXPECT_EQ(w.late_mean, 1.5);
  c.distance.resize(6);
  EXPECT_THROW(convergence_windows(c), UsageError);
}

TEST(Sweep, SingleCellAtSecondScenario) {
  const SweepGrid g{{-40, -40, 1}, {170, 170, 1}, {20, 20, 1}, {15, 15, 1}};
  const SweepReport r = sweep(g, Scenario{});
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.cells[0].kind, OutcomeKind::docked);
  EXPECT_EQ(r.success_ratio, 1.0);
}

TEST(Sweep, ZeroHeightGridNeverDocksMisaligned) {
  // Even counts keep x = 0 and alpha = 0 off the grid.
  const SweepGrid g{{-80, 80, 4}, {0, 0, 1}, {-60, 60, 4}, {-30, 30, 3}};
  const SweepReport r = sweep(g, Scenario{});
  ASSERT_EQ(r.cells.size(), 48u);
  for (const SweepCell& c : r.cells) {
    EXPECT_EQ(c.steps, 0u);
    EXPECT_EQ(c.kind, OutcomeKind::insufficient_space);
  }
  EXPECT_EQ(r.success_ratio, 0.0);
  EXPECT_EQ(r.counts.at(OutcomeKind::insufficient_space), 48u);

  // An aligned cell on the dock line is already docked.
  const SweepReport aligned = sweep({{0, 0, 1}, {0, 0, 1}, {0, 0, 1}, {-30, 30, 3}}, Scenario{});
  for (const SweepCell& c : aligned.cells) EXPECT_EQ(c.kind, OutcomeKind::docked);
}

TEST(Sweep, MirroredGridMirrorsOutcomes) {
  const SweepGrid g{{-90, 70, 4}, {40, 200, 3}, {-150, 110, 5}, {-30, 20, 3}};
  const SweepGrid m = g.mirrored();
  const SweepReport a = sweep(g, Scenario{}, default_controller(), 4);
  const SweepReport b = sweep(m, Scenario{}, default_controller(), 3);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_EQ(b.cells[i].initial, a.cells[i].initial.mirrored());
    EXPECT_EQ(a.cells[i].kind, b.cells[i].kind) << i;
    EXPECT_EQ(a.cells[i].steps, b.cells[i].steps) << i;
  }
  EXPECT_EQ(a.success_ratio, b.success_ratio);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  const SweepGrid g{{-60, 60, 3}, {60, 180, 3}, {-90, 90, 3}, {0, 0, 1}};
  const SweepReport one = sweep(g, Scenario{}, default_controller(), 1);
  const SweepReport many = sweep(g, Scenario{}, default_controller(), 8);
  for (std::size_t i = 0; i < one.cells.size(); ++i) {
    EXPECT_EQ(one.cells[i].kind, many.cells[i].kind);
    EXPECT_EQ(one.cells[i].steps, many.cells[i].steps);
  }
}

TEST(Sweep, InvalidCellsBecomeErrors) {
  const SweepGrid g{{90, 130, 2}, {50, 50, 1}, {0, 0, 1}, {0, 0, 1}};
  const SweepReport r = sweep(g, Scenario{});
  EXPECT_NE(r.cells[0].kind, OutcomeKind::error);
  EXPECT_EQ(r.cells[1].kind, OutcomeKind::error);
  EXPECT_FALSE(r.cells[1].message.empty());
}

TEST(Sweep, EmptyAxisIsUsageError) {
  const SweepGrid g{{0, 0, 0}, {50, 50, 1}, {0, 0, 1}, {0, 0, 1}};
  EXPECT_THROW(sweep(g, Scenario{}), UsageError);
}

TEST(Axis, EndpointsAndMirror) {
  const Axis a{-30, 50, 5};
  EXPECT_EQ(a.at(0), -30.0);
  EXPECT_EQ(a.at(4), 50.0);
  EXPECT_EQ(a.at(2), 10.0);
  const Axis m = a.mirrored();
  for (std::size_t i = 0; i < a.count; ++i) EXPECT_EQ(m.at(i), -a.at(i));
}

TEST(Run, CommandClampSwitch) {
  // With a tighter beta_max the trailer controller's commands leave the range.
  Scenario s = make(kRightHigh.x, kRightHigh.y, kRightHigh.alpha, 10, Mode::reference);
  s.params.beta_max = 10;
  const Trajectory clamped = *run(s).reference;
  EXPECT_NE(clamped.outcome.kind, OutcomeKind::error);
  for (const Sample& smp : clamped.samples) ASSERT_LE(std::abs(smp.state.beta), 10.0);

  s.params.clamp_command = false;
  const Trajectory raw = *run(s).reference;
  EXPECT_EQ(raw.outcome.kind, OutcomeKind::error);
  EXPECT_NE(raw.outcome.message.find("beta_max"), std::string::npos) << raw.outcome.message;
}

TEST(Run, PlantClampSwitch) {
  Scenario s = make(kRightHigh.x, kRightHigh.y, kRightHigh.alpha, kRightHigh.beta);
  s.params.clamp_beta = false;
  const Trajectory t = *run(s).cascade;
  EXPECT_NE(t.outcome.kind, OutcomeKind::error);
  for (std::size_t i = 0; i + 1 < t.samples.size(); ++i) {
    ASSERT_EQ(t.samples[i + 1].state.beta, t.diagnostics[i].unclamped_beta);
  }
}
