#include <algorithm>

#include <gtest/gtest.h>

#include "lemma3_fixtures.hpp"
#include "monoculus/engine.hpp"
#include "monoculus/metrics.hpp"
#include "support.hpp"

namespace monoculus {
namespace {

SimulationParams base(AlgorithmId algo, SchedulerModel sched, std::size_t n, std::uint64_t seed, double side = 30.0) {
  SimulationParams p;
  p.algorithm = algo;
  p.scheduler = sched;
  p.n = n;
  p.side = side;
  p.seed = seed;
  return p;
}

constexpr SchedulerModel kAllSchedulers[] = {SchedulerModel::FSync, SchedulerModel::SSync, SchedulerModel::Async};

TEST(Params, Validation) {
  SimulationParams p;
  EXPECT_NO_THROW(p.validate());
  p.c = 1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.algorithm = AlgorithmId::ConvergeQuadrant;
  EXPECT_NO_THROW(p.validate());  // c is irrelevant to OLA
  p = {};
  p.n = 1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.dim = 3;
  p.algorithm = AlgorithmId::NaiveMedian;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.ssync_activation = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.initial_memory = std::vector<std::uint32_t>{0, 0};
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_EQ(SimulationParams{}.window(), 50u);
}

TEST(Predicate, Boundaries) {
  SimulationParams ld;
  EXPECT_TRUE((converged_predicate(Configuration({Point{0, 0}, Point{4, 0}}), ld)));  // exactly 2c
  EXPECT_FALSE((converged_predicate(Configuration({Point{0, 0}, Point{4.001, 0}}), ld)));
  SimulationParams ola;
  ola.algorithm = AlgorithmId::ConvergeQuadrant;
  EXPECT_TRUE((converged_predicate(Configuration({Point{0, 0}, Point{2, 1.5}}), ola)));
  EXPECT_FALSE((converged_predicate(Configuration({Point{0, 0}, Point{2.1, 0}}), ola)));
}

TEST(Run, TwoRobotsOnALine) {
  SimulationParams p;
  p.initial = Configuration({Point{0, 0}, Point{10, 0}});
  const RunResult r = run(p);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.rounds, 3u);
  ASSERT_GE(r.trace.size(), 2u);
  EXPECT_EQ(r.trace[0].after, (Point{1, 0}));
  EXPECT_EQ(r.trace[1].after, (Point{9, 0}));
}

TEST(Run, AlreadyConvergedCostsNothing) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    std::vector<Point> pts;
    const std::size_t n = 2 + rng.uniform_index(9);
    while (pts.size() < n) {
      const Point q{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      if (norm(q) <= 2.0) pts.push_back(q);  // disc of radius c
    }
    for (SchedulerModel s : kAllSchedulers) {
      SimulationParams p;
      p.scheduler = s;
      p.seed = seed;
      p.initial = Configuration(pts);
      const RunResult r = run(p);
      EXPECT_TRUE(r.converged);
      EXPECT_EQ(r.rounds, 0u);
      EXPECT_EQ(r.work, 0u);
    }
  }
}

TEST(Run, NearbyNonCollinearRobotsNeverMove) {
  SimulationParams p;
  p.initial = Configuration({Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{0.4, 0.3}});
  const RunResult r = run(p);
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(r.quiescent);
  EXPECT_EQ(r.work_total, 0u);
}

TEST(Run, AllCollocatedIsConverged) {
  for (AlgorithmId a : {AlgorithmId::ConvergeLocality, AlgorithmId::ConvergeQuadrant,
                        AlgorithmId::ConvergeQuadrantTermination, AlgorithmId::NaiveMedian}) {
    SimulationParams p;
    p.algorithm = a;
    p.initial = Configuration({Point{3, 3}, Point{3, 3}, Point{3, 3}});
    const RunResult r = run(p);
    EXPECT_TRUE(r.converged) << cli_name(a);
    EXPECT_EQ(r.work_total, 0u);
  }
}

TEST(Run, DeterministicTraces) {
  for (AlgorithmId a : {AlgorithmId::ConvergeLocality, AlgorithmId::ConvergeQuadrant,
                        AlgorithmId::ConvergeQuadrantTermination}) {
    for (SchedulerModel s : kAllSchedulers) {
      const auto p = base(a, s, 12, 77);
      const RunResult r1 = run(p), r2 = run(p);
      EXPECT_EQ(r1.trace, r2.trace);
      EXPECT_EQ(r1.final_config, r2.final_config);
      EXPECT_EQ(r1.rounds, r2.rounds);
      auto q = p;
      q.seed = 78;
      EXPECT_NE(run(q).trace, r1.trace);
    }
  }
}

TEST(Run, FastAndReferenceSensingAgree) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (AlgorithmId a : {AlgorithmId::ConvergeQuadrant, AlgorithmId::ConvergeQuadrantTermination}) {
      for (SchedulerModel s : kAllSchedulers) {
        auto p = base(a, s, 10, seed);
        const RunResult fast = run(p);
        p.reference_sensing = true;
        const RunResult ref = run(p);
        EXPECT_EQ(fast.trace, ref.trace);
        EXPECT_EQ(fast.memories, ref.memories);
      }
    }
  }
}

TEST(Run, SsyncWithEveryoneActiveIsFsync) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (AlgorithmId a : {AlgorithmId::ConvergeLocality, AlgorithmId::ConvergeQuadrant}) {
      auto p = base(a, SchedulerModel::FSync, 15, seed);
      const RunResult f = run(p);
      p.scheduler = SchedulerModel::SSync;
      p.ssync_activation = 1.0;
      const RunResult s = run(p);
      EXPECT_EQ(f.trace, s.trace);
      EXPECT_EQ(f.final_config, s.final_config);
    }
  }
}

TEST(Run, WorkMatchesTraceMoves) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (AlgorithmId a : {AlgorithmId::ConvergeLocality, AlgorithmId::ConvergeQuadrant,
                          AlgorithmId::ConvergeQuadrantTermination, AlgorithmId::CentroidOracle}) {
      for (SchedulerModel s : kAllSchedulers) {
        const RunResult r = run(base(a, s, 10, seed));
        std::uint64_t moves = 0, before_convergence = 0, cum = 0;
        for (const auto& rec : r.trace) {
          const bool displaced = !(rec.before == rec.after);
          if (rec.phase == TracePhase::Look) EXPECT_FALSE(displaced);
          if (displaced) {
            ++moves;
            if (rec.round < r.rounds) ++before_convergence;
          }
          cum += displaced ? 1 : 0;
          EXPECT_EQ(rec.work_cum, cum);
          if (displaced) EXPECT_NEAR(euclidean_distance(rec.before, rec.after), 1.0, 1e-12);
        }
        EXPECT_EQ(moves, r.work_total);
        EXPECT_EQ(before_convergence, r.work);
      }
    }
  }
}

TEST(Run, ConvergesUnderEverySchedulerIn2DAnd3D) {
  for (std::size_t dim : {2u, 3u}) {
    for (AlgorithmId a : {AlgorithmId::ConvergeLocality, AlgorithmId::ConvergeQuadrant}) {
      for (SchedulerModel s : kAllSchedulers) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
          auto p = base(a, s, 12, seed);
          p.dim = dim;
          const RunResult r = run(p);
          EXPECT_TRUE(r.converged) << cli_name(a) << ' ' << cli_name(s) << " d=" << dim;
          EXPECT_FALSE(r.cap_reached);
          EXPECT_TRUE(converged_predicate(r.final_config, p));
        }
      }
    }
  }
}

TEST(Run, EventCapIsAResultNotAnError) {
  auto p = base(AlgorithmId::ConvergeLocality, SchedulerModel::FSync, 20, 1, 100.0);
  p.max_events = 40;
  const RunResult r = run(p);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(r.cap_reached);
  EXPECT_EQ(r.events, 40u);
}

TEST(Invariants, LdHullNeverGrowsUnderSynchronousSchedules) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (SchedulerModel s : {SchedulerModel::FSync, SchedulerModel::SSync}) {
      std::size_t violations = 0;
      RunHooks hooks;
      hooks.on_step = [&](const StepView& v) {
        if (v.converged_before) return;
        if (!hull_contains(convex_hull(v.before.positions()), convex_hull(v.after.positions()))) ++violations;
      };
      run(base(AlgorithmId::ConvergeLocality, s, 15, seed), hooks);
      EXPECT_EQ(violations, 0u);
    }
  }
}

TEST(Invariants, AsyncMovesStayInsideTheHullSeenAtLook) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RunResult r = run(base(AlgorithmId::ConvergeLocality, SchedulerModel::Async, 12, seed));
    std::vector<Point> now(r.initial.positions().begin(), r.initial.positions().end());
    std::vector<ConvexHull2D> seen(now.size());
    for (const auto& rec : r.trace) {
      if (rec.phase == TracePhase::Look) {
        seen[rec.robot] = convex_hull(now);
      } else {
        now[rec.robot] = rec.after;
        EXPECT_LE(distance_to_hull(seen[rec.robot], rec.after), 1e-9);
      }
    }
  }
}

TEST(Invariants, PerimeterSeriesIsMonotoneForSynchronousLd) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RunResult r = run(base(AlgorithmId::ConvergeLocality, SchedulerModel::FSync, 20, seed, 60.0));
    for (std::size_t i = 1; i < r.hull_perimeters.size() && i <= r.rounds; ++i) {
      EXPECT_LE(r.hull_perimeters[i], r.hull_perimeters[i - 1] + 1e-9);
    }
  }
}

TEST(Invariants, QuiescentLdHasNoFarVisiblePair) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (SchedulerModel s : kAllSchedulers) {
      const auto p = base(AlgorithmId::ConvergeLocality, s, 10, seed);
      const RunResult r = run(p);
      if (!r.quiescent) continue;
      for (std::size_t i = 0; i < r.final_config.size(); ++i) {
        for (const auto& v : visible_set(r.final_config, i)) EXPECT_LE(v.distance, p.c);
      }
    }
  }
}

TEST(Invariants, OlaBoxExtentsShrinkUntilSmall) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (SchedulerModel s : {SchedulerModel::FSync, SchedulerModel::SSync}) {
      const auto p = base(AlgorithmId::ConvergeQuadrant, s, 12, seed);
      RunHooks hooks;
      hooks.on_step = [&](const StepView& v) {
        const BoundingBox a = bounding_box(v.before.positions()), b = bounding_box(v.after.positions());
        for (std::size_t k = 0; k < 2; ++k) {
          if (a.extent(k) > 2.0 * p.b) {
            EXPECT_LE(b.extent(k), a.extent(k) + 1e-12);
          } else {
            EXPECT_LE(b.extent(k), 2.0 * p.b + 1e-12);
          }
        }
      };
      run(p, hooks);
    }
  }
}

TEST(Invariants, OlaPredicateNeverFlipsBack) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto p = base(AlgorithmId::ConvergeQuadrant, SchedulerModel::FSync, 10, seed);
    const RunResult first = run(p);
    ASSERT_TRUE(first.converged);
    p.stability_window = 10 * std::max<std::uint64_t>(first.rounds, 1);
    bool held = false, flipped = false;
    RunHooks hooks;
    hooks.on_step = [&](const StepView& v) {
      const bool now = converged_predicate(v.after, p);
      if (held && !now) flipped = true;
      held = held || now;
    };
    const RunResult r = run(p, hooks);
    EXPECT_TRUE(r.converged);
    EXPECT_FALSE(flipped);
    EXPECT_EQ(r.rounds, first.rounds);
  }
}

TEST(Invariants, PerimeterDropOnCornerFixtures) {
  for (std::size_t n : {4u, 8u, 16u}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto step = testing::one_fsync_round(testing::sharpest_corner_fixture(n, seed));
      EXPECT_GE(step.before - step.after, lemma3_bound(n, 1.0) - 1e-9) << "n=" << n << " seed=" << seed;
    }
  }
}

TEST(Termination, StopsEveryRobotItClassifiesAsDone) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (SchedulerModel s : kAllSchedulers) {
      const auto p = base(AlgorithmId::ConvergeQuadrantTermination, s, 10, seed);
      const RunResult r = run(p);
      EXPECT_TRUE(r.quiescent);
      EXPECT_TRUE(converged_predicate(r.final_config, p));
      for (std::size_t i = 0; i < r.memories.size(); ++i) {
        if (r.memories[i].all_set()) continue;
        // A robot that has not closed every axis is parked: inner, or on a closed boundary.
        const auto d = look_compute(r.final_config, i, {r.frames[i], r.memories[i]}, p);
        EXPECT_FALSE(d.decision.is_move());
      }
    }
  }
}

TEST(Termination, MemoryIsMonotoneAlongARun) {
  auto p = base(AlgorithmId::ConvergeQuadrantTermination, SchedulerModel::FSync, 8, 4);
  p.max_events = 8;
  std::vector<RobotMemory> prev(8, RobotMemory(2));
  for (int k = 1; k < 40; ++k) {
    p.max_events = 8 * static_cast<std::uint64_t>(k);
    const RunResult r = run(p);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_TRUE(r.memories[i].dominates(prev[i]));
    prev = r.memories;
  }
}

TEST(Perturbation, ZeroMagnitudeIsIdentity) {
  Rng rng(1);
  const auto c = testing::random_config(rng, 10);
  EXPECT_EQ(perturb(c, 5, 0.0), c);
  const auto moved = perturb(c, 5, 0.5);
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_LE(euclidean_distance(c.position(i), moved.position(i)), 0.5);
  }
  EXPECT_NE(moved, c);
  EXPECT_THROW(perturb(c, 5, -1.0), std::invalid_argument);
}

TEST(Perturbation, LdAndOlaRecoverFromMidRunPerturbation) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    for (AlgorithmId a : {AlgorithmId::ConvergeLocality, AlgorithmId::ConvergeQuadrant}) {
      for (SchedulerModel s : kAllSchedulers) {
        auto p = base(a, s, 12, seed);
        p.perturbation = PerturbationSpec{rng.uniform_index(400), rng.uniform(0.5, 20.0), seed, false};
        const RunResult r = run(p);
        EXPECT_TRUE(r.converged) << cli_name(a) << ' ' << cli_name(s) << " seed " << seed;
      }
    }
  }
}

TEST(Perturbation, AllOnesMemoryStopsEveryoneAndIsReported) {
  auto p = base(AlgorithmId::ConvergeQuadrantTermination, SchedulerModel::FSync, 10, 2);
  p.initial_memory = std::vector<std::uint32_t>(10, 0b1111);
  const RunResult r = run(p);
  EXPECT_TRUE(r.all_stopped);
  EXPECT_TRUE(r.quiescent);
  EXPECT_EQ(r.work_total, 0u);
  EXPECT_FALSE(r.converged);  // stopped far apart
}

TEST(Perturbation, CorruptedMemoryRunsStillEnd) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto p = base(AlgorithmId::ConvergeQuadrantTermination, SchedulerModel::FSync, 10, seed);
    p.perturbation = PerturbationSpec{30, 1.0, seed, true};
    const RunResult r = run(p);
    EXPECT_TRUE(r.quiescent);
    EXPECT_FALSE(r.cap_reached);
  }
}

TEST(Memory, CorruptionIsSeeded) {
  std::vector<RobotMemory> a(5, RobotMemory(2)), b(5, RobotMemory(2));
  corrupt_memory(a, 3);
  corrupt_memory(b, 3);
  EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace monoculus
