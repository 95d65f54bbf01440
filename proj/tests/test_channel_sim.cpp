#include <cmath>
#include <cstring>
#include <random>

#include "channel_sim.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace idnc;
using idnc::test::random_feedback;

namespace {

SimConfig small_config() {
  SimConfig config;
  config.receivers = 6;
  config.packets = 6;
  config.avg_erasure = 0.4;
  config.frames = 20;
  config.seed = 11;
  config.policy = PolicyKind::kMddGreedy;
  return config;
}

SessionState state_from(const FeedbackMatrix& feedback, std::vector<double> probs,
                        std::vector<DelayCount> delays) {
  SessionState state{feedback, {}};
  for (ReceiverId i = 0; i < feedback.receiver_count(); ++i)
    state.receivers.push_back({i, probs[i], delays[i]});
  return state;
}

}  // namespace

TEST_CASE("per-frame erasure draws stay centered on the average") {
  const FrameRng rng(1, 0);
  SUBCASE("degenerate averages leave no room to vary") {
    for (double p : draw_frame_erasures(0.0, 16, rng)) CHECK(p == 0.0);
    for (double p : draw_frame_erasures(1.0, 16, rng)) CHECK(p == 1.0);
  }
  SUBCASE("draws keep inside the spread band") {
    for (double p : draw_frame_erasures(0.5, 64, rng)) {
      CHECK(p >= 0.35);
      CHECK(p <= 0.65);
    }
    for (double p : draw_frame_erasures(0.05, 64, rng)) {
      CHECK(p >= 0.0);
      CHECK(p <= 0.1);
    }
  }
  SUBCASE("the sample mean converges to the average") {
    double total = 0.0;
    std::size_t draws = 0;
    for (std::uint64_t frame = 0; frame < 200; ++frame) {
      for (double p : draw_frame_erasures(0.5, 500, FrameRng(7, frame))) {
        total += p;
        ++draws;
      }
    }
    REQUIRE(draws >= 100000);
    CHECK(std::abs(total / static_cast<double>(draws) - 0.5) < 0.01);
  }
  SUBCASE("out-of-range averages are rejected") {
    CHECK_THROWS_AS(draw_frame_erasures(1.5, 4, rng), std::invalid_argument);
  }
}

TEST_CASE("initial phase populates wants from per-receiver erasures") {
  SimConfig config = small_config();
  const FrameRng rng(3, 0);
  SUBCASE("lossless receivers hold everything") {
    const std::vector<double> probs(config.receivers, 0.0);
    CHECK(run_initial_phase(config, probs, rng).all_satisfied());
  }
  SUBCASE("fully lossy receivers want everything") {
    const std::vector<double> probs(config.receivers, 1.0);
    const auto f = run_initial_phase(config, probs, rng);
    for (ReceiverId i = 0; i < config.receivers; ++i)
      CHECK(f.wants_count(i) == config.packets);
  }
  SUBCASE("row weight is binomial around p * N") {
    config.receivers = 1;
    config.packets = 1000;
    const std::vector<double> probs{0.5};
    const auto f = run_initial_phase(config, probs, rng);
    // 3 sigma = 3 * sqrt(1000 * 0.25) ~ 47.4
    const double weight = static_cast<double>(f.wants_count(0));
    CHECK(weight > 500.0 - 47.5);
    CHECK(weight < 500.0 + 47.5);
  }
}

TEST_CASE("a single coded transmission updates exactly the receivers that hear it") {
  const auto feedback = FeedbackMatrix::from_rows({{1, 0}, {0, 1}});
  const auto graph = IdncGraph::build(feedback);
  REQUIRE(graph.vertex_count() == 2);
  const Clique both = make_clique(graph, std::vector<VertexIndex>{0, 1});

  SUBCASE("everyone erased: nothing moves") {
    auto state = state_from(feedback, {1.0, 1.0}, {0, 0});
    const auto out = transmit_once(state, both, FrameRng(1, 0), 0);
    CHECK(out.delay_increments == std::vector<int>{0, 0});
    CHECK_FALSE(out.max_delay_increased);
    CHECK(state.feedback == feedback);
  }
  SUBCASE("all targeted receivers decode without delay") {
    auto state = state_from(feedback, {0.0, 0.0}, {0, 0});
    const auto out = transmit_once(state, both, FrameRng(1, 0), 0);
    CHECK(out.delay_increments == std::vector<int>{0, 0});
    CHECK_FALSE(out.max_delay_increased);
    CHECK(state.feedback.all_satisfied());
  }
  SUBCASE("an untargeted wanting receiver at the delay top pushes the maximum up") {
    const Clique second_only = make_clique(graph, std::vector<VertexIndex>{1});
    auto state = state_from(feedback, {0.0, 0.0}, {5, 0});
    const auto out = transmit_once(state, second_only, FrameRng(1, 0), 0);
    CHECK(out.delay_increments == std::vector<int>{1, 0});
    CHECK(out.max_delay_increased);
    CHECK(state.receivers[0].cumulative_delay == 6);
    CHECK(state.feedback.wants_empty(1));
  }
  SUBCASE("an empty clique is rejected") {
    auto state = state_from(feedback, {0.0, 0.0}, {0, 0});
    CHECK_THROWS_AS(transmit_once(state, Clique{}, FrameRng(1, 0), 0),
                    std::invalid_argument);
  }
}

TEST_CASE("the reported max-delay event matches an independent recompute") {
  std::mt19937_64 rng(301);
  std::uniform_real_distribution<double> prob_dist(0.1, 0.9);
  for (int iter = 0; iter < 60; ++iter) {
    const auto f = random_feedback(rng, 4, 4);
    auto graph = IdncGraph::build(f);
    if (graph.empty()) continue;
    std::vector<double> probs(4);
    for (auto& p : probs) p = prob_dist(rng);
    std::vector<DelayCount> delays{rng() % 3, rng() % 3, rng() % 3, rng() % 3};
    auto state = state_from(f, probs, delays);

    for (std::uint64_t t = 0; t < 10 && !state.feedback.all_satisfied(); ++t) {
      const auto g = IdncGraph::build(state.feedback);
      const auto clique = select_clique_mdd(g, state.delays(), probs);
      const DelayCount before = state.max_delay();
      const auto out = transmit_once(state, clique, FrameRng(5, iter), t);
      CHECK(out.max_delay_increased == (state.max_delay() > before));
    }
  }
}

TEST_CASE("recovery runs to completion and accounts the deadline afterwards") {
  SUBCASE("a lossless frame needs no recovery at all") {
    SimConfig config = small_config();
    config.avg_erasure = 0.0;
    const auto frame = run_frame(config, 0);
    CHECK(frame.recovery_transmissions == 0);
    CHECK(frame.sum_delay == 0);
    CHECK(frame.served_count == config.receivers);
    CHECK(frame.completed);
  }
  SUBCASE("a lone receiver is always targeted and never delayed") {
    SimConfig config = small_config();
    config.receivers = 1;
    config.avg_erasure = 0.6;
    config.deadline = 0;
    for (std::uint64_t f = 0; f < 25; ++f) {
      const auto frame = run_frame(config, f);
      CHECK(frame.max_delay == 0);
      CHECK(frame.served_count == 1);
      CHECK(frame.completed);
    }
  }
  SUBCASE("the transmission cap flags the frame and unserves its stragglers") {
    SimConfig config = small_config();
    config.receivers = 3;
    config.packets = 3;
    config.avg_erasure = 1.0;  // nobody ever receives
    config.max_transmissions = 3;
    const auto frame = run_frame(config, 0);
    CHECK_FALSE(frame.completed);
    CHECK(frame.recovery_transmissions == 3);
    CHECK(frame.served_count == 0);  // within any deadline, but never finished
  }
}

TEST_CASE("empirical max-delay growth matches the analytic value on a frozen state") {
  std::mt19937_64 rng(302);
  const auto f = random_feedback(rng, 5, 5);
  const auto graph = IdncGraph::build(f);
  REQUIRE_FALSE(graph.empty());
  std::vector<double> probs{0.3, 0.55, 0.7, 0.45, 0.6};
  std::vector<DelayCount> delays{2, 0, 2, 1, 0};

  const auto clique = select_clique_sdd(graph, probs);
  const auto wanting = f.wanting_receivers();
  const auto top = max_delay_receivers(delays);
  const double expected = max_delay_increase_probability(clique, top, wanting, probs);

  const int reps = 4000;
  int hits = 0;
  const FrameRng frame_rng(17, 0);
  for (int rep = 0; rep < reps; ++rep) {
    auto state = state_from(f, probs, delays);
    if (transmit_once(state, clique, frame_rng, static_cast<std::uint64_t>(rep))
            .max_delay_increased)
      ++hits;
  }
  const double freq = static_cast<double>(hits) / reps;
  const double sigma = std::sqrt(expected * (1.0 - expected) / reps);
  CHECK(std::abs(freq - expected) <= 4.0 * sigma + 1e-9);
}

TEST_CASE("experiments aggregate frames deterministically") {
  SUBCASE("one frame: the stats are that frame") {
    SimConfig config = small_config();
    config.frames = 1;
    const auto stats = run_experiment(config);
    const auto frame = run_frame(config, 0);
    CHECK(stats.mean_sum_delay == static_cast<double>(frame.sum_delay));
    CHECK(stats.mean_max_delay == static_cast<double>(frame.max_delay));
    CHECK(stats.mean_recovery_transmissions ==
          static_cast<double>(frame.recovery_transmissions));
  }
  SUBCASE("lossless channels produce all-zero delays and full service") {
    SimConfig config = small_config();
    config.avg_erasure = 0.0;
    const auto stats = run_experiment(config);
    CHECK(stats.mean_sum_delay == 0.0);
    CHECK(stats.mean_max_delay == 0.0);
    CHECK(stats.mean_served_fraction == 1.0);
  }
  SUBCASE("identical configs give bit-identical stats") {
    const auto a = run_experiment(small_config());
    const auto b = run_experiment(small_config());
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  }
  SUBCASE("means stay inside the per-frame extremes") {
    SimConfig config = small_config();
    const auto stats = run_experiment(config);
    double lo = 1e300, hi = -1e300;
    for (std::uint64_t f = 0; f < config.frames; ++f) {
      const auto frame = run_frame(config, f);
      lo = std::min(lo, static_cast<double>(frame.sum_delay));
      hi = std::max(hi, static_cast<double>(frame.sum_delay));
    }
    CHECK(stats.mean_sum_delay >= lo);
    CHECK(stats.mean_sum_delay <= hi);
  }
  SUBCASE("a longer deadline never serves fewer receivers") {
    SimConfig config = small_config();
    config.avg_erasure = 0.5;
    double previous = -1.0;
    for (DelayCount deadline : {DelayCount{0}, DelayCount{2}, DelayCount{5},
                                DelayCount{12}, kNoDeadline}) {
      config.deadline = deadline;
      const auto stats = run_experiment(config);
      CHECK(stats.mean_served_fraction >= previous);
      previous = stats.mean_served_fraction;
    }
  }
}

TEST_CASE("configuration validation") {
  SimConfig config = small_config();
  SUBCASE("zero receivers") {
    config.receivers = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  }
  SUBCASE("erasure probability out of range") {
    config.avg_erasure = 1.5;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  }
  SUBCASE("cap below the packet count") {
    config.max_transmissions = 2;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  }
  SUBCASE("exact policies refuse configurations beyond the enumeration bound") {
    config.policy = PolicyKind::kMddExact;
    CHECK_THROWS_AS(config.validate(), ResourceLimitError);  // 6 x 6 > 25
    config.receivers = 5;
    config.packets = 5;
    CHECK_NOTHROW(config.validate());
  }
  SUBCASE("the default cap scales with the frame size") {
    CHECK(config.effective_max_transmissions() == 100ull * config.packets);
  }
}

TEST_CASE("exact policies drive the simulation within the bound") {
  SimConfig config;
  config.receivers = 4;
  config.packets = 4;
  config.avg_erasure = 0.5;
  config.frames = 10;
  config.seed = 23;
  config.policy = PolicyKind::kMddExact;
  const auto exact = run_experiment(config);
  CHECK(exact.frame_count == 10);
  config.policy = PolicyKind::kSddExact;
  CHECK(run_experiment(config).frame_count == 10);
}

TEST_CASE("wants and has stay conserved through whole frames") {
  std::mt19937_64 rng(303);
  for (int iter = 0; iter < 15; ++iter) {
    SimConfig config = small_config();
    config.seed = rng();
    const FrameRng frame_rng(config.seed, 0);
    const auto probs = draw_frame_erasures(config.avg_erasure, config.receivers, frame_rng);
    auto state = state_from(run_initial_phase(config, probs, frame_rng),
                            probs, std::vector<DelayCount>(config.receivers, 0));
    std::uint64_t t = 0;
    while (!state.feedback.all_satisfied() && t < 200) {
      const auto g = IdncGraph::build(state.feedback);
      const auto clique = select_clique_mdd(g, state.delays(), probs);
      transmit_once(state, clique, frame_rng, t++);
      for (ReceiverId i = 0; i < config.receivers; ++i)
        CHECK(state.feedback.wants_count(i) + state.feedback.has_of(i).size() ==
              config.packets);
    }
    CHECK(state.feedback.all_satisfied());
  }
}
