#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <thread>
#include <vector>

#include "generators.hpp"
#include "ranslice/rl/checkpoint.hpp"
#include "ranslice/rl/learner.hpp"
#include "ranslice/rl/policy.hpp"

namespace ranslice::rl {
namespace {

LearnerConfig small_config()
{
  LearnerConfig c;
  c.batch_size = 16;
  c.target_sync_period = 10;
  c.learning_starts = 32;
  c.optimizer = {OptimizerKind::Adam, 1e-2};
  return c;
}

// Contextual bandit: the best action is 0 when the first feature is below 0.5, else 3.
double bandit_reward(const std::vector<double>& s, int a)
{
  const int best = s[0] < 0.5 ? 0 : 3;
  return a == best ? 1.0 : 0.0;
}

TEST(ParameterServer, PublishesSnapshots)
{
  QNetwork net({2, 2});
  ParameterServer server(net);
  const auto first = server.snapshot();
  EXPECT_EQ(server.version(), 0u);
  net.parameters()[0] = 4.0;
  server.publish(net);
  EXPECT_EQ(server.version(), 1u);
  EXPECT_DOUBLE_EQ(first->parameters()[0], 0.0);
  EXPECT_DOUBLE_EQ(server.snapshot()->parameters()[0], 4.0);
}

TEST(Learner, WaitsForLearningStarts)
{
  Rng rng = make_stream(91, 0);
  ReplayMemory mem(100);
  QNetwork net({3, 8, 4}, rng);
  ParameterServer server(net);
  Learner learner(net, small_config(), mem, server, make_stream(91, 1));
  for (int i = 0; i < 31; ++i) {
    Experience e;
    e.state = {0, 0, 0};
    e.next_state = e.state;
    (void)mem.add(e);
  }
  EXPECT_FALSE(learner.step().has_value());
  Experience e;
  e.state = {0, 0, 0};
  e.next_state = e.state;
  (void)mem.add(e);
  EXPECT_TRUE(learner.step().has_value());
  EXPECT_EQ(learner.train_steps(), 1u);
  EXPECT_EQ(server.version(), 1u);
}

TEST(Learner, TargetSyncPeriod)
{
  Rng rng = make_stream(92, 0);
  ReplayMemory mem(100);
  QNetwork net({3, 8, 4}, rng);
  ParameterServer server(net);
  Learner learner(net, small_config(), mem, server, make_stream(92, 1));
  for (int i = 0; i < 64; ++i) {
    Experience e;
    e.state = testgen::random_vector(rng, 3, 0, 1);
    e.action = i % 4;
    e.reward = 1.0;
    e.next_state = e.state;
    e.discount = 0.9;
    (void)mem.add(e);
  }
  for (int i = 0; i < 25; ++i) {
    (void)learner.step();
  }
  EXPECT_EQ(learner.target_syncs(), 2u);
  EXPECT_NE(learner.online().parameters(), learner.target().parameters());
  for (int i = 0; i < 5; ++i) {
    (void)learner.step();
  }
  EXPECT_EQ(learner.online().parameters(), learner.target().parameters());
}

TEST(Learner, ActorsAndLearnerSolveABandit)
{
  Rng init = make_stream(93, 0);
  ReplayMemory mem(5'000);
  QNetwork net({3, 16, 4}, init);
  ParameterServer server(net);
  Learner learner(net, small_config(), mem, server, make_stream(93, 1));

  std::atomic<bool> stop{false};
  std::vector<std::jthread> actors;
  for (int actor = 0; actor < 3; ++actor) {
    actors.emplace_back([&, actor] {
      Rng rng = make_stream(93, 10 + actor);
      while (!stop.load()) {
        const auto policy = server.snapshot();
        for (int i = 0; i < 32; ++i) {
          Experience e;
          e.state = testgen::random_vector(rng, 3, 0, 1);
          e.action = select_action(*policy, e.state, actor_epsilon(0.8, actor + 1), rng);
          e.reward = bandit_reward(e.state, e.action);
          e.next_state = e.state;
          e.discount = 0.0;
          e.source = actor;
          (void)mem.add(std::move(e));
        }
        std::this_thread::yield();
      }
    });
  }
  while (learner.train_steps() < 3'000) {
    if (!learner.step()) {
      std::this_thread::yield();
    }
  }
  stop = true;
  actors.clear();
  EXPECT_FALSE(learner.diverged());

  Rng eval = make_stream(93, 99);
  int correct = 0;
  for (int i = 0; i < 500; ++i) {
    const auto s = testgen::random_vector(eval, 3, 0, 1);
    correct += bandit_reward(s, argmax(learner.online().forward(s))) > 0.0 ? 1 : 0;
  }
  EXPECT_GT(correct, 450);
}

TEST(Checkpoint, RoundTrip)
{
  Rng rng = make_stream(94, 0);
  Checkpoint c;
  c.name = "loop1";
  c.online = QNetwork({3, 5, 4}, rng);
  c.target = QNetwork({3, 5, 4}, rng);
  c.train_steps = 1234;
  (void)rng();
  c.rng_state = rng_state(rng);

  const auto back = checkpoints_from_json(checkpoints_to_json({c}));
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].name, "loop1");
  EXPECT_EQ(back[0].online.parameters(), c.online.parameters());
  EXPECT_EQ(back[0].target.parameters(), c.target.parameters());
  EXPECT_EQ(back[0].train_steps, 1234u);
  Rng restored;
  restore_rng(restored, back[0].rng_state);
  EXPECT_EQ(restored(), rng());

  const auto path = std::filesystem::temp_directory_path() / "ranslice_checkpoint_test.json";
  save_checkpoints(path, {c});
  EXPECT_EQ(load_checkpoints(path)[0].online.parameters(), c.online.parameters());
  std::filesystem::remove(path);
}

TEST(Checkpoint, RejectsBadDocuments)
{
  EXPECT_THROW((void)checkpoints_from_json("{"), CheckpointError);
  EXPECT_THROW((void)checkpoints_from_json(R"({"version": 99, "learners": []})"), CheckpointError);
  EXPECT_THROW((void)checkpoints_from_json(
                   R"({"version": 1, "learners": [{"name": "x", "layer_sizes": [2, 2], "online": [1.0],
                       "target": [1.0], "train_steps": 0, "rng": ""}]})"),
               CheckpointError);
  EXPECT_THROW((void)load_checkpoints("/nonexistent/ckpt.json"), CheckpointError);
}

}  // namespace
}  // namespace ranslice::rl
