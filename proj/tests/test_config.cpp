#include "uavsim/config.hpp"

#include "doctest.h"

using namespace uavsim;

TEST_CASE("defaults carry the reference parameter set") {
  SimConfig cfg;
  CHECK(config_get(cfg, "bandwidth_total") == "1e+11");
  CHECK(config_get(cfg, "ref_gain_db") == "-40");
  CHECK(config_get(cfg, "noise_psd_dbm_hz") == "-174");
  CHECK(config_get(cfg, "p_max") == "2");
  CHECK(config_get(cfg, "r_min") == "2e+10");
  CHECK(config_get(cfg, "carrier_absorption") == "0.005");
  CHECK(config_get(cfg, "n_uavs") == "3");
  CHECK(config_get(cfg, "n_gus") == "36");
  CHECK(config_get(cfg, "area_side") == "200");
  CHECK(config_get(cfg, "uav_altitude") == "20");
  CHECK(config_get(cfg, "v_max") == "5");
  CHECK(config_get(cfg, "n_slots") == "25");
  CHECK(config_get(cfg, "minibatch_size") == "120");
  CHECK(config_get(cfg, "epochs") == "3");
  CHECK(config_get(cfg, "episodes") == "500000");
  CHECK(config_get(cfg, "hidden_units") == "128");
  CHECK(config_get(cfg, "interference_mode") == "literal");
  CHECK(cfg.ppo.clip_epsilon == doctest::Approx(0.2));
  CHECK(cfg.ppo.discount == doctest::Approx(0.99));
  CHECK(cfg.ppo.gae_lambda == doctest::Approx(0.95));
  CHECK(cfg.ppo.learning_rate == doctest::Approx(3e-4));
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("set and get round-trip by key") {
  SimConfig cfg;
  config_set(cfg, "n_uavs", "4");
  CHECK(cfg.net.n_uavs == 4);
  config_set(cfg, "interference_mode", "physical");
  CHECK(cfg.net.interference_mode == InterferenceMode::physical);
  config_set(cfg, "power_policy", "random");
  CHECK(cfg.env.power_policy == PowerPolicyKind::random);
  config_set(cfg, "terminate_on_violation", "false");
  CHECK_FALSE(cfg.env.terminate_on_violation);
  config_set(cfg, "optimizer", "adam");
  CHECK(cfg.ppo.optimizer == PpoConfig::Optimizer::adam);
  config_set(cfg, "reward_scale", "1e-10");
  CHECK(cfg.env.reward_scale == doctest::Approx(1e-10));
}

TEST_CASE("unknown keys and bad values are hard errors") {
  SimConfig cfg;
  CHECK_THROWS_AS(config_set(cfg, "bandwidth", "1"), ConfigError);
  CHECK_THROWS_AS(config_set(cfg, "n_uavs", "three"), ConfigError);
  CHECK_THROWS_AS(config_set(cfg, "n_uavs", "3x"), ConfigError);
  CHECK_THROWS_AS(config_set(cfg, "terminate_on_violation", "yes"),
                  ConfigError);
  CHECK_THROWS_AS(config_set(cfg, "interference_mode", "both"), ConfigError);
  CHECK_THROWS_AS(config_get(cfg, "nope"), ConfigError);
  CHECK_THROWS_AS(config_parse("episodes = 10\nmystery = 1\n"), ConfigError);
}

TEST_CASE("parse accepts comments and blanks, rejects malformed lines") {
  const std::string text =
      "# reference scenario\n"
      "n_uavs = 2\n"
      "\n"
      "n_gus = 8   # balanced pairs\n"
      "area_side = 50\n";
  const SimConfig cfg = config_parse(text);
  CHECK(cfg.net.n_uavs == 2);
  CHECK(cfg.net.n_gus == 8);
  CHECK(cfg.net.area_side == doctest::Approx(50.0));

  CHECK_THROWS_AS(config_parse("n_uavs 3\n"), ConfigError);
  CHECK_THROWS_AS(config_parse("= 3\n"), ConfigError);
  CHECK_THROWS_AS(config_parse("n_uavs =\n"), ConfigError);
}

TEST_CASE("validation rejects inconsistent settings") {
  SimConfig cfg;
  cfg.net.n_gus = 2;
  cfg.net.n_uavs = 3;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = SimConfig{};
  cfg.net.d_min = 500.0;  // larger than the area
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = SimConfig{};
  cfg.net.p_max = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = SimConfig{};
  cfg.ppo.clip_epsilon = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("serialize/parse round-trip preserves every key") {
  SimConfig cfg;
  config_set(cfg, "n_uavs", "2");
  config_set(cfg, "n_gus", "8");
  config_set(cfg, "area_side", "50");
  config_set(cfg, "reward_scale", "1.25e-11");
  config_set(cfg, "episodes", "2000");
  const std::string text = config_serialize(cfg);
  const SimConfig back = config_parse(text);
  for (const auto& key : config_keys())
    CHECK(config_get(back, key) == config_get(cfg, key));
  CHECK(config_hash(back) == config_hash(cfg));
}

TEST_CASE("config hash is stable and content-sensitive") {
  SimConfig a, b;
  CHECK(config_hash(a) == config_hash(b));
  config_set(b, "n_uavs", "4");
  CHECK(config_hash(a) != config_hash(b));
  CHECK(config_hash(a).rfind("fnv1a64:", 0) == 0);
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 12638187200555641996ULL);
}
