#include <doctest.h>

#include <stdexcept>

#include "reconips/config.hpp"

using namespace reconips;

TEST_CASE("default configs validate cleanly for every variant") {
  for (Variant v : {Variant::Recon, Variant::Ipsundrum, Variant::IpsundrumAffect}) {
    RunConfig cfg = RunConfig::defaults_for(v);
    CHECK(cfg.validate().empty());
  }
}

TEST_CASE("bound violations are reported, not thrown") {
  RunConfig cfg = RunConfig::defaults_for(Variant::Recon);
  cfg.ipsundrum.d = 1.2;
  auto v = cfg.validate();
  REQUIRE_FALSE(v.empty());
  bool mentions_d = false;
  for (const std::string& msg : v)
    if (msg.find("d must be") != std::string::npos) mentions_d = true;
  CHECK(mentions_d);
}

TEST_CASE("affect weights on the baseline variant are a gating violation") {
  RunConfig cfg = RunConfig::defaults_for(Variant::Recon);
  cfg.policy.w_v = 2.0;
  auto v = cfg.validate();
  REQUIRE_FALSE(v.empty());
  bool gating = false;
  for (const std::string& msg : v)
    if (msg.find("recon variant requires") != std::string::npos) gating = true;
  CHECK(gating);

  RunConfig ips = RunConfig::defaults_for(Variant::Ipsundrum);
  ips.policy.w_a = -1.2;
  CHECK_FALSE(ips.validate().empty());
}

TEST_CASE("json round-trips the full config") {
  RunConfig cfg = RunConfig::defaults_for(Variant::IpsundrumAffect);
  cfg.assay = "play";
  cfg.horizon = 7;
  cfg.ipsundrum.f = Nonlinearity::Sigmoid;
  std::string text = cfg.to_json_text();
  RunConfig back = RunConfig::from_json_text(text);
  CHECK(back.to_json_text() == text);
  CHECK(back.variant == Variant::IpsundrumAffect);
  CHECK(back.horizon == 7);
  CHECK(back.ipsundrum.f == Nonlinearity::Sigmoid);
}

TEST_CASE("dotted-path overrides reach nested fields") {
  RunConfig cfg = RunConfig::defaults_for(Variant::Recon);
  cfg.apply_override("policy.w_nov=0.3");
  CHECK(cfg.policy.w_nov == doctest::Approx(0.3));
  cfg.apply_override("ipsundrum.d=0.7");
  CHECK(cfg.ipsundrum.d == doctest::Approx(0.7));
  cfg.apply_override("worlds.grid.hazards=false");
  CHECK_FALSE(cfg.grid.hazards);
  cfg.apply_override("horizon=3");
  CHECK(cfg.horizon == 3);
  CHECK_THROWS_AS(cfg.apply_override("nonsense.path=1"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply_override("no_equals"), std::invalid_argument);
}

TEST_CASE("seed lists parse ranges and commas") {
  CHECK(parse_seed_list("0..4") == std::vector<uint64_t>{0, 1, 2, 3, 4});
  CHECK(parse_seed_list("1,2,7") == std::vector<uint64_t>{1, 2, 7});
  CHECK(parse_seed_list("3") == std::vector<uint64_t>{3});
  CHECK(parse_seed_list("0..1,5") == std::vector<uint64_t>{0, 1, 5});
}

TEST_CASE("config hash tracks content") {
  RunConfig a = RunConfig::defaults_for(Variant::Recon);
  RunConfig b = RunConfig::defaults_for(Variant::Recon);
  CHECK(a.config_hash() == b.config_hash());
  b.horizon = 9;
  CHECK(a.config_hash() != b.config_hash());
}
