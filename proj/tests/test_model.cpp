#include "declab/model/codec.hpp"
#include "declab/model/provider.hpp"
#include "declab/model/softmax.hpp"
#include "declab/model/synthetic_lm.hpp"
#include "declab/model/table_lm.hpp"

#include "support/toy_models.hpp"

#include <doctest.h>

#include <cmath>

using namespace declab;

TEST_CASE("softmax closed forms") {
  SUBCASE("uniform logits") {
    std::vector<double> z{0, 0, 0, 0};
    for (double p : model::softmax(z)) CHECK(p == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("two-point shift invariance: [c, c+ln2] -> [1/3, 2/3]") {
    for (double c : {-30.0, -2.0, 0.0, 5.5, 30.0}) {
      std::vector<double> z{c, c + std::log(2.0)};
      auto p = model::softmax(z);
      CHECK(p[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
      CHECK(p[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("softmax matches extended-precision recomputation within 1e-12") {
  testing::TestRng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> z(8);
    for (double& x : z) x = 20.0 * rng.next() - 10.0;
    auto p = model::softmax(z);

    // Oracle: straight long double exponentiation, no max subtraction.
    long double sum = 0.0L;
    std::vector<long double> e(8);
    for (int i = 0; i < 8; ++i) {
      e[i] = expl(static_cast<long double>(z[i]));
      sum += e[i];
    }
    double total = 0.0;
    for (int i = 0; i < 8; ++i) {
      CHECK(std::abs(p[i] - double(e[i] / sum)) <= 1e-12);
      total += p[i];
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("softmax shift invariance property for |c| <= 30") {
  testing::TestRng rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> z(6);
    for (double& x : z) x = 8.0 * rng.next() - 4.0;
    double c = 60.0 * rng.next() - 30.0;
    std::vector<double> shifted = z;
    for (double& x : shifted) x += c;
    auto a = model::softmax(z);
    auto b = model::softmax(shifted);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12);
  }
}

TEST_CASE("table lm row read-back: a -> [0.7, 0.2, 0.1]" *
          doctest::description("softmax of ln(p) logits returns the row exactly")) {
  model::TableLM lm(core::Vocabulary{3, 2}, 1);
  lm.set_row({0}, {0.7, 0.2, 0.1});
  core::StepOutput so = model::step_checked(lm, core::TokenSeq{{0}});
  auto p = model::softmax(so.final_logits);
  CHECK(p[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(p[2] == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("table lm uniform fallback for unseen keys, |V|=4") {
  model::TableLM lm(core::Vocabulary{4, 0}, 2);
  core::StepOutput so = model::step_checked(lm, core::TokenSeq{{1, 2}});
  for (double p : model::softmax(so.final_logits))
    CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("table lm rejects malformed rows") {
  model::TableLM lm(core::Vocabulary{3, 0}, 1);
  CHECK_THROWS_AS(lm.set_row({0}, {0.5, 0.5}), ConfigError);            // wrong length
  CHECK_THROWS_AS(lm.set_row({0}, {0.5, 0.4, 0.2}), ConfigError);       // sum != 1
  CHECK_THROWS_AS(lm.set_row({0}, {1.2, -0.1, -0.1}), ConfigError);     // negatives
  CHECK_THROWS_AS(lm.set_row({0, 1}, {0.5, 0.4, 0.1}), ConfigError);    // key too long
}

TEST_CASE("table lm json round trip preserves step outputs") {
  model::TableLM lm = testing::random_table_lm(5, 4, 2);
  model::TableLM back = model::TableLM::from_json(lm.to_json());
  core::TokenSeq ctx{{1, 3}};
  CHECK(lm.step(ctx, {}).final_logits == back.step(ctx, {}).final_logits);
}

TEST_CASE("synthetic layered lm: determinism, shape, and layer consistency") {
  model::SyntheticLayeredLM lm(7, core::Vocabulary{10, 0}, 4, 8);
  core::TokenSeq ctx{{3, 1, 4}};
  model::StepNeed need{.layers = true, .hidden = true};

  core::StepOutput a = model::step_checked(lm, ctx, need);
  core::StepOutput b = model::step_checked(lm, ctx, need);
  CHECK(a == b);  // bitwise identical replay

  REQUIRE(a.layer_logits.has_value());
  CHECK(a.layer_logits->size() == 4);
  CHECK(a.layer_logits->back() == a.final_logits);
  REQUIRE(a.hidden_state.has_value());
  double norm = 0.0;
  for (double x : *a.hidden_state) norm += x * x;
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));

  core::StepOutput c = model::step_checked(lm, core::TokenSeq{{3, 1, 5}}, need);
  CHECK(c.final_logits != a.final_logits);
}

TEST_CASE("step precondition and capability errors") {
  model::TableLM lm(core::Vocabulary{3, 0}, 1);
  CHECK_THROWS_AS(model::step_checked(lm, core::TokenSeq{}), Error);
  CHECK_THROWS_AS(model::step_checked(lm, core::TokenSeq{{7}}), Error);
  CHECK_THROWS_AS(model::step_checked(lm, core::TokenSeq{{0}}, {.layers = true, .hidden = false}),
                  CapabilityError);
  CHECK_THROWS_AS(model::step_checked(lm, core::TokenSeq{{0}}, {.layers = false, .hidden = true}),
                  CapabilityError);
}

TEST_CASE("word list codec encodes, drops oov, and decodes") {
  model::WordListCodec codec({"alpha", "beta", "gamma"});
  CHECK(codec.encode("beta alpha unknown gamma") == std::vector<int>{1, 0, 2});
  std::vector<int> ids{2, 0};
  CHECK(codec.decode(ids) == "gamma alpha");
}
