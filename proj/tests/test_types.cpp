#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "placo/rng.hpp"
#include "placo/types.hpp"

using namespace placo;

TEST_CASE("prob vector accepts a uniform simplex") {
  ProbVector p = ProbVector::checked({0.5, 0.5});
  CHECK(p.size() == 2);
  CHECK(p[0] == 0.5);
}

TEST_CASE("prob vector rejects non-simplex sums") {
  try {
    ProbVector::checked({0.6, 0.6});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::non_simplex_probabilities);
  }
}

TEST_CASE("prob vector rejects negative entries") {
  CHECK_THROWS_AS(ProbVector::checked({1.2, -0.2}), Error);
}

TEST_CASE("ingest renormalizes small deviations and rejects large ones") {
  ProbVector p = ProbVector::ingest({0.5 + 2e-7, 0.5});
  double sum = p[0] + p[1];
  CHECK(std::abs(sum - 1.0) <= kSimplexTol);

  CHECK_THROWS_AS(ProbVector::ingest({0.6, 0.6}), Error);

  // within strict tolerance nothing is touched
  ProbVector q = ProbVector::ingest({0.25, 0.75});
  CHECK(q[0] == 0.25);
  CHECK(q[1] == 0.75);
}

TEST_CASE("confusion matrix enforces column sums") {
  // columns (0.9, 0.1) and (0.3, 0.7)
  ConfusionMatrix phi(2, {0.9, 0.3, 0.1, 0.7});
  CHECK(phi.at(0, 0) == 0.9);
  CHECK(phi.at(1, 1) == 0.7);
  CHECK(phi.diag_min() == 0.7);
  CHECK(phi.diag_max() == 0.9);

  try {
    ConfusionMatrix bad(2, {0.9, 0.3, 0.2, 0.7});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::column_not_stochastic);
  }
}

TEST_CASE("confusion matrix rejects out-of-range lookups") {
  ConfusionMatrix phi = ConfusionMatrix::identity(3);
  CHECK_THROWS_AS(phi.at(3, 0), Error);
  CHECK_THROWS_AS(phi.at(0, -1), Error);
}

TEST_CASE("human profile derives diagonal bounds from its matrix") {
  ConfusionMatrix phi(2, {0.8, 0.4, 0.2, 0.6});
  HumanProfile h(0, phi, 0.7, 1.5);
  CHECK(h.diag_min == phi.diag_min());
  CHECK(h.diag_max == phi.diag_max());
  CHECK(h.diag_min <= h.diag_max);

  CHECK_THROWS_AS(HumanProfile(0, phi, 0.7, 0.0), Error);
  CHECK_THROWS_AS(HumanProfile(0, phi, 1.7, 1.0), Error);
}

TEST_CASE("validate_instance passes a well-formed record") {
  InstanceRecord rec{"a", std::nullopt, ProbVector::checked({0.5, 0.5}),
                     std::nullopt, std::nullopt};
  CHECK_NOTHROW(validate_instance(rec, 2, 0));
}

TEST_CASE("validate_instance flags dimension mismatches") {
  InstanceRecord rec{"a", std::nullopt, ProbVector::checked({0.5, 0.5}),
                     std::nullopt, std::nullopt};
  try {
    validate_instance(rec, 3, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::dimension_mismatch);
    CHECK(std::string(e.what()).find("model_probs") != std::string::npos);
  }
}

TEST_CASE("validate_instance flags out-of-range pool labels") {
  InstanceRecord rec{"a", 0, ProbVector::checked({0.4, 0.3, 0.3}),
                     std::vector<Label>{0, 1, 3}, std::nullopt};
  try {
    validate_instance(rec, 3, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::label_out_of_range);
    CHECK(std::string(e.what()).find("true_human_labels") != std::string::npos);
  }
}

TEST_CASE("validate_instance checks annotation frequencies") {
  InstanceRecord rec{"a", 0, ProbVector::checked({0.5, 0.5}), std::nullopt,
                     ProbVector::checked({1.0, 0.0})};
  CHECK_NOTHROW(validate_instance(rec, 2, 0));
  InstanceRecord bad{"b", 0, ProbVector::checked({0.5, 0.5}), std::nullopt,
                     ProbVector::checked({0.2, 0.3, 0.5})};
  CHECK_THROWS_AS(validate_instance(bad, 2, 0), Error);
}

TEST_CASE("argmax breaks ties toward the smallest index") {
  std::vector<double> v{0.3, 0.4, 0.4};
  CHECK(argmax_index(v) == 1);
  std::vector<double> flat{0.25, 0.25, 0.25, 0.25};
  CHECK(argmax_index(flat) == 0);
}

TEST_CASE("rng streams replay exactly") {
  Rng a = derive_rng(42, "test", 1, 2);
  Rng b = derive_rng(42, "test", 1, 2);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng c = derive_rng(42, "test", 1, 3);
  Rng d = derive_rng(42, "other", 1, 2);
  Rng e = derive_rng(43, "test", 1, 2);
  Rng base = derive_rng(42, "test", 1, 2);
  std::uint64_t first = base.next_u64();
  CHECK(c.next_u64() != first);
  CHECK(d.next_u64() != first);
  CHECK(e.next_u64() != first);
}

TEST_CASE("rng draws stay inside their ranges") {
  Rng rng = derive_rng(7, "ranges");
  for (int i = 0; i < 10000; ++i) {
    double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double o = rng.next_open(0.0, 3.0);
    CHECK(o > 0.0);
    CHECK(o < 3.0);
    CHECK(rng.next_below(7) < 7);
  }
}
