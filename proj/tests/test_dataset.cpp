#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>

#include "placo/dataset.hpp"
#include "placo/synthpop.hpp"

using namespace placo;

namespace {

std::filesystem::path tmp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("a well-formed file loads every record") {
  auto p = tmp_file("placo_ds_ok.txt");
  write_text(p,
             "# demo\n"
             "placo-dataset v1 k=2\n"
             "a 0 0.6 0.4 0.9 0.1\n"
             "b 1 0.3 0.7 0.2 0.8\n");
  Dataset ds = load_dataset(p.string());
  CHECK(ds.k == 2);
  CHECK(ds.records.size() == 2);
  CHECK(ds.records[0].id == "a");
  CHECK(*ds.records[1].ground_truth == 1);
  CHECK(ds.records[0].model_probs[0] == 0.6);
  REQUIRE(ds.records[0].annotation_freqs.has_value());
  CHECK((*ds.records[0].annotation_freqs)[0] == 0.9);
}

TEST_CASE("records may omit annotation frequencies") {
  auto p = tmp_file("placo_ds_nofreq.txt");
  write_text(p,
             "placo-dataset v1 k=2\n"
             "a ? 0.6 0.4\n");
  Dataset ds = load_dataset(p.string());
  CHECK(!ds.records[0].ground_truth.has_value());
  CHECK(!ds.records[0].annotation_freqs.has_value());
}

TEST_CASE("a non-simplex probability row names its line") {
  auto p = tmp_file("placo_ds_bad_sum.txt");
  write_text(p,
             "placo-dataset v1 k=2\n"
             "a 0 0.6 0.4 0.9 0.1\n"
             "b 0 0.6 0.6 0.9 0.1\n");
  try {
    load_dataset(p.string());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::non_simplex_probabilities);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("field-count and label errors carry line numbers") {
  auto p = tmp_file("placo_ds_fields.txt");
  write_text(p,
             "placo-dataset v1 k=2\n"
             "a 0 0.6\n");
  try {
    load_dataset(p.string());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::parse_error);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  auto q = tmp_file("placo_ds_label.txt");
  write_text(q,
             "placo-dataset v1 k=2\n"
             "a 2 0.6 0.4\n");
  try {
    load_dataset(q.string());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::label_out_of_range);
  }
}

TEST_CASE("a missing or malformed header fails") {
  auto p = tmp_file("placo_ds_nohdr.txt");
  write_text(p, "a 0 0.6 0.4\n");
  CHECK_THROWS_AS(load_dataset(p.string()), Error);

  auto q = tmp_file("placo_ds_badk.txt");
  write_text(q, "placo-dataset v1 k=1\n");
  CHECK_THROWS_AS(load_dataset(q.string()), Error);

  CHECK_THROWS_AS(load_dataset("/nonexistent/placo.txt"), Error);
}

TEST_CASE("the expected class count is enforced") {
  auto p = tmp_file("placo_ds_k.txt");
  write_text(p,
             "placo-dataset v1 k=2\n"
             "a 0 0.6 0.4\n");
  CHECK_NOTHROW(load_dataset(p.string(), 2));
  CHECK_NOTHROW(load_dataset(p.string(), 0));
  try {
    load_dataset(p.string(), 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::dimension_mismatch);
  }
}

TEST_CASE("write then load reproduces every field bit-exactly") {
  SynthDatasetConfig cfg;
  cfg.n_instances = 100;
  cfg.k = 7;
  cfg.seed = 33;
  std::vector<InstanceRecord> records = make_synthetic_dataset(cfg);
  auto p = tmp_file("placo_ds_roundtrip.txt");
  write_dataset(p.string(), records, cfg.k);
  Dataset ds = load_dataset(p.string(), cfg.k);
  REQUIRE(ds.records.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(ds.records[i].id == records[i].id);
    CHECK(ds.records[i].ground_truth == records[i].ground_truth);
    CHECK(ds.records[i].model_probs.probs() == records[i].model_probs.probs());
    REQUIRE(ds.records[i].annotation_freqs.has_value());
    CHECK(ds.records[i].annotation_freqs->probs() ==
          records[i].annotation_freqs->probs());
  }
}

TEST_CASE("split is seeded, disjoint and covering") {
  auto [train, test] = split(10, 5, 7);
  CHECK(train.size() == 5);
  CHECK(test.size() == 5);
  std::vector<bool> seen(10, false);
  for (std::size_t i : train) seen[i] = true;
  for (std::size_t i : test) {
    CHECK(!seen[i]);
    seen[i] = true;
  }
  for (bool s : seen) CHECK(s);

  auto [train2, test2] = split(10, 5, 7);
  CHECK(train == train2);
  CHECK(test == test2);

  auto [train3, test3] = split(10, 5, 8);
  CHECK(train != train3);
}

TEST_CASE("split rejects degenerate sizes") {
  try {
    split(10, 0, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::invalid_train_size);
  }
  CHECK_THROWS_AS(split(10, 10, 1), Error);
  CHECK_THROWS_AS(split(10, 11, 1), Error);
}

TEST_CASE("the bundled example dataset loads") {
  // repo-relative; skip quietly when run from elsewhere
  std::filesystem::path p = "data/example_dataset.txt";
  if (!std::filesystem::exists(p)) {
    p = "../data/example_dataset.txt";
  }
  if (!std::filesystem::exists(p)) {
    p = "../../data/example_dataset.txt";
  }
  if (std::filesystem::exists(p)) {
    Dataset ds = load_dataset(p.string());
    CHECK(ds.k == 3);
    CHECK(ds.records.size() == 5);
  }
}
