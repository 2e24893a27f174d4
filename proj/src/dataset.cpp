#include "placo/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "placo/rng.hpp"

namespace placo {

namespace {

constexpr const char* kMagic = "placo-dataset";
constexpr const char* kVersion = "v1";

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

double parse_double(const std::string& tok, std::size_t line_no,
                    const char* field) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(Err::parse_error, "line " + std::to_string(line_no) + ": bad " +
                                      field + " '" + tok + "'");
  }
}

Label parse_label(const std::string& tok, std::size_t k, std::size_t line_no,
                  const char* field) {
  long v = 0;
  try {
    std::size_t pos = 0;
    v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
  } catch (const std::exception&) {
    throw Error(Err::parse_error, "line " + std::to_string(line_no) + ": bad " +
                                      field + " '" + tok + "'");
  }
  if (v < 0 || static_cast<std::size_t>(v) >= k) {
    throw Error(Err::label_out_of_range,
                "line " + std::to_string(line_no) + ": " + field + " " +
                    std::to_string(v) + " with k=" + std::to_string(k));
  }
  return static_cast<Label>(v);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

InstanceRecord parse_record_line(const std::string& line, std::size_t k,
                                 std::size_t line_no) {
  std::vector<std::string> toks = tokenize(line);
  const std::size_t with_freqs = 2 + 2 * k;
  const std::size_t without_freqs = 2 + k;
  if (toks.size() != with_freqs && toks.size() != without_freqs) {
    throw Error(Err::parse_error,
                "line " + std::to_string(line_no) + ": expected " +
                    std::to_string(without_freqs) + " or " +
                    std::to_string(with_freqs) + " fields, got " +
                    std::to_string(toks.size()));
  }
  std::optional<Label> truth;
  if (toks[1] != "?") {
    truth = parse_label(toks[1], k, line_no, "ground_truth");
  }
  std::vector<double> probs(k);
  for (std::size_t i = 0; i < k; ++i) {
    probs[i] = parse_double(toks[2 + i], line_no, "model_probs");
  }
  ProbVector m = [&] {
    try {
      return ProbVector::ingest(std::move(probs));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) +
                                ": model_probs: " + e.what());
    }
  }();
  std::optional<ProbVector> freqs;
  if (toks.size() == with_freqs) {
    std::vector<double> g(k);
    for (std::size_t i = 0; i < k; ++i) {
      g[i] = parse_double(toks[2 + k + i], line_no, "annotation_freqs");
    }
    try {
      freqs = ProbVector::ingest(std::move(g));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) +
                                ": annotation_freqs: " + e.what());
    }
  }
  return InstanceRecord{toks[0], truth, std::move(m), std::nullopt,
                        std::move(freqs)};
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Err::parse_error, "cannot open '" + path + "'");

  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = line;
    auto hash = trimmed.find('#');
    if (hash != std::string::npos) trimmed.resize(hash);
    if (trimmed.find_first_not_of(" \t\r") == std::string::npos) continue;

    if (!have_header) {
      std::vector<std::string> toks = tokenize(trimmed);
      if (toks.size() != 3 || toks[0] != kMagic || toks[1] != kVersion ||
          toks[2].rfind("k=", 0) != 0) {
        throw Error(Err::parse_error,
                    "line " + std::to_string(line_no) +
                        ": expected header 'placo-dataset v1 k=<K>'");
      }
      long k = 0;
      try {
        k = std::stol(toks[2].substr(2));
      } catch (const std::exception&) {
        k = 0;
      }
      if (k < 2) {
        throw Error(Err::parse_error,
                    "line " + std::to_string(line_no) + ": bad class count in '" +
                        toks[2] + "'");
      }
      ds.k = static_cast<std::size_t>(k);
      have_header = true;
      continue;
    }
    ds.records.push_back(parse_record_line(trimmed, ds.k, line_no));
  }
  if (!have_header) {
    throw Error(Err::parse_error, "'" + path + "' has no header line");
  }
  for (const InstanceRecord& rec : ds.records) {
    validate_instance(rec, ds.k, 0);
  }
  return ds;
}

Dataset load_dataset(const std::string& path, std::size_t expected_k) {
  Dataset ds = load_dataset(path);
  if (expected_k != 0 && ds.k != expected_k) {
    throw Error(Err::dimension_mismatch,
                "dataset has k=" + std::to_string(ds.k) + ", expected k=" +
                    std::to_string(expected_k));
  }
  return ds;
}

void write_dataset(const std::string& path,
                   std::span<const InstanceRecord> records, std::size_t k) {
  std::ofstream out(path);
  if (!out) throw Error(Err::parse_error, "cannot write '" + path + "'");
  out << kMagic << ' ' << kVersion << " k=" << k << '\n';
  for (const InstanceRecord& rec : records) {
    validate_instance(rec, k, rec.true_human_labels
                                  ? rec.true_human_labels->size()
                                  : 0);
    out << rec.id << ' ';
    if (rec.ground_truth) {
      out << *rec.ground_truth;
    } else {
      out << '?';
    }
    for (std::size_t i = 0; i < k; ++i) {
      out << ' ' << fmt_double(rec.model_probs[i]);
    }
    if (rec.annotation_freqs) {
      for (std::size_t i = 0; i < k; ++i) {
        out << ' ' << fmt_double((*rec.annotation_freqs)[i]);
      }
    }
    out << '\n';
  }
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split(
    std::size_t n_records, std::size_t train_size, std::uint64_t seed) {
  if (train_size == 0 || train_size >= n_records) {
    throw Error(Err::invalid_train_size,
                "train_size=" + std::to_string(train_size) + " with " +
                    std::to_string(n_records) + " records");
  }
  std::vector<std::size_t> perm(n_records);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng = derive_rng(seed, "split");
  for (std::size_t i = n_records - 1; i > 0; --i) {
    std::size_t j = rng.next_below(i + 1);
    std::swap(perm[i], perm[j]);
  }
  std::vector<std::size_t> train(perm.begin(),
                                 perm.begin() + static_cast<long>(train_size));
  std::vector<std::size_t> test(perm.begin() + static_cast<long>(train_size),
                                perm.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

}  // namespace placo
