#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "placo/types.hpp"

namespace placo {

// Plain-text dataset, one instance per line:
//   placo-dataset v1 k=<K>
//   <id> <truth|?> <K model probs> [<K annotation freqs>]
// '#' starts a comment; blank lines are skipped.
struct Dataset {
  std::size_t k = 0;
  std::vector<InstanceRecord> records;
};

Dataset load_dataset(const std::string& path);
// Errors with dimension-mismatch when the file's class count differs.
Dataset load_dataset(const std::string& path, std::size_t expected_k);

// Exposed for targeted parsing tests; line_no only labels error messages.
InstanceRecord parse_record_line(const std::string& line, std::size_t k,
                                 std::size_t line_no);

void write_dataset(const std::string& path,
                   std::span<const InstanceRecord> records, std::size_t k);

// Seeded shuffle, then the first train_size indices train and the rest test.
// Both halves come back sorted.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split(
    std::size_t n_records, std::size_t train_size, std::uint64_t seed);

}  // namespace placo
