#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "giant/objective.hpp"
#include "giant/worker.hpp"

namespace giant {

struct LibsvmOptions {
  std::size_t min_dim = 0;        // feature dimension is at least this
  bool normalize_binary = true;   // {0,1} or {1,2} label sets become {-1,+1}
};

// `<label> <index>:<value> ...` with 1-based ascending indices; densified.
LabeledDataset parse_libsvm(std::istream& in, const LibsvmOptions& options = {});

// Reads plain or gzip-compressed LIBSVM text.
LabeledDataset load_libsvm(const std::filesystem::path& path, const LibsvmOptions& options = {});

// Writes non-zero entries with round-trip precision.
void write_libsvm(const LabeledDataset& data, std::ostream& out);

std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& data,
                                                           double train_fraction,
                                                           std::uint64_t seed);

// Seeded shuffle, then contiguous blocks of floor(n / m) rows; the last block
// absorbs the remainder.
std::vector<WorkerShard> partition_shards(const LabeledDataset& data, std::size_t m,
                                          std::uint64_t seed, const CgSettings& cg = {});

struct RffConfig {
  std::size_t target_dim = 1000;
  double sigma = 1.0;  // kernel exp(-||x - x'||^2 / (2 sigma))
  std::uint64_t seed = 0;
};

// z(x) = sqrt(2 / D) cos(W x + b), W_kl ~ N(0, 1 / sigma), b_k ~ U[0, 2 pi).
DenseMatrix rff_map(const DenseMatrix& features, const RffConfig& config);

// Mean squared pairwise distance over pair_budget sampled pairs (i != j).
double estimate_sigma(const DenseMatrix& features, std::size_t pair_budget, std::uint64_t seed);

// Stacks k copies of (X, y) and adds N(0, noise_std^2) to every feature entry.
LabeledDataset augment_replicate(const LabeledDataset& data, std::size_t factor, double noise_std,
                                 std::uint64_t seed);

}  // namespace giant
