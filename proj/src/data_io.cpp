#include "giant/data_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "giant/error.hpp"
#include "giant/rng.hpp"

namespace giant {

namespace {

struct SparseRow {
  double label = 0.0;
  std::vector<std::pair<std::size_t, double>> entries;
};

double parse_real(std::string_view token, std::size_t line, const char* what) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
  return value;
}

SparseRow parse_line(std::string_view text, std::size_t line) {
  SparseRow row;
  std::size_t pos = 0;
  const auto next_token = [&]() -> std::string_view {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  };
  row.label = parse_real(next_token(), line, "label");
  std::size_t last = 0;
  for (std::string_view tok = next_token(); !tok.empty(); tok = next_token()) {
    if (tok.front() == '#') break;
    const std::size_t colon = tok.find(':');
    if (colon == std::string_view::npos) throw ParseError(line, "expected index:value, got '" + std::string(tok) + "'");
    const std::string_view idx_text = tok.substr(0, colon);
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), index);
    if (ec != std::errc() || ptr != idx_text.data() + idx_text.size() || index == 0)
      throw ParseError(line, "malformed feature index '" + std::string(idx_text) + "'");
    if (index <= last) throw ParseError(line, "feature indices must be strictly ascending");
    last = index;
    const double value = parse_real(tok.substr(colon + 1), line, "feature value");
    if (!std::isfinite(value)) throw ParseError(line, "non-finite feature value");
    row.entries.emplace_back(index - 1, value);
  }
  return row;
}

LabeledDataset densify(const std::vector<SparseRow>& rows, const LibsvmOptions& options) {
  std::size_t d = options.min_dim;
  for (const SparseRow& r : rows)
    if (!r.entries.empty()) d = std::max(d, r.entries.back().first + 1);
  LabeledDataset data;
  data.features = DenseMatrix(rows.size(), d);
  data.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [j, v] : rows[i].entries) data.features(i, j) = v;
    data.labels.push_back(rows[i].label);
  }
  if (options.normalize_binary) {
    const std::set<double> raw(data.labels.begin(), data.labels.end());
    const auto remap = [&](double negative) {
      for (double& y : data.labels) y = (y == negative) ? -1.0 : 1.0;
    };
    if (raw == std::set<double>{0.0, 1.0}) remap(0.0);
    else if (raw == std::set<double>{1.0, 2.0}) remap(1.0);
  }
  return data;
}

}  // namespace

LabeledDataset parse_libsvm(std::istream& in, const LibsvmOptions& options) {
  std::vector<SparseRow> rows;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    rows.push_back(parse_line(text, line));
  }
  if (rows.empty()) throw ParseError(line, "no samples in input");
  return densify(rows, options);
}

LabeledDataset load_libsvm(const std::filesystem::path& path, const LibsvmOptions& options) {
  gzFile file = gzopen(path.c_str(), "rb");  // reads plain files transparently
  if (file == nullptr) throw ConfigError("cannot open " + path.string());
  std::string content;
  char buffer[1 << 16];
  int got = 0;
  while ((got = gzread(file, buffer, sizeof buffer)) > 0) content.append(buffer, got);
  const bool failed = got < 0;
  gzclose(file);
  if (failed) throw ConfigError("read error in " + path.string());
  std::istringstream in(content);
  return parse_libsvm(in, options);
}

void write_libsvm(const LabeledDataset& data, std::ostream& out) {
  char buf[64];
  for (std::size_t i = 0; i < data.n(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", data.labels[i]);
    out << buf;
    for (std::size_t j = 0; j < data.d(); ++j) {
      const double v = data.features(i, j);
      if (v == 0.0) continue;
      std::snprintf(buf, sizeof buf, " %zu:%.17g", j + 1, v);
      out << buf;
    }
    out << '\n';
  }
}

std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& data,
                                                           double train_fraction,
                                                           std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw RangeError("train_fraction must lie in (0, 1)");
  const std::size_t n = data.n();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  if (n >= 2) n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
  const std::span<const std::size_t> all(order);
  return {data.subset(all.first(n_train)), data.subset(all.subspan(n_train))};
}

std::vector<WorkerShard> partition_shards(const LabeledDataset& data, std::size_t m,
                                          std::uint64_t seed, const CgSettings& cg) {
  const std::size_t n = data.n();
  if (m == 0) throw ConfigError("partition_shards: m must be at least 1");
  if (m > n) throw ConfigError("partition_shards: more workers than samples");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t block = n / m;
  std::vector<WorkerShard> shards;
  shards.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t lo = i * block;
    const std::size_t hi = (i + 1 == m) ? n : lo + block;
    WorkerShard shard;
    shard.worker_id = i;
    shard.local_indices.assign(order.begin() + lo, order.begin() + hi);
    shard.total_rows = n;
    shard.data = data.subset(shard.local_indices);
    shard.cg = cg;
    shards.push_back(std::move(shard));
  }
  return shards;
}

DenseMatrix rff_map(const DenseMatrix& features, const RffConfig& config) {
  if (!(config.sigma > 0.0)) throw RangeError("rff_map: sigma must be positive");
  if (config.target_dim == 0) throw RangeError("rff_map: target dimension must be positive");
  const std::size_t d = features.cols();
  const std::size_t big_d = config.target_dim;
  Rng rng = make_rng(config.seed, "rff");
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(config.sigma));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  DenseMatrix w(big_d, d);
  Vec b(big_d);
  for (std::size_t k = 0; k < big_d; ++k) {
    for (double& x : w.row(k)) x = normal(rng);
    b[k] = phase(rng);
  }
  const double scale = std::sqrt(2.0 / static_cast<double>(big_d));
  DenseMatrix z(features.rows(), big_d);
  const auto n = static_cast<std::ptrdiff_t>(features.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto x = features.row(i);
    auto out = z.row(i);
    for (std::size_t k = 0; k < big_d; ++k) out[k] = scale * std::cos(dot(w.row(k), x) + b[k]);
  }
  return z;
}

double estimate_sigma(const DenseMatrix& features, std::size_t pair_budget, std::uint64_t seed) {
  const std::size_t n = features.rows();
  if (n < 2) throw PreconditionError("estimate_sigma: needs at least two samples");
  if (pair_budget == 0) throw RangeError("estimate_sigma: pair budget must be positive");
  Rng rng = make_rng(seed, "sigma");
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < pair_budget; ++k) {
    std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    while (j == i) j = pick(rng);
    const Vec diff = subtract(features.row(i), features.row(j));
    sum += dot(diff, diff);
  }
  const double sigma = sum / static_cast<double>(pair_budget);
  if (!(sigma > 0.0)) throw RangeError("estimate_sigma: degenerate bandwidth (all points coincide)");
  return sigma;
}

LabeledDataset augment_replicate(const LabeledDataset& data, std::size_t factor, double noise_std,
                                 std::uint64_t seed) {
  if (factor == 0) throw RangeError("augment_replicate: factor must be at least 1");
  if (!(noise_std >= 0.0)) throw RangeError("augment_replicate: noise_std must be non-negative");
  const std::size_t n = data.n();
  LabeledDataset out;
  out.features = DenseMatrix(n * factor, data.d());
  out.labels.reserve(n * factor);
  Rng rng = make_rng(seed, "augment");
  std::normal_distribution<double> noise(0.0, noise_std > 0.0 ? noise_std : 1.0);
  for (std::size_t copy = 0; copy < factor; ++copy) {
    for (std::size_t i = 0; i < n; ++i) {
      auto dst = out.features.row(copy * n + i);
      const auto src = data.features.row(i);
      for (std::size_t j = 0; j < data.d(); ++j)
        dst[j] = src[j] + (noise_std > 0.0 ? noise(rng) : 0.0);
      out.labels.push_back(data.labels[i]);
    }
  }
  return out;
}

}  // namespace giant
