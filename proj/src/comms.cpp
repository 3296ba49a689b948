#include "giant/comms.hpp"

namespace giant {

Fabric::Fabric(std::size_t workers, ExecutionMode mode) : workers_(workers), mode_(mode) {
  if (workers == 0) throw RangeError("fabric needs at least one worker");
}

void Fabric::check_alive() const {
  if (poisoned_) throw FabricPoisoned("fabric is poisoned by an earlier worker failure");
}

std::vector<Vec> Fabric::broadcast(std::span<const double> payload) {
  check_alive();
  std::vector<Vec> delivered(workers_, Vec(payload.begin(), payload.end()));
  stats_.rounds += 1;
  stats_.driver_to_worker_words += payload.size() * workers_;
  return delivered;
}

Vec Fabric::reduce(std::span<const Vec> per_worker) {
  check_alive();
  if (per_worker.size() != workers_)
    throw ProtocolError("reduce: expected one payload per worker");
  const std::size_t len = per_worker.front().size();
  Vec sum(len, 0.0);
  for (const Vec& p : per_worker) {
    if (p.size() != len) throw ProtocolError("reduce: payload lengths differ across workers");
    for (std::size_t k = 0; k < len; ++k) sum[k] += p[k];
  }
  stats_.rounds += 1;
  stats_.worker_to_driver_words += len * workers_;
  return sum;
}

Vec Fabric::reduce_sum(std::span<const Vec> per_worker) { return reduce(per_worker); }

Vec Fabric::reduce_concat_scalars(std::span<const Vec> per_worker) { return reduce(per_worker); }

}  // namespace giant
