#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stochopt/core/types.hpp"

namespace stochopt {

// One row of per-iteration metrics.  fval/gnorm are recorded at the
// configured cadence only; evaluations made for tracing are excluded from
// the adp counter.  wall_ns is filled only when timing is enabled so that
// default traces are byte-identical across reruns.
struct TraceRecord {
  index_t k = 0;
  index_t adp = 0;
  double alpha = 0.0;
  index_t batch_size = 0;
  std::optional<double> fval;
  std::optional<double> gnorm;
  std::optional<std::int64_t> wall_ns;
};

class Trace {
 public:
  Trace() = default;
  Trace(std::string run_id, std::string config_digest)
      : run_id_(std::move(run_id)), config_digest_(std::move(config_digest)) {}

  void push(TraceRecord rec) { records_.push_back(std::move(rec)); }

  const std::vector<TraceRecord>& records() const { return records_; }
  std::vector<TraceRecord>& records() { return records_; }
  bool empty() const { return records_.empty(); }
  const TraceRecord& back() const { return records_.back(); }

  const std::string& run_id() const { return run_id_; }
  const std::string& config_digest() const { return config_digest_; }

  // Header comment (tool version + config digest), then
  // `k,adp,alpha,batch_size,fval,gnorm,wall_ns`; empty field for
  // unrecorded optionals.  Doubles use shortest round-trip formatting.
  void write_csv(std::ostream& os) const;

 private:
  std::string run_id_;
  std::string config_digest_;
  std::vector<TraceRecord> records_;
};

// Shortest round-trip decimal formatting (std::to_chars).
std::string format_double(double x);

// FNV-1a 64-bit hash used to stamp output files with the resolved config.
std::string config_digest(const std::string& canonical_config);

}  // namespace stochopt
