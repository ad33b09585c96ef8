#pragma once

#include <string>
#include <vector>

namespace ciliagraph {

struct EvalReport {
  double accuracy = 0.0;
  std::vector<double> per_class_accuracy;
  std::vector<std::vector<long long>> confusion;  // confusion[true][pred]
  double train_time_s = 0.0;
  double infer_time_s = 0.0;
  long long peak_memory_estimate = 0;  // bytes, best effort

  // Fixed-field JSON document (schemas/eval_report.schema.json).
  [[nodiscard]] std::string to_json(int indent = 2) const;
};

// Resident peak of this process in bytes (VmPeak), or 0 when unavailable.
long long peak_memory_bytes();

}  // namespace ciliagraph
