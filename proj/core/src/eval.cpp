#include "ciliagraph/eval.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ciliagraph {

std::string EvalReport::to_json(int indent) const {
  nlohmann::json doc;
  doc["schema"] = "ciliagraph/eval-report/v1";
  doc["accuracy"] = accuracy;
  doc["per_class_accuracy"] = per_class_accuracy;
  doc["confusion"] = confusion;
  doc["train_time_s"] = train_time_s;
  doc["infer_time_s"] = infer_time_s;
  doc["peak_memory_estimate"] = peak_memory_estimate;
  return doc.dump(indent);
}

long long peak_memory_bytes() {
  std::ifstream status("/proc/self/status");
  if (!status) return 0;
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmPeak:", 0) == 0) {
      std::istringstream fields(line.substr(7));
      long long kb = 0;
      fields >> kb;
      return kb * 1024;
    }
  }
  return 0;
}

}  // namespace ciliagraph
