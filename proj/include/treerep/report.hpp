#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treerep {

struct EvalReport {
  std::string algo;  // empty when the report comes from evaluating a given tree
  std::optional<double> map;
  double avg_distortion = 0.0;
  double alpha = 1.0;
  std::string scale = "none";
  std::optional<double> delta;
  std::string delta_mode;
  std::vector<std::pair<std::string, double>> elapsed_ms;  // stage, wall-clock ms
  std::size_t n_input = 0;
  std::size_t n_tree_nodes = 0;
  std::uint64_t seed = 0;
  std::size_t runs = 1;
};

// One JSON object, keys as in EvalReport; unset optional values are written as null.
std::string to_json(const EvalReport& r);

// Wall-clock milliseconds since construction or the last lap().
class StageTimer {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace treerep
