#include "treerep/report.hpp"

#include "json.hpp"

namespace treerep {

std::string to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  if (!r.algo.empty()) j["algo"] = r.algo;
  j["map"] = r.map ? nlohmann::ordered_json(*r.map) : nlohmann::ordered_json(nullptr);
  j["avg_distortion"] = r.avg_distortion;
  j["alpha"] = r.alpha;
  j["scale"] = r.scale;
  j["delta"] = r.delta ? nlohmann::ordered_json(*r.delta) : nlohmann::ordered_json(nullptr);
  if (!r.delta_mode.empty()) j["delta_mode"] = r.delta_mode;
  auto& stages = j["elapsed_ms"] = nlohmann::ordered_json::object();
  for (const auto& [stage, ms] : r.elapsed_ms) stages[stage] = ms;
  j["n_input"] = r.n_input;
  j["n_tree_nodes"] = r.n_tree_nodes;
  j["seed"] = r.seed;
  j["runs"] = r.runs;
  return j.dump(2) + "\n";
}

}  // namespace treerep
