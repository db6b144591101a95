#pragma once

// JSON shapes shared by the CLI and the HTTP service.
//
//   Snake         {"closed":bool,"snaxels":[[x,y],...]}
//   DeformResult  {"snake":Snake,"trace":[e0,...],"iterations":n,"converged":bool}
//   Ground truth  {"midline":r,"edges":[[upper,lower],...]}

#include <nlohmann/json.hpp>

#include "vfk/kymo.hpp"
#include "vfk/snake.hpp"

namespace vfk::snake {

void to_json(nlohmann::json& j, const Snake& s);
void from_json(const nlohmann::json& j, Snake& s);
void to_json(nlohmann::json& j, const DeformResult& r);
void from_json(const nlohmann::json& j, DeformResult& r);

// {"alpha","beta","gamma","per_snaxel":{"alpha":[..],"beta":[..],"gamma":[..]},
//  "rigidity":"classical"|"as-printed"}; missing keys keep `defaults`.
SnakeParams params_from_json(const nlohmann::json& j, const SnakeParams& defaults = {});
nlohmann::json params_to_json(const SnakeParams& p);

// {"min_spacing","max_spacing","bands":[[x0,y0,x1,y1],..],"column_locked","stride"}
HardConstraints constraints_from_json(const nlohmann::json& j);
nlohmann::json constraints_to_json(const HardConstraints& hc);

}  // namespace vfk::snake

namespace vfk::kymo {

nlohmann::json spec_to_json(const VSpec& s);
// Missing keys keep the values in `base`.
VSpec spec_from_json(const nlohmann::json& j, const VSpec& base = {});

nlohmann::json ground_truth_to_json(const Kymogram& k);
nlohmann::json decision_to_json(const Decision& d);

}  // namespace vfk::kymo
