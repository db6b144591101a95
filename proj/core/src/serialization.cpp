#include "vfk/serialization.hpp"

namespace vfk::snake {

using nlohmann::json;

namespace {

template <typename T>
T get_field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

void to_json(json& j, const Snake& s) {
  json pts = json::array();
  for (const Pixel& p : s.snaxels) pts.push_back({p.x, p.y});
  j = json{{"closed", s.closed}, {"snaxels", std::move(pts)}};
}

void from_json(const json& j, Snake& s) {
  if (!j.is_object()) throw InvalidArgument("snake must be a JSON object");
  s.closed = j.contains("closed") ? get_field<bool>(j, "closed") : false;
  s.snaxels.clear();
  const json& pts = j.at("snaxels");
  if (!pts.is_array()) throw InvalidArgument("field 'snaxels' must be an array");
  for (const json& p : pts) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      throw InvalidArgument("each snaxel must be an [x, y] integer pair");
    }
    s.snaxels.push_back({p[0].get<int>(), p[1].get<int>()});
  }
}

void to_json(json& j, const DeformResult& r) {
  j = json{{"snake", r.snake}, {"trace", r.energy_trace}, {"iterations", r.iterations}, {"converged", r.converged}};
}

void from_json(const json& j, DeformResult& r) {
  r.snake = j.at("snake").get<Snake>();
  r.energy_trace = get_field<std::vector<double>>(j, "trace");
  r.iterations = get_field<std::size_t>(j, "iterations");
  r.converged = get_field<bool>(j, "converged");
}

SnakeParams params_from_json(const json& j, const SnakeParams& defaults) {
  SnakeParams p = defaults;
  if (j.is_null()) return p;
  if (!j.is_object()) throw InvalidArgument("params must be a JSON object");
  if (j.contains("alpha")) p.alpha = get_field<double>(j, "alpha");
  if (j.contains("beta")) p.beta = get_field<double>(j, "beta");
  if (j.contains("gamma")) p.gamma = get_field<double>(j, "gamma");
  if (j.contains("per_snaxel")) {
    const json& per = j.at("per_snaxel");
    if (per.contains("alpha")) p.alpha_per_snaxel = get_field<std::vector<double>>(per, "alpha");
    if (per.contains("beta")) p.beta_per_snaxel = get_field<std::vector<double>>(per, "beta");
    if (per.contains("gamma")) p.gamma_per_snaxel = get_field<std::vector<double>>(per, "gamma");
  }
  if (j.contains("rigidity")) {
    const auto r = get_field<std::string>(j, "rigidity");
    if (r == "classical") {
      p.rigidity = RigidityForm::classical;
    } else if (r == "as-printed") {
      p.rigidity = RigidityForm::as_printed;
    } else {
      throw InvalidArgument("rigidity must be 'classical' or 'as-printed'");
    }
  }
  return p;
}

json params_to_json(const SnakeParams& p) {
  json j{{"alpha", p.alpha},
         {"beta", p.beta},
         {"gamma", p.gamma},
         {"rigidity", p.rigidity == RigidityForm::classical ? "classical" : "as-printed"}};
  json per = json::object();
  if (!p.alpha_per_snaxel.empty()) per["alpha"] = p.alpha_per_snaxel;
  if (!p.beta_per_snaxel.empty()) per["beta"] = p.beta_per_snaxel;
  if (!p.gamma_per_snaxel.empty()) per["gamma"] = p.gamma_per_snaxel;
  if (!per.empty()) j["per_snaxel"] = std::move(per);
  return j;
}

HardConstraints constraints_from_json(const json& j) {
  HardConstraints hc;
  if (j.is_null()) return hc;
  if (!j.is_object()) throw InvalidArgument("constraints must be a JSON object");
  if (j.contains("min_spacing") && !j["min_spacing"].is_null()) hc.min_spacing = get_field<double>(j, "min_spacing");
  if (j.contains("max_spacing") && !j["max_spacing"].is_null()) hc.max_spacing = get_field<double>(j, "max_spacing");
  if (j.contains("column_locked")) hc.column_locked = get_field<bool>(j, "column_locked");
  if (j.contains("stride")) hc.stride = get_field<int>(j, "stride");
  if (j.contains("bands")) {
    for (const json& b : j.at("bands")) {
      if (!b.is_array() || b.size() != 4) throw InvalidArgument("each band must be [x0, y0, x1, y1]");
      hc.bands.push_back({b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>()});
    }
  }
  return hc;
}

json constraints_to_json(const HardConstraints& hc) {
  json j{{"column_locked", hc.column_locked}, {"stride", hc.stride}};
  j["min_spacing"] = hc.min_spacing ? json(*hc.min_spacing) : json(nullptr);
  j["max_spacing"] = hc.max_spacing ? json(*hc.max_spacing) : json(nullptr);
  json bands = json::array();
  for (const Band& b : hc.bands) bands.push_back({b.x0, b.y0, b.x1, b.y1});
  j["bands"] = std::move(bands);
  return j;
}

}  // namespace vfk::snake

namespace vfk::kymo {

using nlohmann::json;

json spec_to_json(const VSpec& s) {
  return json{{"i", s.i},
              {"j", s.j},
              {"k", s.k},
              {"c", {s.c1, s.c2, s.c3}},
              {"eps", s.eps},
              {"periods", s.periods},
              {"amplitude", s.amplitude},
              {"w_min", s.w_min},
              {"jitter", s.jitter},
              {"noise", s.noise},
              {"seed", s.seed},
              {"height", s.height},
              {"edge_intensity", s.edge_intensity},
              {"period", s.period()}};
}

VSpec spec_from_json(const json& j, const VSpec& base) {
  VSpec s = base;
  if (j.is_null()) return s;
  if (!j.is_object()) throw InvalidArgument("spec must be a JSON object");
  try {
    if (j.contains("i")) s.i = j["i"].get<int>();
    if (j.contains("j")) s.j = j["j"].get<int>();
    if (j.contains("k")) s.k = j["k"].get<int>();
    if (j.contains("c")) {
      const auto c = j["c"].get<std::vector<double>>();
      if (c.size() != 3) throw InvalidArgument("field 'c' must hold three constants");
      s.c1 = c[0], s.c2 = c[1], s.c3 = c[2];
    }
    if (j.contains("eps")) s.eps = j["eps"].get<double>();
    if (j.contains("periods")) s.periods = j["periods"].get<int>();
    if (j.contains("amplitude")) s.amplitude = j["amplitude"].get<int>();
    if (j.contains("w_min")) s.w_min = j["w_min"].get<double>();
    if (j.contains("jitter")) s.jitter = j["jitter"].get<int>();
    if (j.contains("noise")) s.noise = j["noise"].get<int>();
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("height")) s.height = j["height"].get<int>();
    if (j.contains("edge_intensity")) s.edge_intensity = j["edge_intensity"].get<int>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed spec: ") + e.what());
  }
  return s;
}

json ground_truth_to_json(const Kymogram& k) {
  json edges = json::array();
  for (const EdgePair& e : k.ground_truth) edges.push_back({e.upper, e.lower});
  return json{{"midline", k.midline}, {"edges", std::move(edges)}};
}

json decision_to_json(const Decision& d) {
  json runs = json::array();
  for (const Run& r : d.runs) runs.push_back({std::string(1, r.symbol), r.length});
  json j{{"verdict", automata::to_string(d.verdict)}, {"runs", std::move(runs)}};
  if (d.violation) {
    j["violation"] = {{"run_index", d.violation->run_index},
                      {"position", d.violation->position},
                      {"symbol", std::string(1, d.violation->symbol)},
                      {"length", d.violation->length},
                      {"reason", d.violation->reason}};
  }
  return j;
}

}  // namespace vfk::kymo
