#include "vfk/service/api.hpp"

#include <algorithm>
#include <optional>

#include "vfk/automata.hpp"
#include "vfk/bijections.hpp"
#include "vfk/serialization.hpp"
#include "vfk/service/base64.hpp"
#include "vfk/utf8.hpp"

namespace vfk::service {

using nlohmann::json;

namespace {

json error_body(std::string_view code, std::string_view detail) {
  return json{{"error", code}, {"detail", detail}};
}

template <typename T>
std::optional<T> optional_field(const json& body, const char* key) {
  if (!body.contains(key) || body[key].is_null()) return std::nullopt;
  try {
    return body[key].get<T>();
  } catch (const json::exception&) {
    throw BadRequest(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T required_field(const json& body, const char* key) {
  auto v = optional_field<T>(body, key);
  if (!v) throw BadRequest(std::string("missing field '") + key + "'");
  return *v;
}

void require_object(const json& body) {
  if (!body.is_object()) throw BadRequest("request body must be a JSON object");
}

template <typename F>
Response guarded(F&& f) {
  try {
    return Response{200, f()};
  } catch (const std::exception& e) {
    return error_response(e);
  }
}

std::optional<int> midline_or_null(const image::GrayImage& img) {
  try {
    return kymo::estimate_midline(img);
  } catch (const kymo::NoSignalError&) {
    return std::nullopt;
  }
}

json optional_to_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

bijections::Natural natural_arg(const json& v) {
  if (v.is_number_unsigned()) return bijections::Natural(v.get<std::uint64_t>());
  if (v.is_number_integer()) {
    const auto n = v.get<std::int64_t>();
    if (n < 0) throw InvalidArgument("pair arguments must be non-negative");
    return bijections::Natural(n);
  }
  if (v.is_string()) return bijections::parse_natural(v.get<std::string>());
  throw BadRequest("pair arguments must be integers or decimal strings");
}

struct DeformSettings {
  snake::SnakeParams params;
  std::size_t max_iter;
  int window_radius;
  FieldChoice field;
  bool step_mode;
};

DeformSettings deform_settings(const json& body, const json& state) {
  DeformSettings s;
  json params = body.contains("params") ? body["params"] : json(nullptr);
  if (params.is_null() && state.contains("params")) params = state["params"];
  s.params = snake::params_from_json(params, kymo::default_temporal_params());
  s.step_mode = optional_field<bool>(body, "step_mode").value_or(false);
  const auto max_iter = optional_field<std::int64_t>(body, "max_iter").value_or(std::int64_t(kymo::kDefaultTemporalMaxIter));
  if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
  s.max_iter = s.step_mode ? 1 : std::size_t(max_iter);
  s.window_radius = optional_field<int>(body, "window_radius")
                        .value_or(state.value("window_radius", snake::kDefaultWindowRadius));
  const auto field = optional_field<std::string>(body, "field");
  s.field = field ? parse_field_choice(*field) : parse_field_choice(state.value("field", "intensity"));
  return s;
}

kymo::FieldSource to_source(FieldChoice f) {
  return f == FieldChoice::intensity ? kymo::FieldSource::intensity_is_gradient
                                     : kymo::FieldSource::gradient_of_intensity;
}

}  // namespace

Response error_response(const std::exception& e) {
  const std::string detail = e.what();
  if (dynamic_cast<const NotFound*>(&e)) return {404, error_body("not_found", detail)};
  if (dynamic_cast<const BadRequest*>(&e)) return {400, error_body("bad_request", detail)};
  if (dynamic_cast<const json::exception*>(&e)) return {400, error_body("bad_request", detail)};
  if (dynamic_cast<const automata::RejectedInputError*>(&e)) return {422, error_body("rejected_input", detail)};
  if (dynamic_cast<const automata::DecodeError*>(&e)) return {422, error_body("decode_error", detail)};
  if (dynamic_cast<const kymo::ForeignSymbolError*>(&e)) return {422, error_body("foreign_symbol", detail)};
  if (dynamic_cast<const bijections::NonReducedError*>(&e)) return {422, error_body("non_reduced", detail)};
  if (dynamic_cast<const snake::InvalidSnake*>(&e)) return {422, error_body("invalid_snake", detail)};
  if (dynamic_cast<const InvalidArgument*>(&e)) return {422, error_body("invalid_argument", detail)};
  if (dynamic_cast<const snake::InfeasibleConstraints*>(&e)) return {422, error_body("infeasible_constraints", detail)};
  if (dynamic_cast<const kymo::UnsatisfiableSpec*>(&e)) return {422, error_body("unsatisfiable_spec", detail)};
  if (dynamic_cast<const kymo::RenderError*>(&e)) return {422, error_body("render_error", detail)};
  if (dynamic_cast<const kymo::NoSignalError*>(&e)) return {422, error_body("no_signal", detail)};
  if (dynamic_cast<const image::PgmError*>(&e)) return {422, error_body("pgm_error", detail)};
  if (dynamic_cast<const Error*>(&e)) return {422, error_body("domain_error", detail)};
  return {500, error_body("internal", detail)};
}

Synthesis synthesize(const kymo::VSpec& spec) {
  Synthesis out{spec, kymo::render_kymogram(kymo::generate_vstring(spec), spec), {}};
  out.pgm = image::save_pgm(out.kymogram.image, true);
  return out;
}

kymo::VSpec resolve_spec(const json& body) {
  require_object(body);
  kymo::VSpec base;
  if (auto name = optional_field<std::string>(body, "preset")) base = kymo::preset(kymo::parse_preset(*name));
  kymo::VSpec spec = kymo::spec_from_json(body.contains("spec") ? body["spec"] : json(nullptr), base);
  if (auto periods = optional_field<int>(body, "periods")) spec.periods = *periods;
  auto seed = optional_field<std::uint64_t>(body, "seed");
  if (!seed && body.contains("spec") && body["spec"].contains("seed")) seed = spec.seed;
  if (!seed) throw BadRequest("missing field 'seed': randomized operations need an explicit seed");
  spec.seed = *seed;
  spec.validate();
  return spec;
}

std::u32string default_dfa_alphabet(std::u32string_view pattern) {
  std::u32string out;
  for (char32_t c = 0x20; c <= 0x7E; ++c) out.push_back(c);
  out.append(pattern);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FieldChoice parse_field_choice(std::string_view name) {
  if (name == "intensity") return FieldChoice::intensity;
  if (name == "gradient") return FieldChoice::gradient;
  throw InvalidArgument("field must be 'intensity' or 'gradient'");
}

std::string_view to_string(FieldChoice f) { return f == FieldChoice::intensity ? "intensity" : "gradient"; }

json presets_json() {
  json out = json::object();
  for (const auto& [p, spec] : kymo::preset_table()) out[std::string(kymo::to_string(p))] = kymo::spec_to_json(spec);
  return out;
}

Api::Api(std::filesystem::path store_root) : store_(std::move(store_root)) {}

Response Api::synthesize(const json& body) {
  return guarded([&] {
    const Synthesis syn = service::synthesize(resolve_spec(body));
    const auto midline = midline_or_null(syn.kymogram.image);
    json fields{{"origin", "synthesize"},
                {"spec", kymo::spec_to_json(syn.spec)},
                {"vstring", syn.kymogram.source.text()},
                {"ground_truth", kymo::ground_truth_to_json(syn.kymogram)},
                {"midline_estimate", optional_to_json(midline)}};
    const std::string id = store_.create(syn.kymogram.image, fields);
    return json{{"session_id", id},
                {"width", syn.kymogram.image.width()},
                {"height", syn.kymogram.image.height()},
                {"pgm_base64", base64_encode(syn.pgm)},
                {"vstring", syn.kymogram.source.text()},
                {"ground_truth", fields["ground_truth"]},
                {"spec", fields["spec"]},
                {"midline_estimate", fields["midline_estimate"]}};
  });
}

Response Api::upload(std::string_view pgm_bytes) {
  return guarded([&] {
    const image::GrayImage img = image::load_pgm(pgm_bytes);
    const auto midline = midline_or_null(img);
    json fields{{"origin", "upload"}, {"midline_estimate", optional_to_json(midline)}};
    const std::string id = store_.create(img, fields);
    return json{{"session_id", id},
                {"width", img.width()},
                {"height", img.height()},
                {"midline_estimate", fields["midline_estimate"]}};
  });
}

Response Api::deform(const std::string& session_id, const json& body) {
  return guarded([&] {
    require_object(body);
    auto lock = store_.lock_exclusive(session_id);
    auto loaded = store_.load(session_id);
    if (!loaded) throw NotFound("no session '" + session_id + "'");
    json session = std::move(*loaded);
    const json state = session.value("state", json::object());
    const DeformSettings s = deform_settings(body, state);
    const image::GrayImage img = store_.load_image(session_id);

    json next_state{{"params", snake::params_to_json(s.params)},
                    {"window_radius", s.window_radius},
                    {"field", to_string(s.field)}};
    json result;
    if (body.contains("init") && !body["init"].is_null()) {
      const json& init = body["init"];
      require_object(init);
      int midline;
      if (auto m = optional_field<int>(init, "midline")) {
        midline = *m;
      } else {
        midline = kymo::estimate_midline(img);
      }
      const int fit = std::max(0, std::min(midline, img.height() - 1 - midline));
      const int bhw = optional_field<int>(init, "band_halfwidth").value_or(fit);
      const kymo::TemporalSnakes t =
          kymo::temporal_snake_transform(img, s.params, midline, bhw, to_source(s.field), s.max_iter);
      result = json{{"upper", t.upper}, {"lower", t.lower}};
      next_state.update({{"mode", "pair"}, {"midline", midline}, {"band_halfwidth", bhw},
                         {"upper", t.upper.snake}, {"lower", t.lower.snake}});
    } else if (body.contains("snake") && !body["snake"].is_null()) {
      const snake::Snake s0 = body["snake"].get<snake::Snake>();
      const snake::HardConstraints hc =
          snake::constraints_from_json(body.contains("constraints") ? body["constraints"] : json(nullptr));
      const snake::DeformResult r = snake::deform(s0, kymo::external_field(img, to_source(s.field)), s.params, hc,
                                                  s.max_iter, s.window_radius);
      result = r;
      next_state.update({{"mode", "single"}, {"snake", r.snake}, {"constraints", snake::constraints_to_json(hc)}});
    } else if (state.value("mode", "") == "pair") {
      const int midline = state.at("midline").get<int>();
      const int bhw = state.at("band_halfwidth").get<int>();
      const image::ScalarField field = kymo::external_field(img, to_source(s.field));
      auto run = [&](const char* key, int lo, int hi) {
        return snake::deform(state.at(key).get<snake::Snake>(), field, s.params,
                             kymo::column_band_constraints(img.width(), lo, hi), s.max_iter);
      };
      const snake::DeformResult upper = run("upper", midline - bhw, midline);
      const snake::DeformResult lower = run("lower", midline, midline + bhw);
      result = json{{"upper", upper}, {"lower", lower}};
      next_state.update({{"mode", "pair"}, {"midline", midline}, {"band_halfwidth", bhw},
                         {"upper", upper.snake}, {"lower", lower.snake}});
    } else if (state.value("mode", "") == "single") {
      const snake::HardConstraints hc = snake::constraints_from_json(state.at("constraints"));
      const snake::DeformResult r =
          snake::deform(state.at("snake").get<snake::Snake>(), kymo::external_field(img, to_source(s.field)),
                        s.params, hc, s.max_iter, s.window_radius);
      result = r;
      next_state.update({{"mode", "single"}, {"snake", r.snake}, {"constraints", state.at("constraints")}});
    } else {
      throw BadRequest("deform needs 'init' or 'snake' when the session has no retained state");
    }

    auto& history = session["history"];
    const std::size_t index = history.size();
    history.push_back(json{{"index", index},
                           {"step_mode", s.step_mode},
                           {"params", next_state["params"]},
                           {"mode", next_state["mode"]},
                           {"result", result}});
    session["state"] = next_state;
    store_.save(session);

    result["session_id"] = session_id;
    result["history_index"] = index;
    return result;
  });
}

Response Api::decide(const json& body) {
  return guarded([&] {
    require_object(body);
    std::string text = required_field<std::string>(body, "vstring");
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    kymo::Proportions p;
    if (auto c = optional_field<std::vector<double>>(body, "c")) {
      if (c->size() != 3) throw BadRequest("field 'c' must hold three constants");
      p.c1 = (*c)[0], p.c2 = (*c)[1], p.c3 = (*c)[2];
    }
    p.eps = optional_field<double>(body, "eps").value_or(p.eps);
    return kymo::decision_to_json(kymo::decide_vncfl(kymo::VString(std::move(text)), p));
  });
}

Response Api::dfa(const json& body) {
  return guarded([&] {
    require_object(body);
    const std::u32string input = utf8::decode(required_field<std::string>(body, "input"));
    automata::RunResult r;
    if (auto enc = optional_field<std::string>(body, "encoded")) {
      r = automata::simulate_encoded_dfa(*enc, input);
    } else {
      const std::u32string pattern = utf8::decode(required_field<std::string>(body, "pattern"));
      const auto alphabet = optional_field<std::string>(body, "alphabet");
      const std::u32string sigma = alphabet ? utf8::decode(*alphabet) : default_dfa_alphabet(pattern);
      r = automata::dfa_run(automata::build_substring_dfa(pattern, sigma), input);
    }
    return json{{"verdict", automata::to_string(r.verdict)}, {"final_state", r.final_state}};
  });
}

Response Api::pair(const json& body) {
  return guarded([&] {
    require_object(body);
    const std::string op = required_field<std::string>(body, "op");
    if (!body.contains("args") || !body["args"].is_array()) throw BadRequest("missing array field 'args'");
    std::vector<bijections::Natural> args;
    for (const json& a : body["args"]) args.push_back(natural_arg(a));
    auto arity = [&](std::size_t n) {
      if (args.size() != n) {
        throw BadRequest("op '" + op + "' takes " + std::to_string(n) + " arguments, got " +
                         std::to_string(args.size()));
      }
    };
    using bijections::to_decimal;
    if (op == "encode") {
      arity(2);
      return json{{"result", to_decimal(bijections::pair(args[0], args[1]))}};
    }
    if (op == "decode") {
      arity(1);
      const auto [a, b] = bijections::unpair(args[0]);
      return json{{"result", {to_decimal(a), to_decimal(b)}}};
    }
    if (op == "triple") {
      arity(3);
      return json{{"result", to_decimal(bijections::triple(args[0], args[1], args[2]))}};
    }
    if (op == "untriple") {
      arity(1);
      const auto [a, b, c] = bijections::untriple(args[0]);
      return json{{"result", {to_decimal(a), to_decimal(b), to_decimal(c)}}};
    }
    throw BadRequest("op must be one of encode, decode, triple, untriple");
  });
}

Response Api::presets() const { return Response{200, json{{"presets", presets_json()}}}; }

Response Api::session(const std::string& session_id) {
  return guarded([&] {
    auto lock = store_.lock_shared(session_id);
    auto loaded = store_.load(session_id);
    if (!loaded) throw NotFound("no session '" + session_id + "'");
    return std::move(*loaded);
  });
}

}  // namespace vfk::service
