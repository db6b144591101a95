#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "vfk/kymo.hpp"
#include "vfk/service/session_store.hpp"

namespace vfk::service {

class BadRequest : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

struct Response {
  int status = 200;
  nlohmann::json body;
};

// Maps exceptions to {"error": code, "detail": text} with a status code:
// 400 malformed request, 404 unknown resource, 422 domain error, 500 otherwise.
Response error_response(const std::exception& e);

struct Synthesis {
  kymo::VSpec spec;
  kymo::Kymogram kymogram;
  std::string pgm;  // binary P5 bytes
};

// Generation followed by rendering; the single path used by CLI and HTTP.
Synthesis synthesize(const kymo::VSpec& spec);

// {"preset"?, "spec"?, "periods"?, "seed"} -> VSpec. The seed is mandatory.
kymo::VSpec resolve_spec(const nlohmann::json& body);

// Printable ASCII plus every symbol of `pattern`, sorted.
std::u32string default_dfa_alphabet(std::u32string_view pattern);

enum class FieldChoice { intensity, gradient };
FieldChoice parse_field_choice(std::string_view name);
std::string_view to_string(FieldChoice f);

/// Transport-independent request handlers. Every method returns a Response
/// and never throws.
class Api {
 public:
  explicit Api(std::filesystem::path store_root);

  Response synthesize(const nlohmann::json& body);
  Response upload(std::string_view pgm_bytes);
  Response deform(const std::string& session_id, const nlohmann::json& body);
  Response decide(const nlohmann::json& body);
  Response dfa(const nlohmann::json& body);
  Response pair(const nlohmann::json& body);
  Response presets() const;
  Response session(const std::string& session_id);

  SessionStore& store() { return store_; }

 private:
  SessionStore store_;
};

nlohmann::json presets_json();

}  // namespace vfk::service
