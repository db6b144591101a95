#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <nlohmann/json.hpp>

#include "vfk/image.hpp"

namespace vfk::service {

/// Directory-backed session persistence.
///
/// Layout: <root>/sessions/<id>.json, <root>/blobs/<id>.pgm and a <root>/nonce
/// counter. Every file is written to a temporary name and renamed into place.
/// The session id is the SHA-256 of the image bytes followed by the creation
/// nonce, so replaying the same requests against an empty store reproduces the
/// same ids.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  // Stores the image and `fields` (merged into the session document) and
  // returns the new id.
  std::string create(const image::GrayImage& img, nlohmann::json fields);

  std::optional<nlohmann::json> load(const std::string& id) const;
  image::GrayImage load_image(const std::string& id) const;
  void save(const nlohmann::json& session);

  // Single writer, many readers per session id.
  std::unique_lock<std::shared_mutex> lock_exclusive(const std::string& id);
  std::shared_lock<std::shared_mutex> lock_shared(const std::string& id);

  static bool valid_id(const std::string& id);

 private:
  std::shared_mutex& mutex_for(const std::string& id);
  std::uint64_t next_nonce();

  std::filesystem::path root_;
  std::mutex registry_mutex_;
  std::map<std::string, std::unique_ptr<std::shared_mutex>> locks_;
  std::mutex nonce_mutex_;
};

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace vfk::service
