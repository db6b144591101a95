#include "vfk/service/session_store.hpp"

#include <fstream>
#include <sstream>

#include "vfk/service/base64.hpp"

namespace vfk::service {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(bytes.data(), std::streamsize(bytes.size()));
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

SessionStore::SessionStore(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_ / "sessions");
  fs::create_directories(root_ / "blobs");
}

bool SessionStore::valid_id(const std::string& id) {
  if (id.size() != 32) return false;
  for (char c : id) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

std::uint64_t SessionStore::next_nonce() {
  std::lock_guard lock(nonce_mutex_);
  const fs::path path = root_ / "nonce";
  std::uint64_t n = 0;
  if (fs::exists(path)) n = std::stoull(read_file(path));
  write_file_atomic(path, std::to_string(n + 1));
  return n;
}

std::string SessionStore::create(const image::GrayImage& img, nlohmann::json fields) {
  const std::string pgm = image::save_pgm(img, true);
  const std::uint64_t nonce = next_nonce();
  const std::string id = sha256_hex(pgm + "\n" + std::to_string(nonce)).substr(0, 32);

  auto lock = lock_exclusive(id);
  write_file_atomic(root_ / "blobs" / (id + ".pgm"), pgm);
  nlohmann::json session = std::move(fields);
  session["id"] = id;
  session["nonce"] = nonce;
  session["width"] = img.width();
  session["height"] = img.height();
  session["image"] = "blobs/" + id + ".pgm";
  if (!session.contains("history")) session["history"] = nlohmann::json::array();
  write_file_atomic(root_ / "sessions" / (id + ".json"), session.dump(2));
  return id;
}

std::optional<nlohmann::json> SessionStore::load(const std::string& id) const {
  if (!valid_id(id)) return std::nullopt;
  const fs::path path = root_ / "sessions" / (id + ".json");
  if (!fs::exists(path)) return std::nullopt;
  return nlohmann::json::parse(read_file(path));
}

image::GrayImage SessionStore::load_image(const std::string& id) const {
  return image::load_pgm(read_file(root_ / "blobs" / (id + ".pgm")));
}

void SessionStore::save(const nlohmann::json& session) {
  const std::string id = session.at("id").get<std::string>();
  if (!valid_id(id)) throw InvalidArgument("invalid session id");
  write_file_atomic(root_ / "sessions" / (id + ".json"), session.dump(2));
}

std::shared_mutex& SessionStore::mutex_for(const std::string& id) {
  std::lock_guard lock(registry_mutex_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_unique<std::shared_mutex>();
  return *slot;
}

std::unique_lock<std::shared_mutex> SessionStore::lock_exclusive(const std::string& id) {
  return std::unique_lock(mutex_for(id));
}

std::shared_lock<std::shared_mutex> SessionStore::lock_shared(const std::string& id) {
  return std::shared_lock(mutex_for(id));
}

}  // namespace vfk::service
