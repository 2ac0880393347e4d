#include "jacobi/variable.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace jacobi {

namespace {

struct Registry {
  std::shared_mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, std::uint32_t> ids;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

Variable Variable::named(std::string_view name) {
  auto& r = registry();
  {
    std::shared_lock lock(r.mutex);
    if (auto it = r.ids.find(std::string(name)); it != r.ids.end()) return Variable(it->second);
  }
  std::unique_lock lock(r.mutex);
  auto [it, inserted] = r.ids.emplace(std::string(name), static_cast<std::uint32_t>(r.names.size()));
  if (inserted) r.names.emplace_back(name);
  return Variable(it->second);
}

std::optional<Variable> Variable::lookup(std::string_view name) {
  auto& r = registry();
  std::shared_lock lock(r.mutex);
  if (auto it = r.ids.find(std::string(name)); it != r.ids.end()) return Variable(it->second);
  return std::nullopt;
}

const std::string& Variable::name() const {
  auto& r = registry();
  std::shared_lock lock(r.mutex);
  return r.names.at(id_);
}

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace jacobi
