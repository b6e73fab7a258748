#include "revc/name.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace revc {
namespace {

struct SymbolTable {
  std::mutex mutex;
  std::deque<std::string> spellings{std::string{}};
  std::unordered_map<std::string, std::uint32_t> ids{{std::string{}, 0}};
  std::uint64_t fresh_counter = 0;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

std::uint32_t intern_locked(SymbolTable& t, std::string_view text) {
  auto it = t.ids.find(std::string(text));
  if (it != t.ids.end()) return it->second;
  auto id = static_cast<std::uint32_t>(t.spellings.size());
  t.spellings.emplace_back(text);
  t.ids.emplace(t.spellings.back(), id);
  return id;
}

}  // namespace

Name::Name(std::string_view text) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  id_ = intern_locked(t, text);
}

const std::string& Name::str() const {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  return t.spellings[id_];
}

Name Name::fresh(std::string_view base) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  std::string candidate;
  do {
    candidate = std::string(base) + "_" + std::to_string(++t.fresh_counter);
  } while (t.ids.contains(candidate));
  Name n;
  n.id_ = intern_locked(t, candidate);
  return n;
}

}  // namespace revc
