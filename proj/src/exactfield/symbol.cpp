#include "qlax/exactfield/symbol.hpp"

#include <deque>
#include <mutex>
#include <string>
#include <unordered_map>

namespace qlax {

namespace {

// Append-only intern table. Entries are never modified or removed, so a
// Symbol handed out once stays valid and means the same thing for the whole run.
struct SymbolTable {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, std::uint32_t> ids;

  SymbolTable() { names.emplace_back("<unset>"); }

  std::uint32_t intern(std::string_view name) {
    std::lock_guard lock(mutex);
    auto it = ids.find(std::string(name));
    if (it != ids.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names.size());
    names.emplace_back(name);
    ids.emplace(names.back(), id);
    return id;
  }

  const std::string& name(std::uint32_t id) {
    std::lock_guard lock(mutex);
    return names.at(id);
  }
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

Symbol::Symbol(std::string_view name) : id_(table().intern(name)) {}

const std::string& Symbol::name() const { return table().name(id_); }

}  // namespace qlax
