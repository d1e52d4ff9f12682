#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qlax {

/// An interned indeterminate. Identity is the name; ids are assigned on first use
/// and fix the global variable order (lower id = more significant in lex order).
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);
  /// Handle for an id previously produced by interning.
  static Symbol from_id(std::uint32_t id) {
    Symbol s;
    s.id_ = id;
    return s;
  }

  std::uint32_t id() const { return id_; }
  const std::string& name() const;

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend auto operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

 private:
  std::uint32_t id_ = 0;
};

inline Symbol sym(std::string_view name) { return Symbol(name); }

}  // namespace qlax

template <>
struct std::hash<qlax::Symbol> {
  std::size_t operator()(qlax::Symbol s) const noexcept { return s.id(); }
};
