#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace revc {

// Interned identifier. Comparison is by intern id, which makes free-variable
// sets and substitution cheap.
class Name {
 public:
  Name() = default;
  explicit Name(std::string_view text);

  const std::string& str() const;
  std::uint32_t id() const { return id_; }
  bool empty() const { return id_ == 0; }

  // A name whose spelling has never been interned before, so it cannot clash
  // with any identifier that exists anywhere in the process.
  static Name fresh(std::string_view base);

  friend bool operator==(Name a, Name b) { return a.id_ == b.id_; }
  friend auto operator<=>(Name a, Name b) { return a.id_ <=> b.id_; }

 private:
  std::uint32_t id_ = 0;
};

}  // namespace revc

template <>
struct std::hash<revc::Name> {
  std::size_t operator()(revc::Name n) const noexcept { return n.id(); }
};
