#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace jacobi {

/// Interned symbol. Variables are ordered by first registration: the earlier
/// a name is interned, the higher it ranks in lexicographic comparisons.
/// Loading a system interns its state variables first, then its parameters,
/// so that x > y > ... > a > b in the declared order.
class Variable {
 public:
  Variable() = default;

  static Variable named(std::string_view name);
  static std::optional<Variable> lookup(std::string_view name);
  /// Handle for an id previously returned by id(); no validation.
  static Variable from_id(std::uint32_t id) { return Variable(id); }

  const std::string& name() const;
  std::uint32_t id() const noexcept { return id_; }

  friend auto operator<=>(Variable, Variable) = default;

 private:
  explicit Variable(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = UINT32_MAX;
};

/// True if `name` is a valid identifier for the expression grammar:
/// a letter followed by letters, digits or underscores.
bool is_identifier(std::string_view name);

}  // namespace jacobi

template <>
struct std::hash<jacobi::Variable> {
  std::size_t operator()(jacobi::Variable v) const noexcept { return v.id(); }
};
