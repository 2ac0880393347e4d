#pragma once

// Internal: linear algebra in the quotient ring of a zero-dimensional ideal.

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "jacobi/poly.hpp"
#include "jacobi/upoly.hpp"

namespace jacobi::detail {

class LexIdeal {
 public:
  /// Computes the reduced lex basis; lex_vars runs from largest to smallest.
  LexIdeal(const std::vector<Poly>& generators, const std::vector<Variable>& lex_vars);
  ~LexIdeal();
  LexIdeal(LexIdeal&&) noexcept;
  LexIdeal& operator=(LexIdeal&&) noexcept;

  const std::vector<Poly>& basis() const;
  bool is_unit() const;
  /// Every variable has a pure power among the leading monomials.
  bool zero_dimensional() const;
  /// Dimension of the quotient as a Q-vector space (zero-dimensional only).
  std::size_t quotient_dimension() const;
  /// Minimal polynomial of multiplication by f, primitive.
  UPoly min_poly(const Poly& f) const;

  struct Separation {
    UPoly g;               // minimal polynomial of t
    std::vector<UPoly> h;  // target_i = h_i(t) in the quotient
  };
  /// Succeeds when the powers of t span the quotient.
  std::optional<Separation> separate(const Poly& t, const std::vector<Poly>& targets) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace jacobi::detail
