#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include "jacobi/errors.hpp"
#include "jacobi/matrix.hpp"
#include "jacobi/rational_function.hpp"

namespace jacobi {

// ---- scalar helpers shared by the generic algorithms ---------------------------

inline Rational scale(const Rational& a, const Rational& k) { return a * k; }
inline Poly scale(const Poly& a, const Rational& k) { return a.scaled(k); }
inline RationalFunction scale(const RationalFunction& a, const Rational& k) { return a * RationalFunction(k); }

/// a / b where the division is known to be exact.
inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
inline RationalFunction exact_div(const RationalFunction& a, const RationalFunction& b) { return a / b; }
inline Poly exact_div(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error(ErrorKind::Numerical, "inexact polynomial division in fraction-free elimination");
  return *q;
}

inline bool is_zero_value(const Rational& a) { return a == 0; }
inline bool is_zero_value(const Poly& a) { return a.is_zero(); }
inline bool is_zero_value(const RationalFunction& a) { return a.is_zero(); }

// ---- characteristic polynomial ---------------------------------------------------

/// Monic characteristic polynomial det(lambda I - M); coeffs[i] multiplies
/// lambda^(n-i) and coeffs[0] = 1.
template <class T>
struct CharPoly {
  std::vector<T> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  const T& operator[](std::size_t i) const { return coeffs[i]; }
  /// a_i with a_0 = 1 and a_i = 0 outside [0, n].
  T a(long i) const { return i < 0 || i > static_cast<long>(degree()) ? T{} : coeffs[static_cast<std::size_t>(i)]; }
};

/// Faddeev-LeVerrier recursion: M_1 = I, c_k = -tr(A M_k) / k,
/// M_{k+1} = A M_k + c_k I. Only integer divisions occur.
template <class T>
CharPoly<T> char_poly(const Matrix<T>& a) {
  if (!a.is_square())
    throw Error(ErrorKind::NotSquare, "characteristic polynomial of a " + std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()) + " matrix");
  const std::size_t n = a.rows();
  CharPoly<T> p;
  p.coeffs.assign(n + 1, T{});
  p.coeffs[0] = T(1);
  Matrix<T> m = Matrix<T>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const Matrix<T> am = a * m;
    p.coeffs[k] = scale(am.trace(), Rational(-1, static_cast<long>(k)));
    if (k == n) break;
    m = am;
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, i) + p.coeffs[k];
  }
  return p;
}

template <class T>
std::string char_poly_to_string(const CharPoly<T>& p, const std::string& lambda = "lambda") {
  std::string s;
  const std::size_t n = p.degree();
  for (std::size_t i = 0; i <= n; ++i) {
    if (is_zero_value(p.coeffs[i])) continue;
    if (!s.empty()) s += " + ";
    const std::size_t e = n - i;
    std::string c;
    if constexpr (std::is_same_v<T, Rational>) {
      c = to_string(p.coeffs[i]);
    } else {
      c = "(" + p.coeffs[i].to_string() + ")";
    }
    if (e == 0) {
      s += c;
    } else {
      if (i != 0) s += c + "*";
      s += lambda + (e > 1 ? "^" + std::to_string(e) : "");
    }
  }
  return s.empty() ? "0" : s;
}

// ---- determinants -----------------------------------------------------------------

/// Fraction-free (Bareiss) determinant with row pivoting; every division is
/// exact, so polynomial entries never leave the polynomial ring.
template <class T>
T bareiss_determinant(Matrix<T> m) {
  if (!m.is_square()) throw Error(ErrorKind::NotSquare, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  T prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero_value(m(k, k))) {
      std::size_t r = k + 1;
      while (r < n && is_zero_value(m(r, k))) ++r;
      if (r == n) return T{};
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(r, c));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      m(i, k) = T{};
    }
    prev = m(k, k);
  }
  T det = m(n - 1, n - 1);
  return negate ? T{} - det : det;
}

// ---- Hurwitz ----------------------------------------------------------------------

/// n x n Hurwitz matrix, H_ik = a_{2k-i} (1-based).
template <class T>
Matrix<T> hurwitz_matrix(const CharPoly<T>& p) {
  const std::size_t n = p.degree();
  Matrix<T> h(n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t k = 1; k <= n; ++k)
      h(i - 1, k - 1) = p.a(2 * static_cast<long>(k) - static_cast<long>(i));
  return h;
}

template <class T>
struct HurwitzSequence {
  std::vector<T> delta;  // delta[j-1] = Delta_j
  T a_n;
};

template <class T>
HurwitzSequence<T> hurwitz_sequence(const CharPoly<T>& p) {
  const std::size_t n = p.degree();
  const Matrix<T> h = hurwitz_matrix(p);
  HurwitzSequence<T> hs;
  hs.a_n = p.a(static_cast<long>(n));
  for (std::size_t j = 1; j <= n; ++j) {
    Matrix<T> sub(j, j);
    for (std::size_t r = 0; r < j; ++r)
      for (std::size_t c = 0; c < j; ++c) sub(r, c) = h(r, c);
    hs.delta.push_back(bareiss_determinant(std::move(sub)));
  }
  return hs;
}

enum class Verdict { Stable, Unstable, Boundary };

const char* to_string(Verdict v);

/// Stable iff a_n > 0 and every Delta_j > 0; Boundary if nothing is negative
/// but something is zero; Unstable otherwise.
Verdict verdict_from_signs(Sign a_n, const std::vector<Sign>& deltas);
Verdict hurwitz_verdict(const CharPoly<Rational>& p);

// ---- product form -----------------------------------------------------------------

/// Coefficient matching of p against prod_j (lambda^2 + b_j lambda + c_j).
struct ProductFormConstraints {
  std::size_t m = 0;
  std::vector<Variable> b, c;
  /// a_i - a_i(b, c) with denominators of a_i cleared (numerators), i = 1..2m.
  std::vector<Poly> equations;
  /// 2 c_j - b_j^2, required positive.
  std::vector<Poly> inequalities;
};

/// Coefficients of prod_j (lambda^2 + b_j lambda + c_j): result[i] multiplies
/// lambda^(2m-i).
std::vector<Poly> product_form_coefficients(const std::vector<Variable>& b, const std::vector<Variable>& c);

/// Throws Error(OddDegree) for odd degree. Variables default to b1.., c1..
ProductFormConstraints product_form_constraints(const CharPoly<RationalFunction>& p, const std::vector<Variable>& b,
                                                const std::vector<Variable>& c);
ProductFormConstraints product_form_constraints(const CharPoly<RationalFunction>& p);

}  // namespace jacobi
