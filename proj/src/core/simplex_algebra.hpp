#pragma once
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/rational.hpp"

namespace gerbecalc {

inline constexpr int kMaxBaseDim = 6;
inline constexpr int kMaxSimplexOrder = 5;
// monomials are kept while base_deg + disp_deg <= D + headroom; the weight filtration is
// stable under every simplicial substitution, so the quotient is exact for all results
// with base degree <= D (plain base-degree truncation is not substitution-stable)
inline constexpr int kDispHeadroom = kMaxSimplexOrder;

struct AlgebraContext {
  int d = 2;  // base coordinates x1..xd
  int n = 0;  // simplex order: displacement slots 1..n
  int D = 2;  // base-degree budget
  bool operator==(const AlgebraContext&) const = default;
  void validate() const;
};

// canonical monomial: base exponents and the sign-normalized displacement part
// d_{s1}^{a1}...d_{sk}^{ak} with slots s and axes a both ascending (stored as bitmasks)
struct Monomial {
  std::array<uint8_t, kMaxBaseDim> exp{};
  uint8_t smask = 0;  // bit i-1 <-> slot i
  uint8_t amask = 0;  // bit a-1 <-> axis a

  int base_deg() const {
    int s = 0;
    for (auto e : exp) s += e;
    return s;
  }
  int disp_deg() const { return std::popcount(smask); }

  bool operator==(const Monomial& o) const = default;
  std::strong_ordering operator<=>(const Monomial& o) const {
    if (auto c = disp_deg() <=> o.disp_deg(); c != 0) return c;
    if (auto c = smask <=> o.smask; c != 0) return c;
    if (auto c = amask <=> o.amask; c != 0) return c;
    return exp <=> o.exp;
  }
};

class AlgebraElement {
 public:
  AlgebraContext ctx;
  std::map<Monomial, Rat> terms;

  AlgebraElement() = default;
  explicit AlgebraElement(const AlgebraContext& c) : ctx(c) {}

  static AlgebraElement zero(const AlgebraContext& c) { return AlgebraElement(c); }
  static AlgebraElement constant(const AlgebraContext& c, const Rat& r);
  static AlgebraElement one(const AlgebraContext& c) { return constant(c, 1); }
  static AlgebraElement base_var(const AlgebraContext& c, int axis);      // 1-based
  static AlgebraElement disp(const AlgebraContext& c, int slot, int axis);  // 1-based

  bool is_zero() const { return terms.empty(); }
  bool operator==(const AlgebraElement& o) const { return ctx == o.ctx && terms == o.terms; }

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement operator*(const Rat& r) const;

  Rat constant_term() const;
  int max_base_deg() const;
  AlgebraElement truncate_base(int deg) const;  // quotient by base degree > deg
  AlgebraElement partial_base(int axis) const;  // d/dx_axis

  // pullback along an arbitrary vertex map f: [0..n] -> [0..target_n], i.e.
  // x_a -> x_a + d_{f(0)}^a and d_t -> d_{f(t)} - d_{f(0)} (d_0 := 0)
  AlgebraElement simplicial_map(const std::vector<int>& f, int target_n) const;
  AlgebraElement pullback(const std::vector<int>& alpha, int target_n) const;  // injective alpha
  AlgebraElement degeneracy_subst(int i, int j) const;  // d_j -> d_i, same context
  AlgebraElement degeneracy_collapse(int i) const;      // s_i: identify x_i = x_{i+1}, into n-1

  std::string str() const;
  static AlgebraElement parse(const AlgebraContext& c, const std::string& s);

 private:
  void add_term(const Monomial& m, const Rat& c);
};

inline AlgebraElement operator*(const Rat& r, const AlgebraElement& a) { return a * r; }

}  // namespace gerbecalc
