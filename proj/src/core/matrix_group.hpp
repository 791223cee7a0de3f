#pragma once
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/simplex_algebra.hpp"

namespace gerbecalc {

enum class GroupFlavor { u2, u3, gl3 };

int flavor_size(GroupFlavor f);
bool flavor_abelian(GroupFlavor f);
std::string flavor_name(GroupFlavor f);
GroupFlavor flavor_parse(const std::string& s);

// shared configuration for a whole dataset: base dimension, truncation budget, flavor
struct EngineContext {
  int d = 2;
  int D = 2;
  GroupFlavor flavor = GroupFlavor::u3;

  int k() const { return flavor_size(flavor); }
  AlgebraContext actx(int n) const { return AlgebraContext{d, n, D}; }
};

// k x k matrix over the simplex algebra, row-major
struct Mat {
  AlgebraContext ctx;
  int k = 0;
  std::vector<AlgebraElement> e;

  Mat() = default;
  Mat(const AlgebraContext& c, int size);
  static Mat identity(const AlgebraContext& c, int size);

  AlgebraElement& at(int i, int j) { return e[i * k + j]; }
  const AlgebraElement& at(int i, int j) const { return e[i * k + j]; }

  bool operator==(const Mat& o) const = default;
  bool is_identity() const;

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Rat& r) const;
  Mat inverse() const;  // constant part must be invertible; Neumann tail

  Mat pullback(const std::vector<int>& alpha, int target_n) const;
  Mat simplicial_map(const std::vector<int>& f, int target_n) const;
  Mat degeneracy_collapse(int i) const;

  // base-polynomial-only matrices support the classical calculus
  Mat partial_base(int axis) const;
};

Mat conj(const Mat& u, const Mat& g);  // u g u^-1

// exact inverse of a rational matrix; throws std::domain_error when singular
std::vector<Rat> rat_mat_inverse(const std::vector<Rat>& m, int k);

// flavor membership: unitriangular = unit diagonal and zero below it,
// general_linear = invertible constant term
bool in_flavor(GroupFlavor f, const Mat& m);
void require_flavor(GroupFlavor f, const Mat& m, const char* what);

// elementary generators I + E_{i,i+1} (plus the lower ones for gl3); automorphism
// equality is decided on these, since conjugation is linear over the algebra
std::vector<Mat> elementary_generators(const EngineContext& ec, const AlgebraContext& c);

// automorphism of the flavor group given by ambient conjugation
struct Ambient {
  Mat u;

  Mat apply(const Mat& g) const { return conj(u, g); }
  Ambient compose(const Ambient& o) const { return Ambient{u * o.u}; }
  Ambient inverse() const { return Ambient{u.inverse()}; }
  Ambient pullback(const std::vector<int>& alpha, int target_n) const {
    return Ambient{u.pullback(alpha, target_n)};
  }
};

bool ambient_normalizes(const EngineContext& ec, const Mat& u);
bool aut_equal(const EngineContext& ec, const Ambient& a, const Ambient& b);
bool aut_is_identity(const EngineContext& ec, const Ambient& a);

// connection on the X-group: ambient matrix over the 1-simplex algebra whose
// restriction to the diagonal acts trivially on the group
struct Connection {
  Ambient amb;  // entries in actx(1)

  static Connection canonical(const EngineContext& ec);
  bool is_canonical() const { return amb.u.is_identity(); }
  // transport along the edge (a,b) of a larger simplex
  Ambient edge(int a, int b, int target_n) const { return amb.pullback({a, b}, target_n); }
};

bool connection_valid(const EngineContext& ec, const Connection& mu);
void require_connection(const EngineContext& ec, const Connection& mu);

// curvature kappa_mu = (p01* mu)(p12* mu)(p02* mu)^-1 over the 2-simplex
Ambient connection_curvature(const Connection& mu);

// mu' = alpha o mu for an ambient-valued 1-form alpha acting trivially on the diagonal
Connection connection_perturb(const EngineContext& ec, const Connection& mu,
                              const Ambient& alpha);

// deterministic generation -----------------------------------------------------

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  std::uint64_t raw() { return g(); }
  std::int64_t range(std::int64_t lo, std::int64_t hi);  // inclusive, raw modulo
  Rat coeff();                                           // small nonzero rational
  Rng fork(std::uint64_t salt) { return Rng(raw() ^ (salt * 0x9e3779b97f4a7c15ull)); }
};

// polynomial in the base variables only, degree <= 2, small rational coefficients
AlgebraElement random_base_poly(Rng& rng, const AlgebraContext& c);
// group element over actx(n) (0-form when n = 0; offsets in every displacement degree)
Mat random_group_element(Rng& rng, const EngineContext& ec, int n);
// random connection: I + sum_a c_a(x) d1^a M with upper-triangular M
Connection random_connection(Rng& rng, const EngineContext& ec);
// ambient-valued 1-form acting trivially on the diagonal (a connection perturbation)
Ambient random_connection_perturbation(Rng& rng, const EngineContext& ec);

}  // namespace gerbecalc
