#pragma once
#include <map>
#include <vector>

#include "core/matrix_group.hpp"

namespace gerbecalc {

// Combinatorial G-valued n-form: matrix over the n-simplex algebra that collapses
// to the identity along every degeneracy.  Equivalently every displacement
// monomial uses all n slots, so the offsets sit in top displacement degree.
// Aut-valued n-forms are ambient matrices whose degeneracy collapses act
// trivially on the group.  The degree of a form is its context's simplex order.
bool is_group_form(const EngineContext& ec, const Mat& g);
bool is_aut_form(const EngineContext& ec, const Ambient& v);

std::vector<int> face_map(int j, int n);  // vertices of the j-th face of the n-simplex
int perm_sign(const std::vector<int>& p);

// differentials; input over its own simplex, output one order up.
// delta0  : g(x)^-1 mu(g(y))            delta0_tilde : mu(g(y)) g(x)^-1
// delta1  : w01 mu01(w12) w02^-1        delta1_full  : w01 mu01(w12) [mu01 mu12](w20)
// delta2  : mu01(w123) w013 w032 w021
// delta3  : mu01(w1234) w0134 w0123 w0243 w0142
// delta4  : mu01(w o f0) prod_j (w o fj)^(-1)^j
Mat delta0(const Connection& mu, const Mat& g);
Mat delta0_tilde(const Connection& mu, const Mat& g);
Mat delta1(const Connection& mu, const Mat& om);
Mat delta1_full(const Connection& mu, const Mat& om);
Mat delta2(const Connection& mu, const Mat& om);
Mat delta3(const Connection& mu, const Mat& om);
Mat delta4(const Connection& mu, const Mat& om);
Mat delta_n(const Connection& mu, const Mat& om);  // dispatch on om.ctx.n

// same formulas with the (0,1)-edge transport supplied directly as an ambient
// matrix over the target simplex (the torsor suite feeds composite transports)
Mat delta0_with(const Ambient& t, const Mat& g);
Mat delta1_with(const Ambient& t01, const Mat& om);
Mat delta2_with(const Ambient& t01, const Mat& om);

// Aut-valued differentials; transport is the adjoint action of the connection
Ambient aut_delta0(const EngineContext& ec, const Connection& mu, const Ambient& v);
Ambient aut_delta1(const EngineContext& ec, const Connection& mu, const Ambient& v);
Ambient aut_delta2(const EngineContext& ec, const Connection& mu, const Ambient& v);
Ambient aut_delta3(const EngineContext& ec, const Connection& mu, const Ambient& v);
Ambient aut_delta_n(const EngineContext& ec, const Connection& mu, const Ambient& v);
Ambient aut_delta1_with(const Ambient& t01, const Ambient& v);
Ambient aut_delta2_with(const Ambient& t01, const Ambient& v);

// brackets over the (m+n)-simplex, m and n read from the operand contexts.
// bra_gg : [f,g]  = commutator of f|0..m and mu0m(g|m..m+n)
// bra_ag : [u,g]  = u(mu0m(g)) mu0m(g)^-1
// bra_ga : [g,u]  = g . (mu0m-conjugated u)(g^-1)
// doubbra: [[u,g]] = g^-1 u(g), both operands already over the same simplex
Mat bra_gg(const Connection& mu, const Mat& f, const Mat& g);
Mat bra_ag(const Connection& mu, const Ambient& u, const Mat& g);
Mat bra_ga(const Connection& mu, const Mat& g, const Ambient& u);
Mat doubbra(const Ambient& u, const Mat& g);

// right action of 0-forms on connection 1-forms: w -> g(x)^-1 w mu(g(y))
Mat star_action(const Connection& mu, const Mat& om, const Mat& g);

// classical shadow: coefficients of the top-degree displacement monomials,
// indexed by ascending axis tuples, valued in base-only matrices
struct ClassicalForm {
  AlgebraContext ctx;  // order-0 context
  int k = 0;
  int degree = 0;
  std::map<std::vector<int>, Mat> comps;  // zero components pruned

  static ClassicalForm zero(const AlgebraContext& c, int size, int degree);
  Mat component(const std::vector<int>& axes) const;  // ascending
  bool is_zero() const { return comps.empty(); }
  bool operator==(const ClassicalForm& o) const = default;

  // quotient by base degree > deg; classical statements about truncated data are
  // certified inside the base-degree budget, junk beyond it is not represented
  ClassicalForm truncate_base(int deg) const;

  ClassicalForm operator+(const ClassicalForm& o) const;
  ClassicalForm operator-(const ClassicalForm& o) const;
  ClassicalForm operator-() const;
};

ClassicalForm classical_extract(const EngineContext& ec, const Mat& g);
ClassicalForm wedge(const ClassicalForm& a, const ClassicalForm& b);
ClassicalForm ext_d(const ClassicalForm& a);
// graded bracket a^b - (-1)^{pq} b^a
ClassicalForm gbracket(const ClassicalForm& a, const ClassicalForm& b);

Mat random_group_form(Rng& rng, const EngineContext& ec, int n);
Ambient random_aut_form(Rng& rng, const EngineContext& ec, int n);

}  // namespace gerbecalc
