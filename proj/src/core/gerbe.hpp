#pragma once
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "core/check.hpp"

namespace gerbecalc {

// Cech-local gerbe cocycle with connective structure: ambient automorphisms
// lambda_ij (0-forms) and transition 0-forms g_ijk glue the local objects,
// connections m_i, gluing 1-forms gamma_ij and curving 2-forms B_i carry the
// differential data.  derive() fills the associated fake-curvature 2-forms
// nu_i (ambient), gluing 2-forms delta_ij and curvature 3-forms omega_i.
// Pairs are ordered with i != j, triples ordered with pairwise distinct indices.
struct GerbeCocycle {
  EngineContext ec;
  int nsets = 0;
  std::map<std::pair<int, int>, Ambient> lambda;
  std::map<std::tuple<int, int, int>, Mat> g;
  std::vector<Connection> m;
  std::map<std::pair<int, int>, Mat> gamma;
  std::vector<Mat> B;
  // derived
  std::vector<Ambient> nu;
  std::map<std::pair<int, int>, Mat> delta;
  std::vector<Mat> omega;

  bool has_derived() const { return !nu.empty(); }
  const Ambient& lam(int i, int j) const { return lambda.at({i, j}); }
  const Mat& gijk(int i, int j, int k) const { return g.at({i, j, k}); }
  const Mat& gam(int i, int j) const { return gamma.at({i, j}); }
  const Mat& del(int i, int j) const { return delta.at({i, j}); }
  // conjugation by lambda_ij pulled back to w's simplex at vertex 0
  Mat lam_apply(int i, int j, const Mat& w) const;
};

// local data of a transformation between two connective structures sharing one
// underlying (lambda, g) cocycle: 1-forms E_i, ambient 1-forms pi_i, gluing
// 1-forms eta_ij and 2-forms alpha_i
struct TransformationTriple {
  std::vector<Mat> E;
  std::vector<Ambient> pi;
  std::map<std::pair<int, int>, Mat> eta;
  std::vector<Mat> alpha;

  const Mat& et(int i, int j) const { return eta.at({i, j}); }
};

// equivalence datum between two cocycles on one nerve: ambient 0-forms m_i,
// 0-forms delta_ij, optional 2-arrow 0-forms theta_i
struct EquivalenceData {
  std::vector<Ambient> m;
  std::map<std::pair<int, int>, Mat> delta;
  std::vector<Mat> theta;  // empty when absent

  const Mat& del(int i, int j) const { return delta.at({i, j}); }
};

struct EquivalencePair {
  GerbeCocycle c;       // source
  GerbeCocycle cprime;  // target
  EquivalenceData e;
};

GerbeCocycle derive(const GerbeCocycle& c);

// full equation suite; derives the associated fields first when absent
std::vector<CheckRecord> check_gerbe(const GerbeCocycle& c);

// transformation suite between target c and source cprime
std::vector<CheckRecord> check_triple(const GerbeCocycle& c, const GerbeCocycle& cp,
                                      const TransformationTriple& t);
GerbeCocycle apply_triple(const GerbeCocycle& cp, const TransformationTriple& t);

// equivalence of triples by 1-forms rho_i
TransformationTriple apply_rho(const GerbeCocycle& cp, const TransformationTriple& t,
                               const std::vector<Mat>& rho);
std::vector<CheckRecord> check_rho(const GerbeCocycle& cp, const TransformationTriple& t,
                                   const TransformationTriple& tp,
                                   const std::vector<Mat>& rho);

std::vector<CheckRecord> check_equivalence(const GerbeCocycle& c, const GerbeCocycle& cp,
                                           const EquivalenceData& e);
// horizontal composition (e2 after e1) and vertical composition of 2-arrows
EquivalenceData compose_equivalence(const EquivalenceData& e2, const EquivalenceData& e1);
std::vector<Mat> compose_2arrows(const std::vector<Mat>& after,
                                 const std::vector<Mat>& before);

// generators; every output satisfies its suite by construction
GerbeCocycle generate_trivial(Rng& rng, const EngineContext& ec);
GerbeCocycle generate_coboundary(Rng& rng, const EngineContext& ec, int nsets);
GerbeCocycle generate_abelian(Rng& rng, const EngineContext& ec);  // forces u2
TransformationTriple random_triple(Rng& rng, const GerbeCocycle& c);
std::vector<Mat> random_rho(Rng& rng, const GerbeCocycle& c);
EquivalencePair random_equivalence_pair(Rng& rng, const EngineContext& ec, int nsets,
                                        bool with_theta);

}  // namespace gerbecalc
