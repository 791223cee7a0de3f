#pragma once
#include <map>
#include <utility>
#include <vector>

#include "core/check.hpp"

namespace gerbecalc {

// Cech-local torsor with connection: transition 0-forms g_ij over ordered pairs,
// connection 1-forms omega_i, one reference X-group connection mu.  Optional:
// gauge 0-forms gamma_i and connection rescalings h_i (G-valued 1-forms).
struct TorsorData {
  EngineContext ec;
  int nsets = 0;
  Connection mu;
  std::map<std::pair<int, int>, Mat> g;  // keys (i,j), i != j
  std::vector<Mat> omega;
  std::vector<Mat> gauge;  // empty or size nsets
  std::vector<Mat> scale;  // empty or size nsets

  const Mat& gij(int i, int j) const { return g.at({i, j}); }
};

// local curvature kappa_i = delta1_mu(omega_i)
Mat torsor_curvature(const TorsorData& t, int i);

// transport of the local connection eps_i = omega_i . mu along the (0,1)-edge of
// the target simplex: conjugation by (p01* omega_i)(p01* mu)
Ambient local_transport(const TorsorData& t, int i, int target_n);

std::vector<CheckRecord> check_torsor(const TorsorData& t);

// gauge transformation by the stored gamma_i: g'_ij = gamma_i g_ij gamma_j^-1,
// omega'_i = omega_i *_mu gamma_i^-1; the gauge slot of the result is cleared
TorsorData apply_gauge(const TorsorData& t);

TorsorData random_torsor(Rng& rng, const EngineContext& ec, int nsets, bool with_gauge,
                         bool with_scale);

}  // namespace gerbecalc
