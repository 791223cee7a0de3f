#pragma once

#include <vector>

#include "core/check.hpp"
#include "core/matrix_group.hpp"

namespace gerbecalc {

// A crossed module realised inside a matrix group: G1 is a normal subgroup of
// G0 cut out by an entry shape, delta is the inclusion, and G0 acts on G1 by
// conjugation.  Every equation is then exactly computable.
enum class SubgroupShape { center, full };

struct CrossedModule {
  EngineContext ec;
  SubgroupShape shape = SubgroupShape::center;

  bool in_g1(const Mat& f) const;
  Mat random_g1(Rng& rng, int n) const;
  Mat act(const Mat& g, const Mat& f) const { return conj(g, f); }  // ^g f
};

// degree-n form datum valued in the crossed module: g over the n-simplex
// algebra together with the arrows phi_0..phi_{n-1} over the (n-1)-simplex
// algebra witnessing its degeneracies
struct CMFormData {
  CrossedModule cm;
  int n = 1;
  Mat g;
  std::vector<Mat> phi;
};

struct NormalizeResult {
  Mat gprime;  // identity under every degeneracy
  Mat chi;     // G1-valued over the n-simplex algebra, chi * gprime == g
};

// tags ai, bij
std::vector<CheckRecord> check_AB(const CMFormData& dat);

// staged reduction; throws std::invalid_argument when check_AB fails and
// std::logic_error when a stage invariant or postcondition breaks
NormalizeResult normalize(const CMFormData& dat);

// tags ai, bij, cract, lemdeg
std::vector<CheckRecord> check_cm(const CMFormData& dat);

CMFormData make_oracle_data(Rng& rng, const EngineContext& ec, SubgroupShape shape,
                            int n);

}  // namespace gerbecalc
