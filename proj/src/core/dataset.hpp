#pragma once
#include <cstdint>
#include <optional>
#include <string>

#include "core/crossed_module.hpp"
#include "core/gerbe.hpp"
#include "core/torsor.hpp"

namespace gerbecalc {

// primed cocycle underlying an equivalence: only the gluing data (lambda', g')
// plus the comparison fields (m, delta, optional theta)
struct EquivalenceSection {
  std::map<std::pair<int, int>, Ambient> lambda_prime;
  std::map<std::tuple<int, int, int>, Mat> g_prime;
  EquivalenceData e;
};

struct CrossedModuleSection {
  CMFormData data;
  std::optional<Mat> chi;  // filled by normalize outputs
};

// one input/output file: shared context, nerve size, optional sections.
// every matrix is stored as {"deg": n, "mat": [k*k polynomial strings]} row-major;
// map keys are comma-joined index tuples ("0,1", "0,1,2")
struct Dataset {
  EngineContext ec;
  std::uint64_t seed = 0;
  int nsets = 0;

  std::optional<TorsorData> torsor;
  std::optional<GerbeCocycle> gerbe;
  std::optional<TransformationTriple> triple;
  std::optional<std::vector<Mat>> rho;
  std::optional<EquivalenceSection> equivalence;
  std::optional<CrossedModuleSection> crossed_module;
};

// stable two-space-indented UTF-8 JSON with sorted keys and a trailing newline
std::string serialize(const Dataset& ds);

// throws std::invalid_argument on syntax errors, schema violations, shapes that
// do not match the nerve, polynomials that fail to parse, or out-of-range context
Dataset parse_dataset(const std::string& text);

}  // namespace gerbecalc
