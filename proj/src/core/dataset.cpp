#include "core/dataset.hpp"

#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace gerbecalc {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument("dataset: " + msg); }

std::string pair_key(int i, int j) { return std::to_string(i) + "," + std::to_string(j); }
std::string triple_key(int i, int j, int k) {
  return std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k);
}

json mat_json(const Mat& m) {
  json a = json::array();
  for (const AlgebraElement& e : m.e) a.push_back(e.str());
  return json{{"deg", m.ctx.n}, {"mat", std::move(a)}};
}

Mat mat_parse(const EngineContext& ec, const json& j, int deg, const std::string& what) {
  if (!j.is_object() || !j.contains("deg") || !j.contains("mat"))
    bad(what + ": expected {deg, mat}");
  if (j.at("deg").get<int>() != deg)
    bad(what + ": degree " + j.at("deg").dump() + ", expected " + std::to_string(deg));
  const json& a = j.at("mat");
  int k = ec.k();
  if (!a.is_array() || int(a.size()) != k * k)
    bad(what + ": expected " + std::to_string(k * k) + " entries");
  Mat m(ec.actx(deg), k);
  for (int t = 0; t < k * k; ++t) {
    try {
      m.e[t] = AlgebraElement::parse(m.ctx, a.at(t).get<std::string>());
    } catch (const std::exception& ex) {
      bad(what + " entry " + std::to_string(t) + ": " + ex.what());
    }
  }
  return m;
}

Mat g_valued(const EngineContext& ec, const json& j, int deg, const std::string& what) {
  Mat m = mat_parse(ec, j, deg, what);
  if (!in_flavor(ec.flavor, m)) bad(what + ": not in " + flavor_name(ec.flavor));
  return m;
}

Ambient amb_valued(const EngineContext& ec, const json& j, int deg, const std::string& what) {
  Mat m = mat_parse(ec, j, deg, what);
  if (!ambient_normalizes(ec, m)) bad(what + ": does not normalize " + flavor_name(ec.flavor));
  return Ambient{std::move(m)};
}

Connection conn_valued(const EngineContext& ec, const json& j, const std::string& what) {
  Connection mu{amb_valued(ec, j, 1, what)};
  if (!connection_valid(ec, mu)) bad(what + ": not a connection");
  return mu;
}

// --- shape-complete containers -------------------------------------------------

template <class Fn>
json vec_json(int nsets, Fn&& value) {
  json a = json::array();
  for (int i = 0; i < nsets; ++i) a.push_back(value(i));
  return a;
}

template <class T, class Fn>
std::vector<T> vec_parse(const json& j, int nsets, const std::string& what, Fn&& one) {
  if (!j.is_array() || int(j.size()) != nsets)
    bad(what + ": expected " + std::to_string(nsets) + " entries");
  std::vector<T> out;
  out.reserve(nsets);
  for (int i = 0; i < nsets; ++i)
    out.push_back(one(j.at(i), what + "[" + std::to_string(i) + "]"));
  return out;
}

template <class Fn>
json pairs_json(int nsets, Fn&& value) {
  json o = json::object();
  for (int i = 0; i < nsets; ++i)
    for (int j = 0; j < nsets; ++j)
      if (i != j) o[pair_key(i, j)] = value(i, j);
  return o;
}

// expects exactly the ordered pairs (i, j), i != j, over [0, nsets)
template <class T, class Fn>
std::map<std::pair<int, int>, T> pairs_parse(const json& j, int nsets, const std::string& what,
                                             Fn&& one) {
  if (!j.is_object()) bad(what + ": expected an object keyed \"i,j\"");
  std::map<std::pair<int, int>, T> out;
  for (int i = 0; i < nsets; ++i)
    for (int jj = 0; jj < nsets; ++jj) {
      if (i == jj) continue;
      std::string key = pair_key(i, jj);
      if (!j.contains(key)) bad(what + ": missing key \"" + key + "\"");
      out.emplace(std::make_pair(i, jj), one(j.at(key), what + "(" + key + ")"));
    }
  if (int(j.size()) != nsets * (nsets - 1)) bad(what + ": unexpected extra keys");
  return out;
}

template <class Fn>
json triples_json(int nsets, Fn&& value) {
  json o = json::object();
  for (int i = 0; i < nsets; ++i)
    for (int j = 0; j < nsets; ++j)
      for (int k = 0; k < nsets; ++k)
        if (i != j && j != k && i != k) o[triple_key(i, j, k)] = value(i, j, k);
  return o;
}

template <class Fn>
std::map<std::tuple<int, int, int>, Mat> triples_parse(const json& j, int nsets,
                                                       const std::string& what, Fn&& one) {
  if (!j.is_object()) bad(what + ": expected an object keyed \"i,j,k\"");
  std::map<std::tuple<int, int, int>, Mat> out;
  int expect = 0;
  for (int i = 0; i < nsets; ++i)
    for (int jj = 0; jj < nsets; ++jj)
      for (int k = 0; k < nsets; ++k) {
        if (i == jj || jj == k || i == k) continue;
        ++expect;
        std::string key = triple_key(i, jj, k);
        if (!j.contains(key)) bad(what + ": missing key \"" + key + "\"");
        out.emplace(std::make_tuple(i, jj, k), one(j.at(key), what + "(" + key + ")"));
      }
  if (int(j.size()) != expect) bad(what + ": unexpected extra keys");
  return out;
}

// --- sections --------------------------------------------------------------------

json torsor_json(const TorsorData& t) {
  json o;
  o["mu"] = mat_json(t.mu.amb.u);
  o["g"] = pairs_json(t.nsets, [&](int i, int j) { return mat_json(t.gij(i, j)); });
  o["omega"] = vec_json(t.nsets, [&](int i) { return mat_json(t.omega[i]); });
  if (!t.gauge.empty())
    o["gauge"] = vec_json(t.nsets, [&](int i) { return mat_json(t.gauge[i]); });
  if (!t.scale.empty())
    o["scale"] = vec_json(t.nsets, [&](int i) { return mat_json(t.scale[i]); });
  return o;
}

TorsorData torsor_parse(const EngineContext& ec, int nsets, const json& j) {
  TorsorData t;
  t.ec = ec;
  t.nsets = nsets;
  t.mu = conn_valued(ec, j.at("mu"), "torsor.mu");
  t.g = pairs_parse<Mat>(j.at("g"), nsets, "torsor.g",
                         [&](const json& v, const std::string& w) { return g_valued(ec, v, 0, w); });
  t.omega = vec_parse<Mat>(j.at("omega"), nsets, "torsor.omega",
                           [&](const json& v, const std::string& w) { return g_valued(ec, v, 1, w); });
  if (j.contains("gauge"))
    t.gauge = vec_parse<Mat>(j.at("gauge"), nsets, "torsor.gauge",
                             [&](const json& v, const std::string& w) { return g_valued(ec, v, 0, w); });
  if (j.contains("scale"))
    t.scale = vec_parse<Mat>(j.at("scale"), nsets, "torsor.scale",
                             [&](const json& v, const std::string& w) { return g_valued(ec, v, 1, w); });
  return t;
}

json gerbe_json(const GerbeCocycle& c) {
  json o;
  o["lambda"] = pairs_json(c.nsets, [&](int i, int j) { return mat_json(c.lam(i, j).u); });
  o["g"] = triples_json(c.nsets, [&](int i, int j, int k) { return mat_json(c.gijk(i, j, k)); });
  o["m"] = vec_json(c.nsets, [&](int i) { return mat_json(c.m[i].amb.u); });
  o["gamma"] = pairs_json(c.nsets, [&](int i, int j) { return mat_json(c.gam(i, j)); });
  o["B"] = vec_json(c.nsets, [&](int i) { return mat_json(c.B[i]); });
  if (c.has_derived()) {
    o["nu"] = vec_json(c.nsets, [&](int i) { return mat_json(c.nu[i].u); });
    o["delta"] = pairs_json(c.nsets, [&](int i, int j) { return mat_json(c.del(i, j)); });
    o["omega"] = vec_json(c.nsets, [&](int i) { return mat_json(c.omega[i]); });
  }
  return o;
}

GerbeCocycle gerbe_parse(const EngineContext& ec, int nsets, const json& j) {
  GerbeCocycle c;
  c.ec = ec;
  c.nsets = nsets;
  c.lambda = pairs_parse<Ambient>(j.at("lambda"), nsets, "gerbe.lambda",
                                  [&](const json& v, const std::string& w) { return amb_valued(ec, v, 0, w); });
  c.g = triples_parse(j.at("g"), nsets, "gerbe.g",
                      [&](const json& v, const std::string& w) { return g_valued(ec, v, 0, w); });
  c.m = vec_parse<Connection>(j.at("m"), nsets, "gerbe.m",
                              [&](const json& v, const std::string& w) { return conn_valued(ec, v, w); });
  c.gamma = pairs_parse<Mat>(j.at("gamma"), nsets, "gerbe.gamma",
                             [&](const json& v, const std::string& w) { return g_valued(ec, v, 1, w); });
  c.B = vec_parse<Mat>(j.at("B"), nsets, "gerbe.B",
                       [&](const json& v, const std::string& w) { return g_valued(ec, v, 2, w); });
  int derived = j.contains("nu") + j.contains("delta") + j.contains("omega");
  if (derived != 0 && derived != 3)
    bad("gerbe: nu, delta, omega must be present together or absent together");
  if (derived) {
    c.nu = vec_parse<Ambient>(j.at("nu"), nsets, "gerbe.nu",
                              [&](const json& v, const std::string& w) { return amb_valued(ec, v, 2, w); });
    c.delta = pairs_parse<Mat>(j.at("delta"), nsets, "gerbe.delta",
                               [&](const json& v, const std::string& w) { return g_valued(ec, v, 2, w); });
    c.omega = vec_parse<Mat>(j.at("omega"), nsets, "gerbe.omega",
                             [&](const json& v, const std::string& w) { return g_valued(ec, v, 3, w); });
  }
  return c;
}

json triple_json(int nsets, const TransformationTriple& t) {
  json o;
  o["E"] = vec_json(nsets, [&](int i) { return mat_json(t.E[i]); });
  o["pi"] = vec_json(nsets, [&](int i) { return mat_json(t.pi[i].u); });
  o["eta"] = pairs_json(nsets, [&](int i, int j) { return mat_json(t.et(i, j)); });
  o["alpha"] = vec_json(nsets, [&](int i) { return mat_json(t.alpha[i]); });
  return o;
}

TransformationTriple triple_parse(const EngineContext& ec, int nsets, const json& j) {
  TransformationTriple t;
  t.E = vec_parse<Mat>(j.at("E"), nsets, "triple.E",
                       [&](const json& v, const std::string& w) { return g_valued(ec, v, 1, w); });
  t.pi = vec_parse<Ambient>(j.at("pi"), nsets, "triple.pi",
                            [&](const json& v, const std::string& w) { return amb_valued(ec, v, 1, w); });
  t.eta = pairs_parse<Mat>(j.at("eta"), nsets, "triple.eta",
                           [&](const json& v, const std::string& w) { return g_valued(ec, v, 1, w); });
  t.alpha = vec_parse<Mat>(j.at("alpha"), nsets, "triple.alpha",
                           [&](const json& v, const std::string& w) { return g_valued(ec, v, 2, w); });
  return t;
}

json equivalence_json(int nsets, const EquivalenceSection& s) {
  json o;
  o["lambda_prime"] =
      pairs_json(nsets, [&](int i, int j) { return mat_json(s.lambda_prime.at({i, j}).u); });
  o["g_prime"] = triples_json(
      nsets, [&](int i, int j, int k) { return mat_json(s.g_prime.at({i, j, k})); });
  o["m"] = vec_json(nsets, [&](int i) { return mat_json(s.e.m[i].u); });
  o["delta"] = pairs_json(nsets, [&](int i, int j) { return mat_json(s.e.del(i, j)); });
  if (!s.e.theta.empty())
    o["theta"] = vec_json(nsets, [&](int i) { return mat_json(s.e.theta[i]); });
  return o;
}

EquivalenceSection equivalence_parse(const EngineContext& ec, int nsets, const json& j) {
  EquivalenceSection s;
  s.lambda_prime =
      pairs_parse<Ambient>(j.at("lambda_prime"), nsets, "equivalence.lambda_prime",
                           [&](const json& v, const std::string& w) { return amb_valued(ec, v, 0, w); });
  s.g_prime = triples_parse(j.at("g_prime"), nsets, "equivalence.g_prime",
                            [&](const json& v, const std::string& w) { return g_valued(ec, v, 0, w); });
  s.e.m = vec_parse<Ambient>(j.at("m"), nsets, "equivalence.m",
                             [&](const json& v, const std::string& w) { return amb_valued(ec, v, 0, w); });
  s.e.delta = pairs_parse<Mat>(j.at("delta"), nsets, "equivalence.delta",
                               [&](const json& v, const std::string& w) { return g_valued(ec, v, 0, w); });
  if (j.contains("theta"))
    s.e.theta = vec_parse<Mat>(j.at("theta"), nsets, "equivalence.theta",
                               [&](const json& v, const std::string& w) { return g_valued(ec, v, 0, w); });
  return s;
}

json cm_json(const CrossedModuleSection& s) {
  json o;
  o["shape"] = s.data.cm.shape == SubgroupShape::center ? "center" : "full";
  o["degree"] = s.data.n;
  o["g"] = mat_json(s.data.g);
  json a = json::array();
  for (const Mat& p : s.data.phi) a.push_back(mat_json(p));
  o["phi"] = std::move(a);
  if (s.chi) o["chi"] = mat_json(*s.chi);
  return o;
}

CrossedModuleSection cm_parse(const EngineContext& ec, const json& j) {
  CrossedModuleSection s;
  std::string shape = j.at("shape").get<std::string>();
  if (shape == "center")
    s.data.cm.shape = SubgroupShape::center;
  else if (shape == "full")
    s.data.cm.shape = SubgroupShape::full;
  else
    bad("crossed_module.shape: " + shape);
  s.data.cm.ec = ec;
  int n = j.at("degree").get<int>();
  if (n < 1 || n > kMaxSimplexOrder) bad("crossed_module.degree out of range");
  s.data.n = n;
  s.data.g = g_valued(ec, j.at("g"), n, "crossed_module.g");
  s.data.phi = vec_parse<Mat>(j.at("phi"), n, "crossed_module.phi",
                              [&](const json& v, const std::string& w) { return g_valued(ec, v, n - 1, w); });
  if (j.contains("chi")) {
    Mat chi = g_valued(ec, j.at("chi"), n, "crossed_module.chi");
    if (!s.data.cm.in_g1(chi)) bad("crossed_module.chi: not in the designated subgroup");
    s.chi = std::move(chi);
  }
  return s;
}

}  // namespace

std::string serialize(const Dataset& ds) {
  json o;
  o["context"] = json{{"base_dim", ds.ec.d},
                      {"trunc_degree", ds.ec.D},
                      {"matrix_size", ds.ec.k()},
                      {"flavor", flavor_name(ds.ec.flavor)},
                      {"seed", ds.seed}};
  o["nerve"] = json{{"open_sets", ds.nsets}};
  if (ds.torsor) o["torsor"] = torsor_json(*ds.torsor);
  if (ds.gerbe) o["gerbe"] = gerbe_json(*ds.gerbe);
  if (ds.triple) o["triple"] = triple_json(ds.nsets, *ds.triple);
  if (ds.rho) {
    json r;
    r["rho"] = vec_json(ds.nsets, [&](int i) { return mat_json((*ds.rho)[i]); });
    o["rho"] = std::move(r);
  }
  if (ds.equivalence) o["equivalence"] = equivalence_json(ds.nsets, *ds.equivalence);
  if (ds.crossed_module) o["crossed_module"] = cm_json(*ds.crossed_module);
  return o.dump(2) + "\n";
}

Dataset parse_dataset(const std::string& text) {
  json o;
  try {
    o = json::parse(text);
  } catch (const json::exception& ex) {
    bad(std::string("JSON syntax: ") + ex.what());
  }
  try {
    Dataset ds;
    const json& ctx = o.at("context");
    ds.ec.d = ctx.at("base_dim").get<int>();
    ds.ec.D = ctx.at("trunc_degree").get<int>();
    ds.ec.flavor = flavor_parse(ctx.at("flavor").get<std::string>());
    if (ds.ec.d < 1 || ds.ec.d > kMaxBaseDim) bad("context.base_dim out of range");
    if (ds.ec.D < 0 || ds.ec.D > 6) bad("context.trunc_degree out of range");
    if (ctx.at("matrix_size").get<int>() != ds.ec.k())
      bad("context.matrix_size does not match flavor");
    ds.seed = ctx.at("seed").get<std::uint64_t>();
    ds.nsets = o.at("nerve").at("open_sets").get<int>();
    if (ds.nsets < 0 || ds.nsets > 64) bad("nerve.open_sets out of range");

    if (o.contains("torsor")) ds.torsor = torsor_parse(ds.ec, ds.nsets, o.at("torsor"));
    if (o.contains("gerbe")) ds.gerbe = gerbe_parse(ds.ec, ds.nsets, o.at("gerbe"));
    if (o.contains("triple")) ds.triple = triple_parse(ds.ec, ds.nsets, o.at("triple"));
    if (o.contains("rho"))
      ds.rho = vec_parse<Mat>(o.at("rho").at("rho"), ds.nsets, "rho.rho",
                              [&](const json& v, const std::string& w) {
                                return g_valued(ds.ec, v, 1, w);
                              });
    if (o.contains("equivalence"))
      ds.equivalence = equivalence_parse(ds.ec, ds.nsets, o.at("equivalence"));
    if (o.contains("crossed_module"))
      ds.crossed_module = cm_parse(ds.ec, o.at("crossed_module"));
    return ds;
  } catch (const json::exception& ex) {
    bad(std::string("schema: ") + ex.what());
  }
}

}  // namespace gerbecalc
