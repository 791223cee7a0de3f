#include "core/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace gerbecalc {

namespace {

std::string at_one(const char* what, int i) {
  return std::string(what) + "(" + std::to_string(i) + ")";
}

std::string at_pair(const char* what, int i, int j) {
  return std::string(what) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// connection-level laws over whatever connections and cochains the dataset holds
std::vector<CheckRecord> check_group(const Dataset& ds) {
  const EngineContext& ec = ds.ec;
  Checker dk("defkapmu0"), dd("d1d0"), dr("d1rule");
  auto flat = [&](const Connection& mu, const std::string& where) {
    dk.aut_identity(ec, aut_delta2(ec, mu, connection_curvature(mu)), where);
  };
  if (ds.torsor) {
    const TorsorData& t = *ds.torsor;
    flat(t.mu, "mu");
    Ambient kap = connection_curvature(t.mu);
    for (const auto& [ij, g] : t.g)
      dd.eq(delta1(t.mu, delta0(t.mu, g)), doubbra(kap, g.pullback({0}, 2)),
            at_pair("g", ij.first, ij.second));
  }
  if (ds.gerbe) {
    const GerbeCocycle& c = *ds.gerbe;
    for (int i = 0; i < c.nsets; ++i) flat(c.m[i], at_one("m", i));
    for (const auto& [ij, ga] : c.gamma)
      dr.eq(delta1(c.m[ij.first], ga.inverse()),
            delta1(c.m[ij.first], ga).inverse() * bra_gg(c.m[ij.first], ga, ga),
            at_pair("gamma", ij.first, ij.second));
  }
  return {dk.record(), dd.record(), dr.record()};
}

GerbeCocycle primed_lite(const Dataset& ds) {
  GerbeCocycle cp;
  cp.ec = ds.ec;
  cp.nsets = ds.nsets;
  cp.lambda = ds.equivalence->lambda_prime;
  cp.g = ds.equivalence->g_prime;
  return cp;
}

struct SuiteDef {
  const char* name;
  bool (*available)(const Dataset&);
  std::vector<CheckRecord> (*run)(const Dataset&);
};

constexpr SuiteDef kSuites[] = {
    {"group",
     [](const Dataset& d) { return d.torsor.has_value() || d.gerbe.has_value(); },
     [](const Dataset& d) { return check_group(d); }},
    {"torsor", [](const Dataset& d) { return d.torsor.has_value(); },
     [](const Dataset& d) { return check_torsor(*d.torsor); }},
    {"gerbe", [](const Dataset& d) { return d.gerbe.has_value(); },
     [](const Dataset& d) { return check_gerbe(*d.gerbe); }},
    {"triple",
     [](const Dataset& d) { return d.gerbe.has_value() && d.triple.has_value(); },
     [](const Dataset& d) {
       GerbeCocycle c = apply_triple(*d.gerbe, *d.triple);
       return check_triple(c, *d.gerbe, *d.triple);
     }},
    {"rho",
     [](const Dataset& d) {
       return d.gerbe.has_value() && d.triple.has_value() && d.rho.has_value();
     },
     [](const Dataset& d) {
       TransformationTriple tp = apply_rho(*d.gerbe, *d.triple, *d.rho);
       return check_rho(*d.gerbe, *d.triple, tp, *d.rho);
     }},
    {"equivalence",
     [](const Dataset& d) { return d.gerbe.has_value() && d.equivalence.has_value(); },
     [](const Dataset& d) {
       return check_equivalence(*d.gerbe, primed_lite(d), d.equivalence->e);
     }},
    {"cm", [](const Dataset& d) { return d.crossed_module.has_value(); },
     [](const Dataset& d) { return check_cm(d.crossed_module->data); }},
};

}  // namespace

Report run_check(const Dataset& ds, const std::string& suite, int jobs) {
  std::vector<const SuiteDef*> selected;
  if (suite == "all") {
    for (const SuiteDef& s : kSuites)
      if (s.available(ds)) selected.push_back(&s);
  } else {
    const SuiteDef* found = nullptr;
    for (const SuiteDef& s : kSuites)
      if (suite == s.name) found = &s;
    if (!found) throw std::invalid_argument("unknown suite: " + suite);
    if (!found->available(ds))
      throw std::invalid_argument("suite '" + suite + "' needs dataset sections that are absent");
    selected.push_back(found);
  }

  // fan out suite evaluations; each worker reads the shared immutable dataset and
  // writes into its own slot, so aggregation order never depends on scheduling
  std::vector<std::vector<CheckRecord>> results(selected.size());
  std::vector<std::exception_ptr> errors(selected.size());
  std::atomic<size_t> cursor{0};
  auto work = [&] {
    for (size_t i; (i = cursor.fetch_add(1)) < selected.size();) {
      try {
        results[i] = selected[i]->run(ds);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int n = jobs > 0 ? jobs : int(std::thread::hardware_concurrency());
  n = std::min<int>(std::max(n, 1), int(selected.size()));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  Report rep;
  rep.suite_sel = suite;
  rep.ec = ds.ec;
  rep.seed = ds.seed;
  rep.nsets = ds.nsets;
  for (size_t i = 0; i < selected.size(); ++i)
    for (const CheckRecord& rec : results[i]) {
      ReportRecord r;
      r.suite = selected[i]->name;
      r.tag = rec.tag;
      r.site = rec.site;
      r.verdict = rec.vacuous ? "vacuous" : rec.pass ? "pass" : "fail";
      r.residual = rec.detail;
      if (rec.vacuous)
        ++rep.vacuous;
      else if (rec.pass)
        ++rep.pass;
      else
        ++rep.fail;
      rep.records.push_back(std::move(r));
    }
  return rep;
}

std::string Report::text() const {
  std::string out = std::string(kEngineVersion) + "\n";
  out += "context: flavor=" + flavor_name(ec.flavor) + " k=" + std::to_string(ec.k()) +
         " base_dim=" + std::to_string(ec.d) + " trunc=" + std::to_string(ec.D) +
         " seed=" + std::to_string(seed) + " open_sets=" + std::to_string(nsets) +
         " suite=" + suite_sel + "\n";
  for (const ReportRecord& r : records) {
    std::string v = r.verdict == "pass" ? "[ pass ]" : r.verdict == "fail" ? "[ FAIL ]" : "[  --  ]";
    out += v + " " + r.suite + "/" + r.tag;
    if (r.verdict == "fail") out += " at " + r.site + ": " + r.residual;
    if (r.verdict == "vacuous") out += " (vacuous)";
    out += "\n";
  }
  out += "summary: pass=" + std::to_string(pass) + " fail=" + std::to_string(fail) +
         " vacuous=" + std::to_string(vacuous) +
         " total=" + std::to_string(records.size()) + "\n";
  return out;
}

std::string Report::json_text() const {
  nlohmann::json o;
  o["fingerprint"] = {{"engine", kEngineVersion},
                      {"flavor", flavor_name(ec.flavor)},
                      {"matrix_size", ec.k()},
                      {"base_dim", ec.d},
                      {"trunc_degree", ec.D},
                      {"seed", seed},
                      {"open_sets", nsets},
                      {"suite", suite_sel}};
  nlohmann::json recs = nlohmann::json::array();
  for (const ReportRecord& r : records)
    recs.push_back({{"suite", r.suite},
                    {"tag", r.tag},
                    {"site", r.site},
                    {"verdict", r.verdict},
                    {"residual", r.residual}});
  o["records"] = std::move(recs);
  o["summary"] = {{"pass", pass},
                  {"fail", fail},
                  {"vacuous", vacuous},
                  {"total", records.size()}};
  return o.dump(2) + "\n";
}

Dataset run_generate(const std::string& mode, const EngineContext& ec, std::uint64_t seed) {
  Dataset ds;
  ds.ec = ec;
  ds.seed = seed;
  Rng rng(seed);
  auto put_gerbe = [&](GerbeCocycle c) {
    c.nu.clear();
    c.delta.clear();
    c.omega.clear();
    ds.ec = c.ec;  // the abelian generator narrows the flavor
    ds.nsets = c.nsets;
    ds.gerbe = std::move(c);
  };
  if (mode == "trivial") {
    put_gerbe(generate_trivial(rng, ec));
  } else if (mode == "coboundary") {
    put_gerbe(generate_coboundary(rng, ec, 3));
  } else if (mode == "abelian") {
    put_gerbe(generate_abelian(rng, ec));
  } else if (mode == "torsor") {
    ds.nsets = 3;
    ds.torsor = random_torsor(rng, ec, ds.nsets, true, true);
  } else {
    throw std::invalid_argument("unknown generate mode: " + mode);
  }
  return ds;
}

Dataset run_derive(Dataset ds) {
  if (!ds.gerbe) throw std::invalid_argument("derive: dataset has no gerbe section");
  ds.gerbe = derive(*ds.gerbe);
  return ds;
}

Dataset run_normalize(Dataset ds) {
  if (!ds.crossed_module)
    throw std::invalid_argument("normalize: dataset has no crossed_module section");
  CrossedModuleSection& s = *ds.crossed_module;
  NormalizeResult r = normalize(s.data);
  s.data.g = r.gprime;
  Mat id = Mat::identity(ds.ec.actx(s.data.n - 1), ds.ec.k());
  s.data.phi.assign(size_t(s.data.n), id);
  s.chi = r.chi;
  return ds;
}

}  // namespace gerbecalc
