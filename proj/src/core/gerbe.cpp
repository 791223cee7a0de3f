#include "core/gerbe.hpp"

#include <stdexcept>

namespace gerbecalc {

namespace {

std::string at_one(const char* what, int i) {
  return std::string(what) + "(" + std::to_string(i) + ")";
}

std::string at_pair(const char* what, int i, int j) {
  return std::string(what) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string at_triple(const char* what, int i, int j, int k) {
  return std::string(what) + "(" + std::to_string(i) + "," + std::to_string(j) + "," +
         std::to_string(k) + ")";
}

}  // namespace

Mat GerbeCocycle::lam_apply(int i, int j, const Mat& w) const {
  return conj(lam(i, j).u.pullback({0}, w.ctx.n), w);
}

GerbeCocycle derive(const GerbeCocycle& c0) {
  GerbeCocycle c = c0;
  c.nu.clear();
  c.delta.clear();
  c.omega.clear();
  for (int i = 0; i < c.nsets; ++i) {
    c.nu.push_back(Ambient{connection_curvature(c.m[i]).u * c.B[i].inverse()});
    c.omega.push_back(delta2(c.m[i], c.B[i]));
  }
  for (const auto& [ij, gm] : c.gamma) {
    auto [i, j] = ij;
    // delta_ij + B_i = lambda_ij(B_j) - delta^1_{m_i}(-gamma_ij)
    Mat d1neg = delta1(c.m[i], gm.inverse());
    c.delta[ij] = c.lam_apply(i, j, c.B[j]) * d1neg.inverse() * c.B[i].inverse();
  }
  return c;
}

std::vector<CheckRecord> check_gerbe(const GerbeCocycle& c0) {
  GerbeCocycle c = c0.has_derived() ? c0 : derive(c0);
  const EngineContext& ec = c.ec;
  Checker coclam("coclam"), cocg("cocg"), cocep1("cocep1"), cocep2("cocep2"), ifi("ifi"),
      omidef1("omidef1"), cockap1("cockap1"), cockap2("cockap2"), comoioj("comoioj"),
      relnufi("relnufi"), ificonj("ificonj"), ifi3("ifi3"), omidef3("omidef3"),
      ificonj3("ificonj3"), relnufi3("relnufi3");

  for (const auto& [ij, lamij] : c.lambda) {
    auto [i, j] = ij;
    // ^{lambda_ij*}m_j = -i_{gamma_ij} + m_i
    Mat l0 = lamij.u.pullback({0}, 1), l1 = lamij.u.pullback({1}, 1);
    cocep1.aut_eq(ec, Ambient{l0 * c.m[j].amb.u * l1.inverse()},
                  Ambient{c.gam(i, j).inverse() * c.m[i].amb.u}, at_pair("m", i, j));
    // ^{lambda_ij}nu_j = nu_i - i_{delta_ij}
    Mat l2 = lamij.u.pullback({0}, 2);
    cockap1.aut_eq(ec, Ambient{conj(l2, c.nu[j].u)},
                   Ambient{c.nu[i].u * c.del(i, j).inverse()}, at_pair("nu", i, j));
    // lambda_ij(omega_j) = omega_i + delta^2_{m_i}(delta_ij) + [gamma_ij, nu_i]
    //                      - [gamma_ij, delta_ij]
    Mat rhs = c.omega[i] * delta2(c.m[i], c.del(i, j)) *
              bra_ga(c.m[i], c.gam(i, j), c.nu[i]) *
              bra_gg(c.m[i], c.gam(i, j), c.del(i, j)).inverse();
    comoioj.eq(c.lam_apply(i, j, c.omega[j]), rhs, at_pair("omega", i, j));
  }

  for (const auto& [ijk, gv] : c.g) {
    auto [i, j, k] = ijk;
    // lambda_ij lambda_jk = i_{g_ijk} lambda_ik
    coclam.aut_eq(ec, c.lam(i, j).compose(c.lam(j, k)), Ambient{gv * c.lam(i, k).u},
                  at_triple("lambda", i, j, k));
    // d^1_lambda(gamma)_ijk = delta~0_{m_i}(g_ijk)
    Mat g1 = gv.pullback({0}, 1);
    Mat lhs1 = c.gam(i, j) * c.lam_apply(i, j, c.gam(j, k)) *
               conj(g1, c.gam(i, k).inverse());
    cocep2.eq(lhs1, delta0_tilde(c.m[i], gv), at_triple("gamma", i, j, k));
    // d^1_lambda(delta)_ijk = [nu_i, g_ijk]
    Mat g2 = gv.pullback({0}, 2);
    Mat lhs2 = c.del(i, j) * c.lam_apply(i, j, c.del(j, k)) *
               conj(g2, c.del(i, k).inverse());
    cockap2.eq(lhs2, bra_ag(c.m[i], c.nu[i], gv), at_triple("delta", i, j, k));
  }

  // lambda_ij(g_jkl) g_ijl = g_ijk g_ikl
  for (int i = 0; i < c.nsets; ++i)
    for (int j = 0; j < c.nsets; ++j)
      for (int k = 0; k < c.nsets; ++k)
        for (int l = 0; l < c.nsets; ++l) {
          if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
          cocg.eq(c.lam_apply(i, j, c.gijk(j, k, l)) * c.gijk(i, j, l),
                  c.gijk(i, j, k) * c.gijk(i, k, l), at_triple("g", i, j, k) + "...");
        }

  for (int i = 0; i < c.nsets; ++i) {
    ifi.aut_eq(ec, connection_curvature(c.m[i]), Ambient{c.B[i] * c.nu[i].u},
               at_one("kappa", i));
    omidef1.eq(c.omega[i], delta2(c.m[i], c.B[i]), at_one("omega", i));
    relnufi.eq(delta3(c.m[i], c.omega[i]), bra_ag(c.m[i], c.nu[i], c.B[i]),
               at_one("omega", i));
    ificonj.aut_eq(ec, Ambient{c.omega[i]}, aut_delta2(ec, c.m[i], c.nu[i]).inverse(),
                   at_one("omega", i));

    ClassicalForm mcl = classical_extract(ec, c.m[i].amb.u);
    ClassicalForm Bcl = classical_extract(ec, c.B[i]);
    ClassicalForm ncl = classical_extract(ec, c.nu[i].u);
    ClassicalForm ocl = classical_extract(ec, c.omega[i]);
    ifi3.cl_eq_ad(ec, ext_d(mcl) + wedge(mcl, mcl), Bcl + ncl, at_one("m", i));
    omidef3.cl_eq(ocl, ext_d(Bcl) + gbracket(mcl, Bcl), at_one("B", i));
    ificonj3.cl_eq_ad(ec, ocl, -(ext_d(ncl) + gbracket(mcl, ncl)), at_one("nu", i));
    relnufi3.cl_eq(ext_d(ocl) + gbracket(mcl, ocl), gbracket(ncl, Bcl), at_one("omega", i));
  }

  return {coclam.record(),  cocg.record(),    cocep1.record(),  cocep2.record(),
          ifi.record(),     omidef1.record(), cockap1.record(), cockap2.record(),
          comoioj.record(), relnufi.record(), ificonj.record(), ifi3.record(),
          omidef3.record(), ificonj3.record(), relnufi3.record()};
}

GerbeCocycle apply_triple(const GerbeCocycle& cp, const TransformationTriple& t) {
  GerbeCocycle c;
  c.ec = cp.ec;
  c.nsets = cp.nsets;
  c.lambda = cp.lambda;
  c.g = cp.g;
  for (int i = 0; i < cp.nsets; ++i) {
    // i_{E_i} m'_i = pi_i m_i
    c.m.push_back(Connection{Ambient{t.pi[i].u.inverse() * t.E[i] * cp.m[i].amb.u}});
    // alpha_i = B'_i - B_i + delta^1_{m'_i}(E_i)
    c.B.push_back(cp.B[i] * t.alpha[i].inverse() * delta1(cp.m[i], t.E[i]));
  }
  for (const auto& [ij, gp] : cp.gamma) {
    auto [i, j] = ij;
    // E_i gamma'_ij = pi_i(gamma_ij) eta_ij lambda_ij(E_j)
    Mat w = t.E[i] * gp * t.et(i, j).inverse() * cp.lam_apply(i, j, t.E[j]).inverse();
    c.gamma[ij] = conj(t.pi[i].u.inverse(), w);
  }
  return derive(c);
}

std::vector<CheckRecord> check_triple(const GerbeCocycle& c0, const GerbeCocycle& cp0,
                                      const TransformationTriple& t) {
  if (c0.nsets != cp0.nsets) throw std::invalid_argument("check_triple: nerve mismatch");
  GerbeCocycle c = c0.has_derived() ? c0 : derive(c0);
  GerbeCocycle cp = cp0.has_derived() ? cp0 : derive(cp0);
  const EngineContext& ec = c.ec;
  Checker pij1("pij1"), d1eij("d1eij"), cobe1("cobe1"), cobe2("cobe2"), cob2("cob2-i"),
      cob3("cob3-i"), alpheq("alpheqij"), cob4("cob4-i"), def5("def:5-i"), def6("def:6-i");

  for (const auto& [ij, lamij] : c.lambda) {
    auto [i, j] = ij;
    // pi_i = i_{eta_ij} + ^{lambda_ij}pi_j
    Mat l1 = lamij.u.pullback({0}, 1);
    pij1.aut_eq(ec, t.pi[i], Ambient{t.et(i, j) * conj(l1, t.pi[j].u)},
                at_pair("pi", i, j));
    // E_i gamma'_ij = pi_i(gamma_ij) eta_ij lambda_ij(E_j)
    cobe2.eq(t.E[i] * cp.gam(i, j),
             t.pi[i].apply(c.gam(i, j)) * t.et(i, j) * c.lam_apply(i, j, t.E[j]),
             at_pair("gamma", i, j));
    // delta_ij - delta'_ij + lambda_ij(alpha_j) - alpha_i =
    //   -delta^1_{m_i}(eta_ij) + [eta_ij, eta_ij] - [pi_i, eta_ij]
    //   + [gamma_ij, eta_ij] - [gamma_ij, pi_i]
    Mat lhs = c.del(i, j) * cp.del(i, j).inverse() * c.lam_apply(i, j, t.alpha[j]) *
              t.alpha[i].inverse();
    Mat rhs = delta1(c.m[i], t.et(i, j)).inverse() *
              bra_gg(c.m[i], t.et(i, j), t.et(i, j)) *
              bra_ag(c.m[i], t.pi[i], t.et(i, j)).inverse() *
              bra_gg(c.m[i], c.gam(i, j), t.et(i, j)) *
              bra_ga(c.m[i], c.gam(i, j), t.pi[i]).inverse();
    alpheq.eq(lhs, rhs, at_pair("delta", i, j));
  }

  // d^1_lambda(eta)_ijk = [pi_i, g_ijk]
  for (const auto& [ijk, gv] : c.g) {
    auto [i, j, k] = ijk;
    Mat g1 = gv.pullback({0}, 1);
    Mat lhs = t.et(i, j) * c.lam_apply(i, j, t.et(j, k)) * conj(g1, t.et(i, k).inverse());
    d1eij.eq(lhs, bra_ag(c.m[i], t.pi[i], gv), at_triple("eta", i, j, k));
  }

  for (int i = 0; i < c.nsets; ++i) {
    cobe1.aut_eq(ec, Ambient{t.E[i] * cp.m[i].amb.u}, Ambient{t.pi[i].u * c.m[i].amb.u},
                 at_one("m", i));
    // nu'_i + i_{alpha_i} = nu_i + delta^1_{m_i}(pi_i)
    cob2.aut_eq(ec, Ambient{cp.nu[i].u * t.alpha[i]},
                Ambient{c.nu[i].u * aut_delta1(ec, c.m[i], t.pi[i]).u}, at_one("nu", i));
    // omega'_i = omega_i + delta^2_{m_i}(alpha_i) - [nu'_i, E_i] + [pi_i, B_i]
    //            + [pi_i, alpha_i]
    Mat rhs4 = c.omega[i] * delta2(c.m[i], t.alpha[i]) *
               bra_ag(c.m[i], cp.nu[i], t.E[i]).inverse() *
               bra_ag(c.m[i], t.pi[i], c.B[i]) * bra_ag(c.m[i], t.pi[i], t.alpha[i]);
    cob4.eq(cp.omega[i], rhs4, at_one("omega", i));

    ClassicalForm mcl = classical_extract(ec, c.m[i].amb.u);
    ClassicalForm pcl = classical_extract(ec, t.pi[i].u);
    ClassicalForm Ecl = classical_extract(ec, t.E[i]);
    ClassicalForm acl = classical_extract(ec, t.alpha[i]);
    ClassicalForm Bcl = classical_extract(ec, c.B[i]);
    ClassicalForm ncl = classical_extract(ec, c.nu[i].u);
    // B'_i = B_i + alpha_i - dE_i + [E_i]^(2) - [m_i, E_i] - [pi_i, E_i]
    cob3.cl_eq(classical_extract(ec, cp.B[i]),
               Bcl + acl - ext_d(Ecl) + wedge(Ecl, Ecl) - gbracket(mcl, Ecl) -
                   gbracket(pcl, Ecl),
               at_one("B", i));
    // nu'_i = nu_i + dpi_i + [pi_i]^(2) + [m_i, pi_i] - i_{alpha_i}
    def5.cl_eq_ad(ec, classical_extract(ec, cp.nu[i].u),
                  ncl + ext_d(pcl) + wedge(pcl, pcl) + gbracket(mcl, pcl) - acl,
                  at_one("nu", i));
    // omega'_i = omega_i + dalpha_i + [m_i, alpha_i] - [nu_i, E_i] - [dpi_i, E_i]
    //   - [[pi_i]^(2), E_i] - [[m_i, pi_i], E_i] + [alpha_i, E_i] + [pi_i, B_i]
    //   + [pi_i, alpha_i]
    ClassicalForm rhs6 = classical_extract(ec, c.omega[i]) + ext_d(acl) +
                         gbracket(mcl, acl) - gbracket(ncl, Ecl) -
                         gbracket(ext_d(pcl), Ecl) - gbracket(wedge(pcl, pcl), Ecl) -
                         gbracket(gbracket(mcl, pcl), Ecl) + gbracket(acl, Ecl) +
                         gbracket(pcl, Bcl) + gbracket(pcl, acl);
    def6.cl_eq(classical_extract(ec, cp.omega[i]), rhs6, at_one("omega", i));
  }

  return {pij1.record(), d1eij.record(), cobe1.record(), cobe2.record(), cob2.record(),
          cob3.record(), alpheq.record(), cob4.record(), def5.record(), def6.record()};
}

TransformationTriple apply_rho(const GerbeCocycle& cp, const TransformationTriple& t,
                               const std::vector<Mat>& rho) {
  TransformationTriple r;
  for (int i = 0; i < cp.nsets; ++i) {
    r.E.push_back(t.E[i] * rho[i]);
    r.pi.push_back(Ambient{t.pi[i].u * rho[i]});
    // alpha'_i = alpha_i + delta^1_{m_i}(rho_i) + [pi_i, rho_i], m_i the target connection
    Connection mi{Ambient{t.pi[i].u.inverse() * t.E[i] * cp.m[i].amb.u}};
    r.alpha.push_back(t.alpha[i] * delta1(mi, rho[i]) * bra_ag(mi, t.pi[i], rho[i]));
  }
  for (const auto& [ij, et] : t.eta) {
    auto [i, j] = ij;
    // lambda_ij(rho_j) - rho_i = eta_ij - eta'_ij
    r.eta[ij] = et * rho[i] * cp.lam_apply(i, j, rho[j]).inverse();
  }
  return r;
}

std::vector<CheckRecord> check_rho(const GerbeCocycle& cp, const TransformationTriple& t,
                                   const TransformationTriple& tp,
                                   const std::vector<Mat>& rho) {
  const EngineContext& ec = cp.ec;
  Checker irho("equ:irho-i"), rij("rhoij"), defrho("def:rho-i"), e1("eqrho1-i"),
      e2("eqrho2-i");

  for (int i = 0; i < cp.nsets; ++i) {
    irho.aut_eq(ec, tp.pi[i], Ambient{t.pi[i].u * rho[i]}, at_one("pi", i));
    defrho.eq(tp.E[i], t.E[i] * rho[i], at_one("E", i));
    Connection mi{Ambient{t.pi[i].u.inverse() * t.E[i] * cp.m[i].amb.u}};
    e1.eq(tp.alpha[i], t.alpha[i] * delta1(mi, rho[i]) * bra_ag(mi, t.pi[i], rho[i]),
          at_one("alpha", i));
    ClassicalForm rcl = classical_extract(ec, rho[i]);
    ClassicalForm mcl = classical_extract(ec, mi.amb.u);
    ClassicalForm pcl = classical_extract(ec, t.pi[i].u);
    e2.cl_eq(classical_extract(ec, tp.alpha[i]),
             classical_extract(ec, t.alpha[i]) + ext_d(rcl) + wedge(rcl, rcl) +
                 gbracket(mcl, rcl) + gbracket(pcl, rcl),
             at_one("alpha", i));
  }
  for (const auto& [ij, et] : t.eta) {
    auto [i, j] = ij;
    rij.eq(cp.lam_apply(i, j, rho[j]) * rho[i].inverse(), et * tp.et(i, j).inverse(),
           at_pair("eta", i, j));
  }

  return {irho.record(), rij.record(), defrho.record(), e1.record(), e2.record()};
}

std::vector<CheckRecord> check_equivalence(const GerbeCocycle& c, const GerbeCocycle& cp,
                                           const EquivalenceData& e) {
  if (c.nsets != cp.nsets) throw std::invalid_argument("check_equivalence: nerve mismatch");
  const EngineContext& ec = c.ec;
  Checker cocd1("cocd1"), cocd2("cocd2"), thet1("cocthet1"), thet3("cocthet3");

  auto pair_law = [&](const std::vector<Ambient>& m,
                      const std::map<std::pair<int, int>, Mat>& d, Checker& ck) {
    // lambda'_ij m_j = i_{d_ij} m_i lambda_ij
    for (const auto& [ij, lamij] : c.lambda) {
      auto [i, j] = ij;
      ck.aut_eq(ec, cp.lam(i, j).compose(m[j]),
                Ambient{d.at(ij) * m[i].u * lamij.u}, at_pair("m", i, j));
    }
  };
  auto triple_law = [&](const std::vector<Ambient>& m,
                        const std::map<std::pair<int, int>, Mat>& d, Checker& ck) {
    // g'_ijk d_ik = lambda'_ij(d_jk) d_ij m_i(g_ijk)
    for (const auto& [ijk, gv] : c.g) {
      auto [i, j, k] = ijk;
      ck.eq(cp.gijk(i, j, k) * d.at({i, k}),
            cp.lam_apply(i, j, d.at({j, k})) * d.at({i, j}) * m[i].apply(gv),
            at_triple("g", i, j, k));
    }
  };

  pair_law(e.m, e.delta, cocd1);
  triple_law(e.m, e.delta, cocd2);

  if (!e.theta.empty()) {
    // the 2-arrow turns (m, delta) into a second equivalence; it must satisfy
    // the same coboundary conditions
    std::vector<Ambient> mv;
    std::map<std::pair<int, int>, Mat> dv;
    for (int i = 0; i < c.nsets; ++i) mv.push_back(Ambient{e.theta[i] * e.m[i].u});
    for (const auto& [ij, dij] : e.delta) {
      auto [i, j] = ij;
      dv[ij] = cp.lam_apply(i, j, e.theta[j]) * dij * e.theta[i].inverse();
    }
    pair_law(mv, dv, thet1);
    triple_law(mv, dv, thet3);
  }

  return {cocd1.record(), cocd2.record(), thet1.record(), thet3.record()};
}

EquivalenceData compose_equivalence(const EquivalenceData& e2, const EquivalenceData& e1) {
  EquivalenceData r;
  for (size_t i = 0; i < e1.m.size(); ++i) r.m.push_back(e2.m[i].compose(e1.m[i]));
  for (const auto& [ij, d1] : e1.delta) {
    auto [i, j] = ij;
    r.delta[ij] = e2.delta.at(ij) * e2.m[i].apply(d1);
  }
  if (!e1.theta.empty() && !e2.theta.empty())
    for (size_t i = 0; i < e1.theta.size(); ++i)
      r.theta.push_back(e2.theta[i] * e2.m[i].apply(e1.theta[i]));
  return r;
}

std::vector<Mat> compose_2arrows(const std::vector<Mat>& after,
                                 const std::vector<Mat>& before) {
  std::vector<Mat> r;
  for (size_t i = 0; i < before.size(); ++i) r.push_back(after[i] * before[i]);
  return r;
}

// generators ------------------------------------------------------------------

GerbeCocycle generate_trivial(Rng& rng, const EngineContext& ec) {
  GerbeCocycle c;
  c.ec = ec;
  c.nsets = 1;
  c.m.push_back(random_connection(rng, ec));
  c.B.push_back(random_group_form(rng, ec, 2));
  return derive(c);
}

namespace {

GerbeCocycle coboundary_with(Rng& rng, const EngineContext& ec, int nsets,
                             std::map<std::pair<int, int>, Mat>* phi_out) {
  GerbeCocycle c;
  c.ec = ec;
  c.nsets = nsets;
  std::map<std::pair<int, int>, Mat> phi;
  for (int i = 0; i < nsets; ++i)
    for (int j = 0; j < nsets; ++j) {
      if (i == j) continue;
      phi[{i, j}] = random_group_element(rng, ec, 0);
      c.lambda[{i, j}] = Ambient{phi[{i, j}]};
    }
  for (int i = 0; i < nsets; ++i)
    for (int j = 0; j < nsets; ++j)
      for (int k = 0; k < nsets; ++k) {
        if (i == j || i == k || j == k) continue;
        c.g[{i, j, k}] = phi[{i, j}] * phi[{j, k}] * phi[{i, k}].inverse();
      }
  Connection base = random_connection(rng, ec);
  std::vector<Mat> a;
  for (int i = 0; i < nsets; ++i) {
    a.push_back(random_group_form(rng, ec, 1));
    c.m.push_back(Connection{Ambient{a[i] * base.amb.u}});
    c.B.push_back(random_group_form(rng, ec, 2));
  }
  for (int i = 0; i < nsets; ++i)
    for (int j = 0; j < nsets; ++j) {
      if (i == j) continue;
      Mat p0 = phi[{i, j}].pullback({0}, 1), p1 = phi[{i, j}].pullback({1}, 1);
      c.gamma[{i, j}] = a[i] * conj(base.amb.u, p1) * a[j].inverse() * p0.inverse();
    }
  if (phi_out) *phi_out = std::move(phi);
  return derive(c);
}

}  // namespace

GerbeCocycle generate_coboundary(Rng& rng, const EngineContext& ec, int nsets) {
  return coboundary_with(rng, ec, nsets, nullptr);
}

GerbeCocycle generate_abelian(Rng& rng, const EngineContext& ec0) {
  EngineContext ec = ec0;
  ec.flavor = GroupFlavor::u2;
  GerbeCocycle c;
  c.ec = ec;
  c.nsets = 4;
  Connection can = Connection::canonical(ec);
  Mat id0 = Mat::identity(ec.actx(0), ec.k());
  std::map<std::pair<int, int>, Mat> b;
  for (int i = 0; i < c.nsets; ++i)
    for (int j = 0; j < c.nsets; ++j) {
      if (i == j) continue;
      b[{i, j}] = random_group_element(rng, ec, 0);
      c.lambda[{i, j}] = Ambient{id0};
    }
  for (int i = 0; i < c.nsets; ++i)
    for (int j = 0; j < c.nsets; ++j)
      for (int k = 0; k < c.nsets; ++k) {
        if (i == j || i == k || j == k) continue;
        c.g[{i, j, k}] = b[{j, k}] * b[{i, k}].inverse() * b[{i, j}];
      }
  Mat beta = random_group_form(rng, ec, 2);
  std::vector<Mat> sigma;
  for (int i = 0; i < c.nsets; ++i) {
    sigma.push_back(random_group_form(rng, ec, 1));
    c.m.push_back(can);
    c.B.push_back(delta1(can, sigma[i]).inverse() * beta);
  }
  for (int i = 0; i < c.nsets; ++i)
    for (int j = 0; j < c.nsets; ++j) {
      if (i == j) continue;
      c.gamma[{i, j}] = delta0(can, b[{i, j}]) * sigma[j] * sigma[i].inverse();
    }
  return derive(c);
}

TransformationTriple random_triple(Rng& rng, const GerbeCocycle& c) {
  TransformationTriple t;
  const EngineContext& ec = c.ec;
  Ambient pi0 = random_aut_form(rng, ec, 1);
  std::vector<Mat> ehat;
  for (int i = 0; i < c.nsets; ++i) {
    ehat.push_back(random_group_form(rng, ec, 1));
    t.pi.push_back(Ambient{ehat[i].inverse() * pi0.u});
    t.E.push_back(random_group_form(rng, ec, 1));
    t.alpha.push_back(random_group_form(rng, ec, 2));
  }
  for (const auto& [ij, lamij] : c.lambda) {
    auto [i, j] = ij;
    Mat l1 = lamij.u.pullback({0}, 1);
    t.eta[ij] = ehat[i].inverse() * conj(pi0.u, l1) * ehat[j] * l1.inverse();
  }
  return t;
}

std::vector<Mat> random_rho(Rng& rng, const GerbeCocycle& c) {
  std::vector<Mat> rho;
  for (int i = 0; i < c.nsets; ++i) rho.push_back(random_group_form(rng, c.ec, 1));
  return rho;
}

EquivalencePair random_equivalence_pair(Rng& rng, const EngineContext& ec, int nsets,
                                        bool with_theta) {
  EquivalencePair p;
  std::map<std::pair<int, int>, Mat> phi, phip;
  p.c = coboundary_with(rng, ec, nsets, &phi);
  p.cprime = coboundary_with(rng, ec, nsets, &phip);
  std::vector<Mat> chi;
  for (int i = 0; i < nsets; ++i) {
    chi.push_back(random_group_element(rng, ec, 0));
    p.e.m.push_back(Ambient{chi[i]});
  }
  for (int i = 0; i < nsets; ++i)
    for (int j = 0; j < nsets; ++j) {
      if (i == j) continue;
      p.e.delta[{i, j}] = phip[{i, j}] * chi[j] * phi[{i, j}].inverse() * chi[i].inverse();
    }
  if (with_theta)
    for (int i = 0; i < nsets; ++i) p.e.theta.push_back(random_group_element(rng, ec, 0));
  return p;
}

}  // namespace gerbecalc
