#include "core/crossed_module.hpp"

#include <stdexcept>
#include <string>

namespace gerbecalc {

namespace {

std::string at_one(const char* what, int i) {
  return std::string(what) + "_" + std::to_string(i);
}

// vertex list 0..n with v omitted
std::vector<int> face_omitting(int v, int n) {
  std::vector<int> f;
  for (int t = 0; t <= n; ++t)
    if (t != v) f.push_back(t);
  return f;
}

}  // namespace

bool CrossedModule::in_g1(const Mat& f) const {
  if (shape == SubgroupShape::full) return true;
  Mat probe = Mat::identity(f.ctx, ec.k());
  switch (ec.flavor) {
    case GroupFlavor::u2:
      return true;  // the group is its own center
    case GroupFlavor::u3:
      probe.at(0, 2) = f.at(0, 2);
      return probe == f;
    case GroupFlavor::gl3:
      for (int r = 0; r < ec.k(); ++r) probe.at(r, r) = f.at(0, 0);
      return probe == f;
  }
  return false;
}

Mat CrossedModule::random_g1(Rng& rng, int n) const {
  Mat h = random_group_element(rng, ec, n);
  if (shape == SubgroupShape::full) return h;
  Mat m = Mat::identity(ec.actx(n), ec.k());
  switch (ec.flavor) {
    case GroupFlavor::u2:
      return h;
    case GroupFlavor::u3:
      m.at(0, 2) = h.at(0, 2);
      return m;
    case GroupFlavor::gl3:
      for (int r = 0; r < ec.k(); ++r) m.at(r, r) = h.at(0, 0);
      return m;
  }
  return m;
}

std::vector<CheckRecord> check_AB(const CMFormData& dat) {
  const int n = dat.n;
  if (n < 1 || dat.g.ctx.n != n || int(dat.phi.size()) != n)
    throw std::invalid_argument("check_AB: shape mismatch");
  for (const Mat& p : dat.phi) {
    if (p.ctx.n != n - 1) throw std::invalid_argument("check_AB: shape mismatch");
    if (!dat.cm.in_g1(p)) throw std::invalid_argument("check_AB: phi outside G1");
  }

  Checker ai("ai"), bij("bij");
  for (int i = 0; i < n; ++i)
    ai.eq(dat.g.degeneracy_collapse(i), dat.phi[i], at_one("A", i));
  for (int i = 0; i <= n - 2; ++i)
    for (int j = i; j <= n - 2; ++j)
      bij.eq(dat.phi[i].degeneracy_collapse(j), dat.phi[j + 1].degeneracy_collapse(i),
             "B_" + std::to_string(i) + "," + std::to_string(j));
  return {ai.record(), bij.record()};
}

NormalizeResult normalize(const CMFormData& dat) {
  for (const auto& r : check_AB(dat))
    if (!r.pass) throw std::invalid_argument("normalize: precondition: " + r.detail);

  const int n = dat.n;
  const EngineContext& ec = dat.cm.ec;
  Mat g = dat.g;
  std::vector<Mat> phi = dat.phi;
  Mat chi = Mat::identity(ec.actx(n), ec.k());
  Mat idp = Mat::identity(ec.actx(n - 1), ec.k());

  auto assert_stage = [&](int stage) {
    for (int i = 0; i < n; ++i)
      if (!(g.degeneracy_collapse(i) == phi[i]))
        throw std::logic_error("normalize: A broken at stage " + std::to_string(stage));
    for (int i = 0; i <= n - 2; ++i)
      for (int j = i; j <= n - 2; ++j)
        if (!(phi[i].degeneracy_collapse(j) == phi[j + 1].degeneracy_collapse(i)))
          throw std::logic_error("normalize: B broken at stage " + std::to_string(stage));
    for (int i = 0; i < stage && i < n; ++i) {
      if (!phi[i].is_identity())
        throw std::logic_error("normalize: C broken at stage " + std::to_string(stage));
      if (!g.degeneracy_collapse(i).is_identity())
        throw std::logic_error("normalize: degeneracy survives stage " +
                               std::to_string(stage));
    }
  };

  for (int k = 0; k < n; ++k) {
    Mat fk = phi[k].pullback(face_omitting(k + 1, n), n);
    Mat gnext = fk.inverse() * g;
    // the same update written through g itself
    Mat alt = g.degeneracy_collapse(k).pullback(face_omitting(k + 1, n), n);
    if (!(gnext == alt.inverse() * g))
      throw std::logic_error("normalize: update factor mismatch at stage " +
                             std::to_string(k));
    chi = chi * fk;

    std::vector<Mat> next = phi;
    for (int i = 0; i < n; ++i) {
      if (i < k + 1) {
        next[i] = idp;
      } else if (i == k + 1) {
        next[i] = phi[k].inverse() * phi[k + 1];
      } else {
        Mat head = phi[k].degeneracy_collapse(i - 1).pullback(face_omitting(k + 1, n - 1),
                                                              n - 1);
        next[i] = head.inverse() * phi[i];
        // the correction factor can be read off phi_i itself; this is the
        // content of the B condition at (k, i-1)
        Mat tail = phi[i].degeneracy_collapse(k).pullback(face_omitting(k + 1, n - 1),
                                                          n - 1);
        if (!(next[i] == tail.inverse() * phi[i]))
          throw std::logic_error("normalize: phi update expressions disagree at stage " +
                                 std::to_string(k));
      }
    }
    g = gnext;
    phi = next;
    assert_stage(k + 1);
  }

  for (int i = 0; i < n; ++i)
    if (!g.degeneracy_collapse(i).is_identity())
      throw std::logic_error("normalize: output not degenerate-vanishing");
  if (!dat.cm.in_g1(chi)) throw std::logic_error("normalize: chi escaped G1");
  if (!(chi * g == dat.g)) throw std::logic_error("normalize: factorization broken");
  return {g, chi};
}

std::vector<CheckRecord> check_cm(const CMFormData& dat) {
  auto recs = check_AB(dat);

  // action coherence on elements drawn from the datum itself: delta commutes
  // with the action and the action of delta(f) is inner
  Checker cract("cract");
  Mat f1 = dat.phi[0], f2 = dat.phi[dat.n - 1];
  Mat g0 = dat.g.degeneracy_collapse(0);
  Mat gf = dat.cm.act(g0, f1);
  if (!dat.cm.in_g1(gf)) {
    cract.require(false, "action leaves G1");
  } else {
    cract.eq(gf, g0 * f1 * g0.inverse(), "equivariance");
    cract.eq(dat.cm.act(f1, f2), f1 * f2 * f1.inverse(), "peiffer");
    cract.require(dat.cm.in_g1(f1 * f2 * f1.inverse()), "G1 not normal");
  }
  recs.push_back(cract.record());

  Checker lemdeg("lemdeg");
  try {
    NormalizeResult r = normalize(dat);
    lemdeg.eq(r.chi * r.gprime, dat.g, "factorization");
    for (int i = 0; i < dat.n; ++i)
      lemdeg.identity(r.gprime.degeneracy_collapse(i), at_one("degeneracy", i));
  } catch (const std::exception& e) {
    lemdeg.require(false, e.what());
  }
  recs.push_back(lemdeg.record());
  return recs;
}

CMFormData make_oracle_data(Rng& rng, const EngineContext& ec, SubgroupShape shape,
                            int n) {
  CMFormData dat;
  dat.cm = CrossedModule{ec, shape};
  dat.n = n;
  Mat g0 = random_group_form(rng, ec, n);
  Mat chi0 = dat.cm.random_g1(rng, n);
  dat.g = chi0 * g0;
  for (int i = 0; i < n; ++i) dat.phi.push_back(chi0.degeneracy_collapse(i));
  return dat;
}

}  // namespace gerbecalc
