#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "core/torsor.hpp"

using namespace gerbecalc;

namespace {

std::map<std::string, CheckRecord> by_tag(const std::vector<CheckRecord>& rs) {
  std::map<std::string, CheckRecord> m;
  for (const auto& r : rs) m.emplace(r.tag, r);
  return m;
}

void expect_all_pass(const std::vector<CheckRecord>& rs) {
  for (const auto& r : rs) {
    INFO(r.tag, " ", r.site, ": ", r.detail);
    CHECK(r.pass);
  }
}

TorsorData canonical_mu_torsor(Rng& rng, const EngineContext& ec, int nsets) {
  TorsorData t;
  t.ec = ec;
  t.nsets = nsets;
  t.mu = Connection::canonical(ec);
  std::vector<Mat> triv;
  for (int i = 0; i < nsets; ++i) triv.push_back(random_group_element(rng, ec, 0));
  for (int i = 0; i < nsets; ++i)
    for (int j = 0; j < nsets; ++j)
      if (i != j) t.g.emplace(std::pair{i, j}, triv[i].inverse() * triv[j]);
  t.omega.push_back(random_group_form(rng, ec, 1));
  for (int i = 1; i < nsets; ++i)
    t.omega.push_back(star_action(t.mu, t.omega[0], t.gij(0, i)));
  return t;
}

}  // namespace

TEST_CASE("generated torsors satisfy the whole suite") {
  for (GroupFlavor f : {GroupFlavor::u2, GroupFlavor::u3, GroupFlavor::gl3}) {
    EngineContext ec;
    ec.flavor = f;
    for (int seed = 1; seed <= 5; ++seed) {
      Rng rng(seed * 977 + int(f));
      TorsorData t = random_torsor(rng, ec, 2 + seed % 2, true, true);
      auto rs = check_torsor(t);
      expect_all_pass(rs);
      auto tags = by_tag(rs);
      for (const char* tag : {"1coc", "omcoc1", "k-twist-1", "bianchi:cl",
                              "kd11", "cobcap", "0coch"}) {
        INFO(tag);
        CHECK_FALSE(tags.at(tag).vacuous);
      }
      // both canonical-group statements stand down while mu is generic
      CHECK(tags.at("gluecurv2").vacuous);
      CHECK(tags.at("defkap0").vacuous);
    }
  }
}

TEST_CASE("truncation budget does not disturb the suite") {
  for (int D : {1, 3}) {
    EngineContext ec;
    ec.D = D;
    Rng rng(1234 + D);
    expect_all_pass(check_torsor(random_torsor(rng, ec, 3, true, true)));
  }
}

TEST_CASE("canonical connection glues curvature by plain conjugation") {
  EngineContext ec;
  Rng rng(555);
  TorsorData t = canonical_mu_torsor(rng, ec, 3);
  auto rs = check_torsor(t);
  expect_all_pass(rs);
  auto tags = by_tag(rs);
  CHECK_FALSE(tags.at("gluecurv2").vacuous);
  CHECK_FALSE(tags.at("k-twist-1").vacuous);
  CHECK_FALSE(tags.at("defkap0").vacuous);
}

TEST_CASE("the Bianchi identity gains content in higher base dimension") {
  EngineContext ec;
  ec.d = 3;
  ec.flavor = GroupFlavor::gl3;
  Rng rng(7);
  TorsorData t = canonical_mu_torsor(rng, ec, 2);
  auto tags = by_tag(check_torsor(t));
  CHECK_FALSE(tags.at("defkap0").vacuous);
  CHECK(tags.at("defkap0").pass);
  // the omega twist in the transport is what closes the identity
  Mat kap = torsor_curvature(t, 0);
  CHECK(delta2_with(local_transport(t, 0, 3), kap).is_identity());
  CHECK_FALSE(delta2_with(Ambient{Mat::identity(ec.actx(3), ec.k())}, kap).is_identity());
}

TEST_CASE("local curvature is a 2-form") {
  EngineContext ec;
  Rng rng(777);
  TorsorData t = random_torsor(rng, ec, 2, false, false);
  for (int i = 0; i < t.nsets; ++i) CHECK(is_group_form(ec, torsor_curvature(t, i)));
}

TEST_CASE("violations are localized to the responsible law") {
  EngineContext ec;
  Rng rng(888);
  TorsorData t = random_torsor(rng, ec, 3, false, false);

  TorsorData bad_g = t;
  Mat spoil = Mat::identity(ec.actx(0), 3);
  spoil.at(0, 1) = AlgebraElement::one(ec.actx(0));
  bad_g.g.at({0, 1}) = bad_g.g.at({0, 1}) * spoil;
  auto tags = by_tag(check_torsor(bad_g));
  CHECK_FALSE(tags.at("1coc").pass);
  CHECK(tags.at("1coc").site.find("g(") != std::string::npos);
  CHECK(tags.at("kd11").pass);
  CHECK(tags.at("bianchi:cl").pass);
  CHECK(tags.at("defkap0").pass);

  TorsorData bad_w = t;
  AlgebraContext c1 = ec.actx(1);
  Mat bump = Mat::identity(c1, 3);
  bump.at(0, 2) = AlgebraElement::disp(c1, 1, 1);
  bad_w.omega[1] = bad_w.omega[1] * bump;
  tags = by_tag(check_torsor(bad_w));
  CHECK(tags.at("1coc").pass);
  CHECK_FALSE(tags.at("omcoc1").pass);
}

TEST_CASE("gauge transformation preserves the cocycle laws") {
  EngineContext ec;
  Rng rng(999);
  TorsorData t = random_torsor(rng, ec, 3, true, true);
  TorsorData tg = apply_gauge(t);
  CHECK(tg.gauge.empty());
  expect_all_pass(check_torsor(tg));
}
