#include "core/form_calculus.hpp"

#include <algorithm>
#include <stdexcept>

namespace gerbecalc {

namespace {

std::vector<int> range_vec(int a, int b) {
  std::vector<int> v;
  for (int i = a; i <= b; ++i) v.push_back(i);
  return v;
}

// mu_{0m} over the N-simplex; m = 0 carries no transport
Ambient transport(const Connection& mu, int m, int N) {
  if (m == 0) {
    AlgebraContext c = mu.amb.u.ctx;
    c.n = N;
    return Ambient{Mat::identity(c, mu.amb.u.k)};
  }
  return mu.edge(0, m, N);
}

Ambient ad(const Ambient& t, const Ambient& v) {
  return t.compose(v).compose(t.inverse());
}

Ambient amb_smap(const Ambient& v, const std::vector<int>& f, int target_n) {
  return Ambient{v.u.simplicial_map(f, target_n)};
}

}  // namespace

bool is_group_form(const EngineContext& ec, const Mat& g) {
  if (g.k != ec.k() || !in_flavor(ec.flavor, g)) return false;
  for (int i = 0; i + 1 <= g.ctx.n; ++i)
    if (!g.degeneracy_collapse(i).is_identity()) return false;
  return true;
}

bool is_aut_form(const EngineContext& ec, const Ambient& v) {
  if (v.u.k != ec.k() || !ambient_normalizes(ec, v.u)) return false;
  for (int i = 0; i + 1 <= v.u.ctx.n; ++i)
    if (!aut_is_identity(ec, Ambient{v.u.degeneracy_collapse(i)})) return false;
  return true;
}

std::vector<int> face_map(int j, int n) {
  std::vector<int> v;
  for (int i = 0; i <= n; ++i)
    if (i != j) v.push_back(i);
  return v;
}

int perm_sign(const std::vector<int>& p) {
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

Mat delta0(const Connection& mu, const Mat& g) {
  return g.pullback({0}, 1).inverse() * mu.amb.apply(g.pullback({1}, 1));
}

Mat delta0_tilde(const Connection& mu, const Mat& g) {
  return mu.amb.apply(g.pullback({1}, 1)) * g.pullback({0}, 1).inverse();
}

Mat delta0_with(const Ambient& t, const Mat& g) {
  return g.pullback({0}, 1).inverse() * t.apply(g.pullback({1}, 1));
}

Mat delta1(const Connection& mu, const Mat& om) {
  return delta1_with(mu.edge(0, 1, 2), om);
}

Mat delta1_with(const Ambient& t01, const Mat& om) {
  return om.pullback({0, 1}, 2) * t01.apply(om.pullback({1, 2}, 2)) *
         om.pullback({0, 2}, 2).inverse();
}

Mat delta1_full(const Connection& mu, const Mat& om) {
  Ambient t = mu.edge(0, 1, 2).compose(mu.edge(1, 2, 2));
  return om.pullback({0, 1}, 2) * mu.edge(0, 1, 2).apply(om.pullback({1, 2}, 2)) *
         t.apply(om.simplicial_map({2, 0}, 2));
}

Mat delta2(const Connection& mu, const Mat& om) {
  return delta2_with(mu.edge(0, 1, 3), om);
}

Mat delta2_with(const Ambient& t01, const Mat& om) {
  return t01.apply(om.pullback({1, 2, 3}, 3)) * om.pullback({0, 1, 3}, 3) *
         om.simplicial_map({0, 3, 2}, 3) * om.simplicial_map({0, 2, 1}, 3);
}

Mat delta3(const Connection& mu, const Mat& om) {
  return mu.edge(0, 1, 4).apply(om.pullback({1, 2, 3, 4}, 4)) *
         om.pullback({0, 1, 3, 4}, 4) * om.pullback({0, 1, 2, 3}, 4) *
         om.simplicial_map({0, 2, 4, 3}, 4) * om.simplicial_map({0, 1, 4, 2}, 4);
}

Mat delta4(const Connection& mu, const Mat& om) {
  Mat r = mu.edge(0, 1, 5).apply(om.pullback(face_map(0, 5), 5));
  for (int j = 1; j <= 5; ++j) {
    Mat f = om.pullback(face_map(j, 5), 5);
    r = r * (j % 2 == 1 ? f.inverse() : f);
  }
  return r;
}

Mat delta_n(const Connection& mu, const Mat& om) {
  switch (om.ctx.n) {
    case 0: return delta0(mu, om);
    case 1: return delta1(mu, om);
    case 2: return delta2(mu, om);
    case 3: return delta3(mu, om);
    case 4: return delta4(mu, om);
    default: throw std::invalid_argument("delta_n: unsupported form degree");
  }
}

Ambient aut_delta0(const EngineContext& ec, const Connection& mu, const Ambient& v) {
  (void)ec;
  return v.pullback({0}, 1).inverse().compose(ad(mu.amb, v.pullback({1}, 1)));
}

Ambient aut_delta1(const EngineContext& ec, const Connection& mu, const Ambient& v) {
  (void)ec;
  return aut_delta1_with(mu.edge(0, 1, 2), v);
}

Ambient aut_delta1_with(const Ambient& t01, const Ambient& v) {
  return v.pullback({0, 1}, 2).compose(ad(t01, v.pullback({1, 2}, 2)))
      .compose(v.pullback({0, 2}, 2).inverse());
}

Ambient aut_delta2(const EngineContext& ec, const Connection& mu, const Ambient& v) {
  (void)ec;
  return aut_delta2_with(mu.edge(0, 1, 3), v);
}

Ambient aut_delta2_with(const Ambient& t01, const Ambient& v) {
  return ad(t01, v.pullback({1, 2, 3}, 3)).compose(v.pullback({0, 1, 3}, 3))
      .compose(amb_smap(v, {0, 3, 2}, 3)).compose(amb_smap(v, {0, 2, 1}, 3));
}

Ambient aut_delta3(const EngineContext& ec, const Connection& mu, const Ambient& v) {
  (void)ec;
  return ad(mu.edge(0, 1, 4), v.pullback({1, 2, 3, 4}, 4))
      .compose(v.pullback({0, 1, 3, 4}, 4)).compose(v.pullback({0, 1, 2, 3}, 4))
      .compose(amb_smap(v, {0, 2, 4, 3}, 4)).compose(amb_smap(v, {0, 1, 4, 2}, 4));
}

Ambient aut_delta_n(const EngineContext& ec, const Connection& mu, const Ambient& v) {
  switch (v.u.ctx.n) {
    case 0: return aut_delta0(ec, mu, v);
    case 1: return aut_delta1(ec, mu, v);
    case 2: return aut_delta2(ec, mu, v);
    case 3: return aut_delta3(ec, mu, v);
    default: throw std::invalid_argument("aut_delta_n: unsupported form degree");
  }
}

Mat bra_gg(const Connection& mu, const Mat& f, const Mat& g) {
  int m = f.ctx.n, n = g.ctx.n, N = m + n;
  Mat a = f.pullback(range_vec(0, m), N);
  Mat b = transport(mu, m, N).apply(g.pullback(range_vec(m, N), N));
  return a * b * a.inverse() * b.inverse();
}

Mat bra_ag(const Connection& mu, const Ambient& u, const Mat& g) {
  int m = u.u.ctx.n, n = g.ctx.n, N = m + n;
  Ambient up = u.pullback(range_vec(0, m), N);
  Mat gh = transport(mu, m, N).apply(g.pullback(range_vec(m, N), N));
  return up.apply(gh) * gh.inverse();
}

Mat bra_ga(const Connection& mu, const Mat& g, const Ambient& u) {
  int m = g.ctx.n, n = u.u.ctx.n, N = m + n;
  Mat gp = g.pullback(range_vec(0, m), N);
  Ambient uh = ad(transport(mu, m, N), u.pullback(range_vec(m, N), N));
  return gp * uh.apply(gp.inverse());
}

Mat doubbra(const Ambient& u, const Mat& g) { return g.inverse() * u.apply(g); }

Mat star_action(const Connection& mu, const Mat& om, const Mat& g) {
  return g.pullback({0}, 1).inverse() * om * mu.amb.apply(g.pullback({1}, 1));
}

// classical calculus ------------------------------------------------------------

ClassicalForm ClassicalForm::zero(const AlgebraContext& c, int size, int degree) {
  ClassicalForm f;
  f.ctx = c;
  f.ctx.n = 0;
  f.k = size;
  f.degree = degree;
  return f;
}

Mat ClassicalForm::component(const std::vector<int>& axes) const {
  auto it = comps.find(axes);
  if (it != comps.end()) return it->second;
  Mat z(ctx, k);
  return z;
}

ClassicalForm ClassicalForm::operator+(const ClassicalForm& o) const {
  ClassicalForm r = *this;
  for (const auto& [ax, m] : o.comps) {
    auto it = r.comps.find(ax);
    if (it == r.comps.end()) {
      r.comps.emplace(ax, m);
    } else {
      it->second = it->second + m;
      if (it->second == Mat(ctx, k)) r.comps.erase(it);
    }
  }
  return r;
}

ClassicalForm ClassicalForm::operator-() const {
  ClassicalForm r = *this;
  for (auto& [ax, m] : r.comps) m = m * Rat(-1);
  return r;
}

ClassicalForm ClassicalForm::operator-(const ClassicalForm& o) const { return *this + (-o); }

ClassicalForm ClassicalForm::truncate_base(int deg) const {
  ClassicalForm r = *this;
  for (auto& [ax, m] : r.comps)
    for (auto& entry : m.e) entry = entry.truncate_base(deg);
  std::erase_if(r.comps, [&](const auto& kv) { return kv.second == Mat(ctx, k); });
  return r;
}

ClassicalForm classical_extract(const EngineContext& ec, const Mat& g) {
  int n = g.ctx.n;
  ClassicalForm f = ClassicalForm::zero(g.ctx, g.k, n);
  uint8_t full = uint8_t((1u << n) - 1);
  for (int i = 0; i < g.k; ++i) {
    for (int j = 0; j < g.k; ++j) {
      for (const auto& [mono, c] : g.at(i, j).terms) {
        if (mono.smask != full || std::popcount(mono.amask) != n) continue;
        std::vector<int> axes;
        for (int a = 1; a <= ec.d; ++a)
          if (mono.amask & (1u << (a - 1))) axes.push_back(a);
        AlgebraElement base = AlgebraElement::constant(f.ctx, c);
        for (int a = 1; a <= ec.d; ++a)
          for (int t = 0; t < mono.exp[a - 1]; ++t)
            base = base * AlgebraElement::base_var(f.ctx, a);
        auto it = f.comps.find(axes);
        if (it == f.comps.end()) it = f.comps.emplace(axes, Mat(f.ctx, f.k)).first;
        it->second.at(i, j) += base;
      }
    }
  }
  std::erase_if(f.comps, [&](const auto& kv) { return kv.second == Mat(f.ctx, f.k); });
  return f;
}

ClassicalForm wedge(const ClassicalForm& a, const ClassicalForm& b) {
  ClassicalForm r = ClassicalForm::zero(a.ctx, a.k, a.degree + b.degree);
  for (const auto& [ax, am] : a.comps) {
    for (const auto& [bx, bm] : b.comps) {
      // shuffle sign: merge the two ascending tuples, counting inversions
      std::vector<int> merged;
      merged.reserve(ax.size() + bx.size());
      merged.insert(merged.end(), ax.begin(), ax.end());
      merged.insert(merged.end(), bx.begin(), bx.end());
      int sign = perm_sign(merged);
      std::vector<int> sorted = merged;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      Mat term = (am * bm) * Rat(sign);
      if (term == Mat(r.ctx, r.k)) continue;
      auto it = r.comps.find(sorted);
      if (it == r.comps.end()) {
        r.comps.emplace(sorted, term);
      } else {
        it->second = it->second + term;
        if (it->second == Mat(r.ctx, r.k)) r.comps.erase(it);
      }
    }
  }
  return r;
}

// (d a)(t_0..t_p) = sum_i (-1)^i d/dx_{t_i} a(t_0..^t_i..t_p)
ClassicalForm ext_d(const ClassicalForm& a) {
  ClassicalForm r = ClassicalForm::zero(a.ctx, a.k, a.degree + 1);
  for (const auto& [ax, am] : a.comps) {
    for (int axis = 1; axis <= a.ctx.d; ++axis) {
      if (std::find(ax.begin(), ax.end(), axis) != ax.end()) continue;
      Mat der = am.partial_base(axis);
      if (der == Mat(a.ctx, a.k)) continue;
      std::vector<int> tuple = ax;
      tuple.push_back(axis);
      std::sort(tuple.begin(), tuple.end());
      int pos = int(std::find(tuple.begin(), tuple.end(), axis) - tuple.begin());
      Mat term = der * Rat(pos % 2 == 0 ? 1 : -1);
      auto it = r.comps.find(tuple);
      if (it == r.comps.end()) {
        r.comps.emplace(tuple, term);
      } else {
        it->second = it->second + term;
        if (it->second == Mat(r.ctx, r.k)) r.comps.erase(it);
      }
    }
  }
  return r;
}

ClassicalForm gbracket(const ClassicalForm& a, const ClassicalForm& b) {
  ClassicalForm ab = wedge(a, b);
  ClassicalForm ba = wedge(b, a);
  return (a.degree * b.degree) % 2 == 0 ? ab - ba : ab + ba;
}

// random forms ------------------------------------------------------------------

Mat random_group_form(Rng& rng, const EngineContext& ec, int n) {
  if (n == 0) return random_group_element(rng, ec, 0);
  AlgebraContext c = ec.actx(n);
  Mat m = Mat::identity(c, ec.k());
  if (n > ec.d) return m;  // no top-degree monomials exist
  int picks = 1 + int(rng.raw() % 2);
  for (int p = 0; p < picks; ++p) {
    int i, j;
    if (ec.flavor == GroupFlavor::gl3) {
      i = int(rng.range(0, ec.k() - 1));
      j = int(rng.range(0, ec.k() - 1));
    } else {
      i = int(rng.range(0, ec.k() - 2));
      j = int(rng.range(i + 1, ec.k() - 1));
    }
    // ascending axis tuple of size n
    std::vector<int> axes;
    for (int a = 1; a <= ec.d; ++a) axes.push_back(a);
    for (int t = 0; t < n; ++t) std::swap(axes[t], axes[t + rng.raw() % (axes.size() - t)]);
    axes.resize(n);
    std::sort(axes.begin(), axes.end());
    AlgebraElement term = random_base_poly(rng, c);
    for (int t = 0; t < n; ++t) term = term * AlgebraElement::disp(c, t + 1, axes[t]);
    m.at(i, j) += term;
  }
  return m;
}

Ambient random_aut_form(Rng& rng, const EngineContext& ec, int n) {
  if (n == 0) return Ambient{random_group_element(rng, ec, 0)};
  AlgebraContext c = ec.actx(n);
  Mat m = Mat::identity(c, ec.k());
  if (n > ec.d) return Ambient{m};
  int picks = 1 + int(rng.raw() % 2);
  for (int p = 0; p < picks; ++p) {
    int i, j;
    if (ec.flavor == GroupFlavor::gl3) {
      i = int(rng.range(0, ec.k() - 1));
      j = int(rng.range(0, ec.k() - 1));
    } else {
      i = int(rng.range(0, ec.k() - 1));
      j = int(rng.range(i, ec.k() - 1));  // upper including diagonal
    }
    std::vector<int> axes;
    for (int a = 1; a <= ec.d; ++a) axes.push_back(a);
    for (int t = 0; t < n; ++t) std::swap(axes[t], axes[t + rng.raw() % (axes.size() - t)]);
    axes.resize(n);
    std::sort(axes.begin(), axes.end());
    AlgebraElement term = random_base_poly(rng, c);
    for (int t = 0; t < n; ++t) term = term * AlgebraElement::disp(c, t + 1, axes[t]);
    m.at(i, j) += term;
  }
  return Ambient{m};
}

}  // namespace gerbecalc
