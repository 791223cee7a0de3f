#include "core/matrix_group.hpp"

namespace gerbecalc {

int flavor_size(GroupFlavor f) { return f == GroupFlavor::u2 ? 2 : 3; }

bool flavor_abelian(GroupFlavor f) { return f == GroupFlavor::u2; }

std::string flavor_name(GroupFlavor f) {
  switch (f) {
    case GroupFlavor::u2: return "u2";
    case GroupFlavor::u3: return "u3";
    case GroupFlavor::gl3: return "gl3";
  }
  return "?";
}

GroupFlavor flavor_parse(const std::string& s) {
  if (s == "u2") return GroupFlavor::u2;
  if (s == "u3") return GroupFlavor::u3;
  if (s == "gl3") return GroupFlavor::gl3;
  throw std::invalid_argument("unknown flavor: " + s);
}

Mat::Mat(const AlgebraContext& c, int size) : ctx(c), k(size) {
  e.assign(size_t(k) * k, AlgebraElement::zero(c));
}

Mat Mat::identity(const AlgebraContext& c, int size) {
  Mat m(c, size);
  for (int i = 0; i < size; ++i) m.at(i, i) = AlgebraElement::one(c);
  return m;
}

bool Mat::is_identity() const { return *this == identity(ctx, k); }

Mat Mat::operator*(const Mat& o) const {
  if (k != o.k || !(ctx == o.ctx)) throw std::invalid_argument("matrix shape/context mismatch");
  Mat r(ctx, k);
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l) {
      if (at(i, l).is_zero()) continue;
      for (int j = 0; j < k; ++j) {
        if (o.at(l, j).is_zero()) continue;
        r.at(i, j) += at(i, l) * o.at(l, j);
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (k != o.k || !(ctx == o.ctx)) throw std::invalid_argument("matrix shape/context mismatch");
  Mat r = *this;
  for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (k != o.k || !(ctx == o.ctx)) throw std::invalid_argument("matrix shape/context mismatch");
  Mat r = *this;
  for (size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
  return r;
}

Mat Mat::operator*(const Rat& r) const {
  Mat m = *this;
  for (auto& x : m.e) x = x * r;
  return m;
}

std::vector<Rat> rat_mat_inverse(const std::vector<Rat>& m, int k) {
  std::vector<Rat> a = m;
  std::vector<Rat> inv(size_t(k) * k, Rat(0));
  for (int i = 0; i < k; ++i) inv[size_t(i) * k + i] = 1;
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r)
      if (a[size_t(r) * k + col] != 0) { piv = r; break; }
    if (piv < 0) throw std::domain_error("singular constant term");
    if (piv != col)
      for (int j = 0; j < k; ++j) {
        std::swap(a[size_t(piv) * k + j], a[size_t(col) * k + j]);
        std::swap(inv[size_t(piv) * k + j], inv[size_t(col) * k + j]);
      }
    Rat p = a[size_t(col) * k + col];
    for (int j = 0; j < k; ++j) {
      a[size_t(col) * k + j] /= p;
      inv[size_t(col) * k + j] /= p;
    }
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      Rat f = a[size_t(r) * k + col];
      if (f == 0) continue;
      for (int j = 0; j < k; ++j) {
        a[size_t(r) * k + j] -= f * a[size_t(col) * k + j];
        inv[size_t(r) * k + j] -= f * inv[size_t(col) * k + j];
      }
    }
  }
  return inv;
}

Mat Mat::inverse() const {
  // split off the constant part, invert it exactly, then a terminating Neumann
  // series handles the nilpotent remainder
  std::vector<Rat> c0(size_t(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c0[size_t(i) * k + j] = at(i, j).constant_term();
  std::vector<Rat> c0inv = rat_mat_inverse(c0, k);
  Mat a0inv(ctx, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      a0inv.at(i, j) = AlgebraElement::constant(ctx, c0inv[size_t(i) * k + j]);
  Mat n = *this;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      n.at(i, j) -= AlgebraElement::constant(ctx, c0[size_t(i) * k + j]);
  Mat m = (a0inv * n) * Rat(-1);  // nilpotent: entries have no constant term
  Mat acc = Mat::identity(ctx, k);
  Mat pow = m;
  int guard = ctx.D + kDispHeadroom + 1;
  for (int it = 0; it < guard; ++it) {
    bool zero = true;
    for (auto& x : pow.e)
      if (!x.is_zero()) { zero = false; break; }
    if (zero) break;
    acc = acc + pow;
    pow = pow * m;
  }
  return acc * a0inv;
}

Mat Mat::pullback(const std::vector<int>& alpha, int target_n) const {
  Mat r(AlgebraContext{ctx.d, target_n, ctx.D}, k);
  for (size_t i = 0; i < e.size(); ++i) r.e[i] = e[i].pullback(alpha, target_n);
  return r;
}

Mat Mat::simplicial_map(const std::vector<int>& f, int target_n) const {
  Mat r(AlgebraContext{ctx.d, target_n, ctx.D}, k);
  for (size_t i = 0; i < e.size(); ++i) r.e[i] = e[i].simplicial_map(f, target_n);
  return r;
}

Mat Mat::degeneracy_collapse(int i) const {
  Mat r(AlgebraContext{ctx.d, ctx.n - 1, ctx.D}, k);
  for (size_t j = 0; j < e.size(); ++j) r.e[j] = e[j].degeneracy_collapse(i);
  return r;
}

Mat Mat::partial_base(int axis) const {
  Mat r(ctx, k);
  for (size_t j = 0; j < e.size(); ++j) r.e[j] = e[j].partial_base(axis);
  return r;
}

Mat conj(const Mat& u, const Mat& g) { return u * g * u.inverse(); }

bool in_flavor(GroupFlavor f, const Mat& m) {
  if (m.k != flavor_size(f)) return false;
  if (f == GroupFlavor::gl3) {
    std::vector<Rat> c0(size_t(m.k) * m.k);
    for (int i = 0; i < m.k; ++i)
      for (int j = 0; j < m.k; ++j) c0[size_t(i) * m.k + j] = m.at(i, j).constant_term();
    try {
      rat_mat_inverse(c0, m.k);
    } catch (const std::domain_error&) {
      return false;
    }
    return true;
  }
  for (int i = 0; i < m.k; ++i)
    for (int j = 0; j <= i; ++j) {
      const AlgebraElement want =
          i == j ? AlgebraElement::one(m.ctx) : AlgebraElement::zero(m.ctx);
      if (!(m.at(i, j) == want)) return false;
    }
  return true;
}

void require_flavor(GroupFlavor f, const Mat& m, const char* what) {
  if (!in_flavor(f, m))
    throw std::invalid_argument(std::string(what) + ": not in " + flavor_name(f));
}

std::vector<Mat> elementary_generators(const EngineContext& ec, const AlgebraContext& c) {
  std::vector<Mat> gens;
  const int k = ec.k();
  auto unit = [&](int i, int j) {
    Mat m = Mat::identity(c, k);
    m.at(i, j) += AlgebraElement::one(c);
    return m;
  };
  for (int i = 0; i + 1 < k; ++i) gens.push_back(unit(i, i + 1));
  if (ec.flavor == GroupFlavor::gl3)
    for (int i = 0; i + 1 < k; ++i) gens.push_back(unit(i + 1, i));
  return gens;
}

bool ambient_normalizes(const EngineContext& ec, const Mat& u) {
  if (ec.flavor == GroupFlavor::gl3) return true;
  for (const Mat& g : elementary_generators(ec, u.ctx))
    if (!in_flavor(ec.flavor, conj(u, g))) return false;
  return true;
}

bool aut_equal(const EngineContext& ec, const Ambient& a, const Ambient& b) {
  for (const Mat& g : elementary_generators(ec, a.u.ctx))
    if (!(a.apply(g) == b.apply(g))) return false;
  return true;
}

bool aut_is_identity(const EngineContext& ec, const Ambient& a) {
  for (const Mat& g : elementary_generators(ec, a.u.ctx))
    if (!(a.apply(g) == g)) return false;
  return true;
}

Connection Connection::canonical(const EngineContext& ec) {
  return Connection{Ambient{Mat::identity(ec.actx(1), ec.k())}};
}

bool connection_valid(const EngineContext& ec, const Connection& mu) {
  const Mat& u = mu.amb.u;
  if (u.ctx.n != 1 || u.k != ec.k()) return false;
  std::vector<Rat> c0(size_t(u.k) * u.k);
  for (int i = 0; i < u.k; ++i)
    for (int j = 0; j < u.k; ++j) c0[size_t(i) * u.k + j] = u.at(i, j).constant_term();
  try {
    rat_mat_inverse(c0, u.k);
  } catch (const std::domain_error&) {
    return false;
  }
  if (!ambient_normalizes(ec, u)) return false;
  // the diagonal restriction must act trivially on every generator
  Mat diag = u.degeneracy_collapse(0);
  EngineContext ec0 = ec;
  return aut_is_identity(ec0, Ambient{diag});
}

void require_connection(const EngineContext& ec, const Connection& mu) {
  if (!connection_valid(ec, mu)) throw std::invalid_argument("invalid connection");
}

Ambient connection_curvature(const Connection& mu) {
  Ambient u01 = mu.edge(0, 1, 2);
  Ambient u12 = mu.edge(1, 2, 2);
  Ambient u02 = mu.edge(0, 2, 2);
  return u01.compose(u12).compose(u02.inverse());
}

Connection connection_perturb(const EngineContext& ec, const Connection& mu,
                              const Ambient& alpha) {
  // alpha must act as the identity on the diagonal; mu' then stays a connection
  if (!aut_is_identity(ec, Ambient{alpha.u.degeneracy_collapse(0)}))
    throw std::invalid_argument("perturbation does not act trivially on the diagonal");
  return Connection{Ambient{alpha.u * mu.amb.u}};
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  return lo + std::int64_t(raw() % std::uint64_t(hi - lo + 1));
}

Rat Rng::coeff() {
  std::int64_t num = range(-3, 3);
  if (num == 0) num = 1;
  std::int64_t den = range(1, 3);
  return Rat(num, den);
}

AlgebraElement random_base_poly(Rng& rng, const AlgebraContext& c) {
  AlgebraElement p = AlgebraElement::constant(c, rng.coeff());
  for (int a = 1; a <= c.d; ++a) {
    if (rng.range(0, 1))
      p += AlgebraElement::base_var(c, a) * rng.coeff();
    if (rng.range(0, 2) == 0) {
      int b = int(rng.range(a, c.d));
      p += AlgebraElement::base_var(c, a) * AlgebraElement::base_var(c, b) * rng.coeff();
    }
  }
  return p;
}

namespace {

// sparse algebra element with displacement terms of every degree, no constant term
AlgebraElement random_offset_entry(Rng& rng, const AlgebraContext& c) {
  AlgebraElement p = AlgebraElement::zero(c);
  p += AlgebraElement::base_var(c, 1 + int(rng.range(0, c.d - 1))) * rng.coeff();
  for (int s = 1; s <= c.n; ++s) {
    if (rng.range(0, 1)) continue;
    int a = 1 + int(rng.range(0, c.d - 1));
    AlgebraElement t = AlgebraElement::disp(c, s, a) * rng.coeff();
    if (rng.range(0, 1)) t = t * AlgebraElement::base_var(c, 1 + int(rng.range(0, c.d - 1)));
    if (s > 1 && rng.range(0, 1)) {
      int a2 = 1 + int(rng.range(0, c.d - 1));
      t = t * AlgebraElement::disp(c, 1 + int(rng.range(0, s - 2)), a2);
    }
    p += t;
  }
  return p;
}

}  // namespace

Mat random_group_element(Rng& rng, const EngineContext& ec, int n) {
  const AlgebraContext c = ec.actx(n);
  const int k = ec.k();
  if (ec.flavor == GroupFlavor::gl3) {
    Mat m = Mat::identity(c, k);
    for (int t = 0; t < 3; ++t) {
      int i = int(rng.range(0, k - 1));
      int j = int(rng.range(0, k - 1));
      if (i == j) continue;
      Mat f = Mat::identity(c, k);
      f.at(i, j) += AlgebraElement::constant(c, Rat(rng.range(-2, 2)));
      m = m * f;
    }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (rng.range(0, 2) == 0) m.at(i, j) += random_offset_entry(rng, c);
    return m;
  }
  Mat m = Mat::identity(c, k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      m.at(i, j) = random_base_poly(rng, c);
      m.at(i, j) += random_offset_entry(rng, c);
    }
  return m;
}

namespace {

// ambient offset position: upper triangular (diagonal allowed) keeps the
// unitriangular subgroup normalized; anything goes for gl3
std::pair<int, int> ambient_position(Rng& rng, const EngineContext& ec) {
  const int k = ec.k();
  if (ec.flavor == GroupFlavor::gl3)
    return {int(rng.range(0, k - 1)), int(rng.range(0, k - 1))};
  int i = int(rng.range(0, k - 1));
  int j = int(rng.range(i, k - 1));
  return {i, j};
}

}  // namespace

Connection random_connection(Rng& rng, const EngineContext& ec) {
  const AlgebraContext c = ec.actx(1);
  Mat u = Mat::identity(c, ec.k());
  for (int a = 1; a <= c.d; ++a) {
    int picks = 1 + int(rng.range(0, 1));
    for (int t = 0; t < picks; ++t) {
      auto [i, j] = ambient_position(rng, ec);
      u.at(i, j) += random_base_poly(rng, c) * AlgebraElement::disp(c, 1, a);
    }
  }
  Connection mu{Ambient{u}};
  require_connection(ec, mu);
  return mu;
}

Ambient random_connection_perturbation(Rng& rng, const EngineContext& ec) {
  return random_connection(rng, ec).amb;
}

}  // namespace gerbecalc
