#include "core/simplex_algebra.hpp"

#include <cctype>
#include <stdexcept>

namespace gerbecalc {

void AlgebraContext::validate() const {
  if (d < 1 || d > kMaxBaseDim) throw std::invalid_argument("base_dim out of range");
  if (n < 0 || n > kMaxSimplexOrder) throw std::invalid_argument("simplex_order out of range");
  if (D < 0 || D > 30) throw std::invalid_argument("trunc_degree out of range");
}

namespace {

void pairs_of(uint8_t smask, uint8_t amask, int* slots, int* axes, int& k) {
  int axlist[8], na = 0;
  for (int a = 0; a < 8; ++a)
    if (amask >> a & 1) axlist[na++] = a;
  k = 0;
  for (int s = 0; s < 8; ++s)
    if (smask >> s & 1) {
      slots[k] = s;
      axes[k] = axlist[k];
      ++k;
    }
}

// product of canonical displacement parts: 0 if a slot or axis repeats, else the
// axis-permutation sign relative to the slot-sorted merge
int disp_mul(uint8_t s1, uint8_t a1, uint8_t s2, uint8_t a2, uint8_t& so, uint8_t& ao) {
  if ((s1 & s2) || (a1 & a2)) return 0;
  so = s1 | s2;
  ao = a1 | a2;
  int sl1[8], ax1[8], k1, sl2[8], ax2[8], k2;
  pairs_of(s1, a1, sl1, ax1, k1);
  pairs_of(s2, a2, sl2, ax2, k2);
  int seq[16], k = 0, i = 0, j = 0;
  while (i < k1 || j < k2) {
    if (j >= k2 || (i < k1 && sl1[i] < sl2[j]))
      seq[k++] = ax1[i++];
    else
      seq[k++] = ax2[j++];
  }
  int inv = 0;
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q)
      if (seq[p] > seq[q]) ++inv;
  return inv % 2 ? -1 : 1;
}

}  // namespace

void AlgebraElement::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  if (m.base_deg() + m.disp_deg() > ctx.D + kDispHeadroom) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

AlgebraElement AlgebraElement::constant(const AlgebraContext& c, const Rat& r) {
  AlgebraElement e(c);
  e.add_term(Monomial{}, r);
  return e;
}

AlgebraElement AlgebraElement::base_var(const AlgebraContext& c, int axis) {
  if (axis < 1 || axis > c.d) throw std::invalid_argument("base axis out of range");
  Monomial m;
  m.exp[axis - 1] = 1;
  AlgebraElement e(c);
  e.add_term(m, 1);
  return e;
}

AlgebraElement AlgebraElement::disp(const AlgebraContext& c, int slot, int axis) {
  if (slot < 1 || slot > c.n) throw std::invalid_argument("displacement slot out of range");
  if (axis < 1 || axis > c.d) throw std::invalid_argument("displacement axis out of range");
  Monomial m;
  m.smask = uint8_t(1u << (slot - 1));
  m.amask = uint8_t(1u << (axis - 1));
  AlgebraElement e(c);
  e.add_term(m, 1);
  return e;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (!(ctx == o.ctx)) throw std::invalid_argument("algebra context mismatch");
  for (auto& [m, c] : o.terms) add_term(m, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (!(ctx == o.ctx)) throw std::invalid_argument("algebra context mismatch");
  for (auto& [m, c] : o.terms) add_term(m, -c);
  return *this;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  r += o;
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  r -= o;
  return r;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r(ctx);
  for (auto& [m, c] : terms) r.terms.emplace(m, -c);
  return r;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  if (!(ctx == o.ctx)) throw std::invalid_argument("algebra context mismatch");
  AlgebraElement out(ctx);
  for (auto& [m1, c1] : terms)
    for (auto& [m2, c2] : o.terms) {
      uint8_t so, ao;
      int sg = disp_mul(m1.smask, m1.amask, m2.smask, m2.amask, so, ao);
      if (!sg) continue;
      Monomial m;
      m.smask = so;
      m.amask = ao;
      for (int a = 0; a < ctx.d; ++a) m.exp[a] = uint8_t(m1.exp[a] + m2.exp[a]);
      Rat c = c1 * c2;
      if (sg < 0) c = -c;
      out.add_term(m, c);
    }
  return out;
}

AlgebraElement AlgebraElement::operator*(const Rat& r) const {
  AlgebraElement out(ctx);
  if (r == 0) return out;
  for (auto& [m, c] : terms) out.terms.emplace(m, c * r);
  return out;
}

Rat AlgebraElement::constant_term() const {
  auto it = terms.find(Monomial{});
  return it == terms.end() ? Rat(0) : it->second;
}

int AlgebraElement::max_base_deg() const {
  int md = 0;
  for (auto& [m, c] : terms) md = std::max(md, m.base_deg());
  return md;
}

AlgebraElement AlgebraElement::truncate_base(int deg) const {
  AlgebraElement out(ctx);
  for (auto& [m, c] : terms)
    if (m.base_deg() <= deg) out.terms.emplace(m, c);
  return out;
}

AlgebraElement AlgebraElement::partial_base(int axis) const {
  if (axis < 1 || axis > ctx.d) throw std::invalid_argument("base axis out of range");
  AlgebraElement out(ctx);
  for (auto& [m, c] : terms) {
    int e = m.exp[axis - 1];
    if (!e) continue;
    Monomial dm = m;
    dm.exp[axis - 1] = uint8_t(e - 1);
    out.add_term(dm, c * e);
  }
  return out;
}

AlgebraElement AlgebraElement::simplicial_map(const std::vector<int>& f, int target_n) const {
  if ((int)f.size() != ctx.n + 1) throw std::invalid_argument("vertex map has wrong arity");
  AlgebraContext t = ctx;
  t.n = target_n;
  t.validate();
  for (int v : f)
    if (v < 0 || v > target_n) throw std::invalid_argument("vertex map out of range");
  const int f0 = f[0];
  auto dvar = [&](int vtx, int axis) { return vtx == 0 ? zero(t) : disp(t, vtx, axis); };

  AlgebraElement out(t);
  int sl[8], ax[8], k;
  for (auto& [m, c] : terms) {
    AlgebraElement term = constant(t, c);
    for (int a = 1; a <= ctx.d; ++a) {
      int e = m.exp[a - 1];
      if (!e) continue;
      AlgebraElement fac = base_var(t, a);
      if (f0 != 0) fac += disp(t, f0, a);
      for (int p = 0; p < e; ++p) term = term * fac;
    }
    pairs_of(m.smask, m.amask, sl, ax, k);
    for (int p = 0; p < k; ++p)
      term = term * (dvar(f[sl[p] + 1], ax[p] + 1) - dvar(f0, ax[p] + 1));
    out += term;
  }
  return out;
}

AlgebraElement AlgebraElement::pullback(const std::vector<int>& alpha, int target_n) const {
  for (size_t i = 0; i < alpha.size(); ++i)
    for (size_t j = i + 1; j < alpha.size(); ++j)
      if (alpha[i] == alpha[j]) throw std::invalid_argument("pullback map must be injective");
  return simplicial_map(alpha, target_n);
}

AlgebraElement AlgebraElement::degeneracy_subst(int i, int j) const {
  if (i < 0 || j <= i || j > ctx.n) throw std::invalid_argument("degeneracy indices out of range");
  std::vector<int> f(ctx.n + 1);
  for (int t = 0; t <= ctx.n; ++t) f[t] = t;
  f[j] = i;
  return simplicial_map(f, ctx.n);
}

AlgebraElement AlgebraElement::degeneracy_collapse(int i) const {
  if (i < 0 || i > ctx.n - 1) throw std::invalid_argument("degeneracy index out of range");
  std::vector<int> f(ctx.n + 1);
  for (int t = 0; t <= ctx.n; ++t) f[t] = t <= i ? t : t - 1;
  return simplicial_map(f, ctx.n - 1);
}

std::string AlgebraElement::str() const {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [m, c] : terms) {
    Rat a = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) s += "-";
      first = false;
    } else {
      s += c < 0 ? " - " : " + ";
    }
    std::vector<std::string> factors;
    for (int ax = 1; ax <= ctx.d; ++ax)
      for (int p = 0; p < m.exp[ax - 1]; ++p) factors.push_back("x" + std::to_string(ax));
    int sl[8], axp[8], k;
    pairs_of(m.smask, m.amask, sl, axp, k);
    for (int p = 0; p < k; ++p)
      factors.push_back("d" + std::to_string(sl[p] + 1) + "_" + std::to_string(axp[p] + 1));
    std::string body;
    if (factors.empty()) {
      body = rat_str(a);
    } else {
      if (a != 1) body = rat_str(a);
      for (auto& f : factors) {
        if (!body.empty()) body += "*";
        body += f;
      }
    }
    s += body;
  }
  return s;
}

AlgebraElement AlgebraElement::parse(const AlgebraContext& c, const std::string& src) {
  std::string s;
  for (char ch : src)
    if (!std::isspace((unsigned char)ch)) s += ch;
  AlgebraElement out = zero(c);
  size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("polynomial parse error at offset " + std::to_string(pos) + ": " + why +
                             " in '" + src + "'");
  };
  auto read_uint = [&]() -> long {
    if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected digit");
    long v = 0;
    size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
      v = v * 10 + (s[pos] - '0');
      if (pos - start > 17) fail("number too long");
      ++pos;
    }
    return v;
  };
  if (s.empty()) fail("empty input");
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected '+' or '-'");
    }
    Rat coeff = sign;
    AlgebraElement mon = one(c);
    bool more = true;
    while (more) {
      if (pos >= s.size()) fail("unexpected end of term");
      char ch = s[pos];
      if (std::isdigit((unsigned char)ch)) {
        long num = read_uint();
        if (pos < s.size() && s[pos] == '/') {
          ++pos;
          long den = read_uint();
          if (den == 0) fail("zero denominator");
          coeff *= Rat(num, den);
        } else {
          coeff *= num;
        }
      } else if (ch == 'x') {
        ++pos;
        long axis = read_uint();
        if (axis < 1 || axis > c.d) fail("base axis out of range");
        mon = mon * base_var(c, (int)axis);
      } else if (ch == 'd') {
        ++pos;
        long slot = read_uint();
        if (pos >= s.size() || s[pos] != '_') fail("expected '_' in displacement variable");
        ++pos;
        long axis = read_uint();
        if (slot < 1 || slot > c.n) fail("displacement slot out of range");
        if (axis < 1 || axis > c.d) fail("displacement axis out of range");
        mon = mon * disp(c, (int)slot, (int)axis);
      } else {
        fail("unexpected character");
      }
      if (pos < s.size() && s[pos] == '*')
        ++pos;
      else
        more = false;
    }
    out += mon * coeff;
  }
  return out;
}

}  // namespace gerbecalc
