#pragma once
#include <string>
#include <vector>

#include "core/form_calculus.hpp"

namespace gerbecalc {

// outcome of one named law over a whole dataset; vacuous = no instance existed.
// site records which instance (simplex tuple) broke first, detail its residual
struct CheckRecord {
  std::string tag;
  bool pass = true;
  bool vacuous = true;
  std::string site;
  std::string detail;
};

inline std::string mat_literal(const Mat& m) {
  std::string s = "[";
  for (int i = 0; i < m.k; ++i)
    for (int j = 0; j < m.k; ++j) {
      if (i || j) s += ", ";
      s += m.at(i, j).str();
    }
  return s + "]";
}

// accumulates instances of one law; on the first violation keeps the residual
class Checker {
 public:
  explicit Checker(std::string tag) { rec_.tag = std::move(tag); }

  void eq(const Mat& lhs, const Mat& rhs, const std::string& where) {
    rec_.vacuous = false;
    if (!rec_.pass || lhs == rhs) return;
    rec_.pass = false;
    rec_.site = where;
    rec_.detail = "residual " + mat_literal(lhs * rhs.inverse());
  }

  void identity(const Mat& lhs, const std::string& where) {
    rec_.vacuous = false;
    if (!rec_.pass || lhs.is_identity()) return;
    rec_.pass = false;
    rec_.site = where;
    rec_.detail = "residual " + mat_literal(lhs);
  }

  void aut_eq(const EngineContext& ec, const Ambient& a, const Ambient& b,
              const std::string& where) {
    rec_.vacuous = false;
    if (!rec_.pass || aut_equal(ec, a, b)) return;
    rec_.pass = false;
    for (const Mat& g : elementary_generators(ec, a.u.ctx)) {
      Mat la = a.apply(g), lb = b.apply(g);
      if (la == lb) continue;
      rec_.site = where;
      rec_.detail = "generator residual " + mat_literal(la * lb.inverse());
      return;
    }
  }

  void aut_identity(const EngineContext& ec, const Ambient& a, const std::string& where) {
    rec_.vacuous = false;
    if (!rec_.pass || aut_is_identity(ec, a)) return;
    rec_.pass = false;
    for (const Mat& g : elementary_generators(ec, a.u.ctx)) {
      Mat la = a.apply(g);
      if (la == g) continue;
      rec_.site = where;
      rec_.detail = "generator residual " + mat_literal(la * g.inverse());
      return;
    }
  }

  // classical statements are certified inside the base-degree budget
  void cl_eq(const ClassicalForm& lhs0, const ClassicalForm& rhs0, const std::string& where) {
    rec_.vacuous = false;
    ClassicalForm lhs = lhs0.truncate_base(lhs0.ctx.D);
    ClassicalForm rhs = rhs0.truncate_base(rhs0.ctx.D);
    if (!rec_.pass || lhs == rhs) return;
    rec_.pass = false;
    ClassicalForm diff = lhs - rhs;
    std::string axes = "{";
    if (!diff.comps.empty()) {
      const auto& [ax, m] = *diff.comps.begin();
      for (size_t t = 0; t < ax.size(); ++t) axes += (t ? "," : "") + std::to_string(ax[t]);
      axes += "}: " + mat_literal(m);
    } else {
      axes += "}";  // degree/shape mismatch only
    }
    rec_.site = where;
    rec_.detail = "residual component " + axes;
  }

  // ambient-valued classical statements live in the Lie algebra of the
  // automorphism group: the residual must act trivially by bracket
  void cl_eq_ad(const EngineContext& ec, const ClassicalForm& lhs0, const ClassicalForm& rhs0,
                const std::string& where) {
    rec_.vacuous = false;
    if (!rec_.pass) return;
    ClassicalForm diff = lhs0.truncate_base(lhs0.ctx.D) - rhs0.truncate_base(rhs0.ctx.D);
    for (const auto& [ax, m] : diff.comps)
      for (const Mat& g : elementary_generators(ec, m.ctx)) {
        if (m * g == g * m) continue;
        rec_.pass = false;
        std::string axes = "{";
        for (size_t t = 0; t < ax.size(); ++t) axes += (t ? "," : "") + std::to_string(ax[t]);
        rec_.site = where;
        rec_.detail = "non-central residual component " + axes +
                      "}: " + mat_literal(m * g - g * m);
        return;
      }
  }

  void require(bool ok, const std::string& where) {
    rec_.vacuous = false;
    if (!rec_.pass || ok) return;
    rec_.pass = false;
    rec_.site = where;
    rec_.detail = where;
  }

  CheckRecord record() const { return rec_; }

 private:
  CheckRecord rec_;
};

}  // namespace gerbecalc
