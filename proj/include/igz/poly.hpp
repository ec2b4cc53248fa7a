#pragma once

/**
 * Multivariate polynomials: exact integer coefficients (IPoly, the parse
 * target and the form stored in variety documents) and coefficients in a
 * finite field (MPoly, the computational form).
 *
 * Expression grammar for parse():
 *   expr   := ['-'] term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := atom ('^' uint)?
 *   atom   := integer | variable | '(' expr ')'
 * Variables are x1..xn; x, y, z, w are accepted as aliases for x1..x4.
 */

#include <cctype>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "igz/ffield.hpp"

namespace igz {

using ExpVec = std::vector<uint16_t>;

/// Polynomial with integer coefficients in n variables.
class IPoly {
 public:
  IPoly() : nvars_(0) {}
  explicit IPoly(int nvars) : nvars_(nvars) {}

  static IPoly constant(int nvars, int64_t c) {
    IPoly p(nvars);
    if (c != 0) p.terms_[ExpVec(nvars, 0)] = c;
    return p;
  }
  static IPoly variable(int nvars, int idx) {
    IPoly p(nvars);
    ExpVec e(nvars, 0);
    e.at(idx) = 1;
    p.terms_[e] = 1;
    return p;
  }

  int nvars() const { return nvars_; }
  const std::map<ExpVec, int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend IPoly operator+(const IPoly& a, const IPoly& b) {
    IPoly r = a;
    for (auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend IPoly operator-(const IPoly& a, const IPoly& b) {
    IPoly r = a;
    for (auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  friend IPoly operator*(const IPoly& a, const IPoly& b) {
    IPoly r(a.nvars_);
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        ExpVec e(a.nvars_);
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  IPoly pow(uint32_t n) const {
    IPoly r = constant(nvars_, 1);
    for (uint32_t i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  static IPoly parse(int nvars, std::string_view src);

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
      if (!first) os << (c >= 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      int64_t a = c < 0 ? -c : c;
      bool shown = false;
      if (a != 1) {
        os << a;
        shown = true;
      }
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (shown) os << "*";
        os << "x" << (i + 1);
        if (e[i] > 1) os << "^" << e[i];
        shown = true;
      }
      if (!shown) os << 1;
      first = false;
    }
    return os.str();
  }

 private:
  void add_term(const ExpVec& e, int64_t c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (c != 0) terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  int nvars_;
  std::map<ExpVec, int64_t> terms_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(int nvars, std::string_view s) : n_(nvars), s_(s) {}

  IPoly parse() {
    IPoly r = expr();
    skip();
    if (pos_ != s_.size())
      throw ValidationError("polynomial parse error at '" +
                            std::string(s_.substr(pos_)) + "'");
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  IPoly expr() {
    bool neg = false;
    skip();
    if (eat('-')) neg = true;
    else eat('+');
    IPoly acc = term();
    if (neg) acc = IPoly(n_) - acc;
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  IPoly term() {
    IPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  IPoly factor() {
    IPoly base = atom();
    if (eat('^')) {
      uint32_t n = uinteger();
      base = base.pow(n);
    }
    return base;
  }

  IPoly atom() {
    skip();
    if (eat('(')) {
      IPoly r = expr();
      if (!eat(')')) throw ValidationError("polynomial parse: missing ')'");
      return r;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)))
      return IPoly::constant(n_, static_cast<int64_t>(uinteger()));
    if (c == 'x' || c == 'y' || c == 'z' || c == 'w') {
      ++pos_;
      int idx;
      if (c == 'x' && pos_ < s_.size() &&
          std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        idx = static_cast<int>(uinteger()) - 1;
      } else {
        idx = (c == 'x') ? 0 : (c == 'y') ? 1 : (c == 'z') ? 2 : 3;
      }
      if (idx < 0 || idx >= n_)
        throw ValidationError("polynomial parse: variable index out of range");
      return IPoly::variable(n_, idx);
    }
    throw ValidationError("polynomial parse: unexpected character '" +
                          std::string(1, c) + "'");
  }

  uint32_t uinteger() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_) throw ValidationError("polynomial parse: number expected");
    return static_cast<uint32_t>(
        std::stoul(std::string(s_.substr(start, pos_ - start))));
  }

  int n_;
  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline IPoly IPoly::parse(int nvars, std::string_view src) {
  return detail::PolyParser(nvars, src).parse();
}

/// Polynomial over a finite field context.
class MPoly {
 public:
  MPoly() : ctx_(nullptr), nvars_(0) {}
  MPoly(const FieldCtx* ctx, int nvars) : ctx_(ctx), nvars_(nvars) {}

  static MPoly from_ipoly(const FieldCtx* ctx, const IPoly& p) {
    MPoly r(ctx, p.nvars());
    for (auto& [e, c] : p.terms()) r.add_term(e, FqElem(ctx, c));
    return r;
  }
  static MPoly parse(const FieldCtx* ctx, int nvars, std::string_view src) {
    return from_ipoly(ctx, IPoly::parse(nvars, src));
  }
  static MPoly constant(const FieldCtx* ctx, int nvars, int64_t c) {
    return from_ipoly(ctx, IPoly::constant(nvars, c));
  }
  static MPoly variable(const FieldCtx* ctx, int nvars, int idx) {
    return from_ipoly(ctx, IPoly::variable(nvars, idx));
  }

  const FieldCtx* ctx() const { return ctx_; }
  int nvars() const { return nvars_; }
  const std::map<ExpVec, FqElem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(a.ctx_, a.nvars_);
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        ExpVec e(a.nvars_);
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend MPoly operator*(const FqElem& s, const MPoly& a) {
    MPoly r(a.ctx_, a.nvars_);
    for (auto& [e, c] : a.terms_) r.add_term(e, s * c);
    return r;
  }

  MPoly derivative(int var) const {
    MPoly r(ctx_, nvars_);
    for (auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      ExpVec d = e;
      d[var] -= 1;
      r.add_term(d, int64_t(e[var]) * c);
    }
    return r;
  }

  /// Evaluate at a point with coordinates in this polynomial's own context.
  FqElem eval(std::span<const FqElem> x) const {
    return eval_mapped(ctx_, x, [](const FqElem& c) { return c; });
  }

  /// Evaluate at a point over an extension; coefficients are pushed through
  /// the fixed embedding.
  FqElem eval_ext(const Embedding& emb, std::span<const FqElem> x) const {
    return eval_mapped(emb.ext(), x,
                       [&](const FqElem& c) { return emb.embed(c); });
  }

  bool is_homogeneous() const {
    int deg = -1;
    for (auto& [e, c] : terms_) {
      int d = 0;
      for (auto v : e) d += v;
      if (deg < 0) deg = d;
      else if (d != deg) return false;
    }
    return true;
  }

  int total_degree() const {
    int deg = 0;
    for (auto& [e, c] : terms_) {
      int d = 0;
      for (auto v : e) d += v;
      deg = std::max(deg, d);
    }
    return deg;
  }

  /// Same polynomial viewed in nvars + extra variables (optionally shifted).
  MPoly extended(int new_nvars, int shift = 0) const {
    MPoly r(ctx_, new_nvars);
    for (auto& [e, c] : terms_) {
      ExpVec ne(new_nvars, 0);
      for (int i = 0; i < nvars_; ++i) ne[i + shift] = e[i];
      r.add_term(ne, c);
    }
    return r;
  }

  /// Canonical text form; usable as a sort/equality key.
  std::string key() const {
    std::ostringstream os;
    for (auto& [e, c] : terms_) {
      for (auto v : e) os << v << ",";
      os << ":" << c.index() << ";";
    }
    return os.str();
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.ctx_ == b.ctx_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(const ExpVec& e, const FqElem& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  template <class MapCoeff>
  FqElem eval_mapped(const FieldCtx* ectx, std::span<const FqElem> x,
                     MapCoeff&& mc) const {
    // precompute powers per variable up to the max exponent
    std::vector<std::vector<FqElem>> pw(nvars_);
    for (int i = 0; i < nvars_; ++i) {
      uint16_t maxe = 0;
      for (auto& [e, c] : terms_) maxe = std::max(maxe, e[i]);
      pw[i].resize(maxe + 1, FqElem(ectx, 1));
      for (uint16_t k = 1; k <= maxe; ++k) pw[i][k] = pw[i][k - 1] * x[i];
    }
    FqElem acc(ectx);
    for (auto& [e, c] : terms_) {
      FqElem t = mc(c);
      for (int i = 0; i < nvars_; ++i)
        if (e[i]) t *= pw[i][e[i]];
      acc += t;
    }
    return acc;
  }

  const FieldCtx* ctx_;
  int nvars_;
  std::map<ExpVec, FqElem> terms_;
};

}  // namespace igz
