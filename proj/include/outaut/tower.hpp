#pragma once

// Field towers: a base (Q or Q(i)) followed by an ordered list of
// indeterminates. The last variable is the outermost valuation.

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "outaut/coeff.hpp"
#include "outaut/errors.hpp"

namespace outaut {

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

class FieldTower {
 public:
  FieldTower(Base base, std::vector<std::string> vars, std::vector<std::size_t> blocks = {})
      : base_(base), vars_(std::move(vars)), blocks_(std::move(blocks)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].empty()) throw PreconditionError("empty variable name");
      if (is_reserved(vars_[i])) throw PreconditionError("reserved variable name '" + vars_[i] + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (vars_[j] == vars_[i]) throw PreconditionError("duplicate variable '" + vars_[i] + "'");
    }
    std::size_t total = 0;
    for (auto b : blocks_) total += b;
    if (blocks_.empty() || total != vars_.size()) {
      blocks_.clear();
      if (!vars_.empty()) blocks_.push_back(vars_.size());
    }
  }

  static TowerPtr make(Base base, std::vector<std::string> vars = {}) {
    return std::make_shared<const FieldTower>(base, std::move(vars));
  }

  // Syntax: Q or Q(i), followed by bracketed variable blocks, e.g. Q(i)[a1,a2][r,s,t].
  static TowerPtr parse(const std::string& text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    Base base;
    std::size_t pos;
    if (s.rfind("Q(i)", 0) == 0) {
      base = Base::GaussianRationals;
      pos = 4;
    } else if (s.rfind("Q", 0) == 0) {
      base = Base::Rationals;
      pos = 1;
    } else {
      throw ParseError("tower must start with Q or Q(i)", 0);
    }
    std::vector<std::string> vars;
    std::vector<std::size_t> blocks;
    while (pos < s.size()) {
      if (s[pos] != '[') throw ParseError("expected '['", pos);
      std::size_t close = s.find(']', pos);
      if (close == std::string::npos) throw ParseError("unterminated variable block", pos);
      std::string inner = s.substr(pos + 1, close - pos - 1);
      std::size_t count = 0, start = 0;
      while (start <= inner.size()) {
        std::size_t comma = inner.find(',', start);
        if (comma == std::string::npos) comma = inner.size();
        std::string name = inner.substr(start, comma - start);
        if (!valid_name(name)) throw ParseError("invalid variable name '" + name + "'", pos + 1 + start);
        vars.push_back(name);
        ++count;
        start = comma + 1;
      }
      blocks.push_back(count);
      pos = close + 1;
    }
    try {
      return std::make_shared<const FieldTower>(base, std::move(vars), std::move(blocks));
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), 0);
    }
  }

  Base base() const { return base_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }

  int index_of(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
  }
  std::size_t require_index(const std::string& name) const {
    int i = index_of(name);
    if (i < 0) throw PreconditionError("unknown variable '" + name + "' in tower " + str());
    return static_cast<std::size_t>(i);
  }

  // The tower with one variable removed (the residue tower of its valuation).
  TowerPtr without(std::size_t idx) const {
    std::vector<std::string> v = vars_;
    v.erase(v.begin() + static_cast<long>(idx));
    std::vector<std::size_t> b = blocks_;
    std::size_t acc = 0;
    for (auto& x : b) {
      if (idx < acc + x) {
        --x;
        break;
      }
      acc += x;
    }
    b.erase(std::remove(b.begin(), b.end(), std::size_t{0}), b.end());
    return std::make_shared<const FieldTower>(base_, std::move(v), std::move(b));
  }

  // The tower keeping only the first k variables.
  TowerPtr prefix(std::size_t k) const {
    if (k >= vars_.size()) return std::make_shared<const FieldTower>(*this);
    TowerPtr t = without(vars_.size() - 1);
    while (t->nvars() > k) t = t->without(t->nvars() - 1);
    return t;
  }

  // The tower with extra variables appended as a new outermost block.
  TowerPtr extended(const std::vector<std::string>& extra) const {
    std::vector<std::string> v = vars_;
    v.insert(v.end(), extra.begin(), extra.end());
    std::vector<std::size_t> b = blocks_;
    if (!extra.empty()) b.push_back(extra.size());
    return std::make_shared<const FieldTower>(base_, std::move(v), std::move(b));
  }

  TowerPtr base_tower() const { return make(base_); }

  std::string str() const {
    std::string s = base_ == Base::Rationals ? "Q" : "Q(i)";
    std::size_t k = 0;
    for (auto b : blocks_) {
      s += "[";
      for (std::size_t j = 0; j < b; ++j) {
        if (j) s += ",";
        s += vars_[k++];
      }
      s += "]";
    }
    return s;
  }

  friend bool operator==(const FieldTower& a, const FieldTower& b) {
    return a.base_ == b.base_ && a.vars_ == b.vars_;
  }

  static bool is_reserved(const std::string& n) { return n == "i" || n == "j" || n == "k" || n == "I"; }

  static bool valid_name(const std::string& n) {
    if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) return false;
    for (char c : n)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return !is_reserved(n);
  }

 private:
  Base base_;
  std::vector<std::string> vars_;
  std::vector<std::size_t> blocks_;
};

inline bool same_tower(const TowerPtr& a, const TowerPtr& b) { return a == b || *a == *b; }

}  // namespace outaut
