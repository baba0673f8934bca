#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fomc/error.hpp"
#include "fomc/vocabulary.hpp"

namespace fomc {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

/// n^k, saturating at SIZE_MAX.
inline std::size_t checked_power(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n != 0 && r > SIZE_MAX / n) return SIZE_MAX;
    r *= n;
  }
  return r;
}

inline std::size_t ceil_log2(std::size_t n) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return bits;
}

/// Interpretation of one relation symbol: a sorted, duplicate-free tuple set.
/// Small relations also keep a dense membership bitmap.
class Relation {
 public:
  static constexpr std::size_t kDenseLimit = std::size_t{1} << 22;

  Relation(std::size_t arity, std::size_t universe, std::vector<Tuple> tuples)
      : arity_(arity), universe_(universe), tuples_(std::move(tuples)) {
    for (const auto& t : tuples_) {
      if (t.size() != arity_) {
        throw StructureError("tuple of length " + std::to_string(t.size()) +
                             " in relation of arity " + std::to_string(arity_));
      }
      for (Element e : t) {
        if (e >= universe_) {
          throw StructureError("element " + std::to_string(e) +
                               " outside universe of size " +
                               std::to_string(universe_));
        }
      }
    }
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
    std::size_t cells = checked_power(universe_, arity_);
    if (cells <= kDenseLimit) {
      dense_.assign(cells, false);
      for (const auto& t : tuples_) dense_[encode(t)] = true;
    }
  }

  [[nodiscard]] std::size_t arity() const { return arity_; }
  [[nodiscard]] const std::vector<Tuple>& tuples() const { return tuples_; }
  [[nodiscard]] std::size_t size() const { return tuples_.size(); }

  [[nodiscard]] bool contains(std::span<const Element> t) const {
    if (!dense_.empty()) return dense_[encode(t)];
    return std::binary_search(tuples_.begin(), tuples_.end(), t,
                              [](const auto& a, const auto& b) {
                                return std::lexicographical_compare(
                                    a.begin(), a.end(), b.begin(), b.end());
                              });
  }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.arity_ == b.arity_ && a.tuples_ == b.tuples_;
  }

 private:
  [[nodiscard]] std::size_t encode(std::span<const Element> t) const {
    std::size_t code = 0;
    for (Element e : t) code = code * universe_ + e;
    return code;
  }

  std::size_t arity_;
  std::size_t universe_;
  std::vector<Tuple> tuples_;
  std::vector<bool> dense_;
};

/// Total function table over [0,n)^arity, rows in lexicographic argument order.
class FunctionTable {
 public:
  FunctionTable(std::size_t arity, std::size_t universe, std::vector<Element> values)
      : arity_(arity), universe_(universe), values_(std::move(values)) {
    if (values_.size() != checked_power(universe_, arity_)) {
      throw StructureError("function table is not total");
    }
    for (Element v : values_) {
      if (v >= universe_) {
        throw StructureError("function value " + std::to_string(v) +
                             " outside universe");
      }
    }
  }

  [[nodiscard]] std::size_t arity() const { return arity_; }
  [[nodiscard]] const std::vector<Element>& values() const { return values_; }

  [[nodiscard]] Element operator()(std::span<const Element> args) const {
    std::size_t code = 0;
    for (Element e : args) code = code * universe_ + e;
    return values_[code];
  }

  friend bool operator==(const FunctionTable& a, const FunctionTable& b) {
    return a.arity_ == b.arity_ && a.values_ == b.values_;
  }

 private:
  std::size_t arity_;
  std::size_t universe_;
  std::vector<Element> values_;
};

/// A finite structure over universe {0..n-1}. Interpretations are shared
/// between copies, so expansions by constants are cheap.
class Structure {
 public:
  Structure(Vocabulary vocabulary, std::size_t universe_size)
      : vocab_(std::move(vocabulary)), n_(universe_size) {
    if (n_ == 0) throw StructureError("universe must be nonempty");
    for (const auto& r : vocab_.relations()) {
      relations_.push_back(std::make_shared<const Relation>(r.arity, n_, std::vector<Tuple>{}));
    }
    constants_.assign(vocab_.constants().size(), 0);
    for (const auto& f : vocab_.functions()) {
      functions_.push_back(std::make_shared<const FunctionTable>(
          f.arity, n_, std::vector<Element>(checked_power(n_, f.arity), 0)));
    }
  }

  [[nodiscard]] const Vocabulary& vocabulary() const { return vocab_; }
  [[nodiscard]] std::size_t universe_size() const { return n_; }

  Structure& set_relation(const std::string& name, std::vector<Tuple> tuples) {
    std::size_t i = vocab_.relation_index(name);
    relations_[i] = std::make_shared<const Relation>(vocab_.relations()[i].arity,
                                                     n_, std::move(tuples));
    return *this;
  }

  Structure& set_constant(const std::string& name, Element value) {
    std::size_t i = vocab_.constant_index(name);
    check_element(value);
    constants_[i] = value;
    return *this;
  }

  Structure& set_function(const std::string& name, std::vector<Element> values) {
    std::size_t i = vocab_.function_index(name);
    functions_[i] = std::make_shared<const FunctionTable>(vocab_.functions()[i].arity,
                                                          n_, std::move(values));
    return *this;
  }

  [[nodiscard]] const Relation& relation(std::size_t i) const { return *relations_[i]; }
  [[nodiscard]] const Relation& relation(const std::string& name) const {
    return *relations_[vocab_.relation_index(name)];
  }
  [[nodiscard]] Element constant(std::size_t i) const { return constants_[i]; }
  [[nodiscard]] Element constant(const std::string& name) const {
    return constants_[vocab_.constant_index(name)];
  }
  [[nodiscard]] const FunctionTable& function(std::size_t i) const { return *functions_[i]; }
  [[nodiscard]] const FunctionTable& function(const std::string& name) const {
    return *functions_[vocab_.function_index(name)];
  }

  /// Expansion by fresh constants; the receiver is unchanged.
  [[nodiscard]] Structure with_constants(
      std::span<const std::pair<std::string, Element>> extra) const {
    Structure out = *this;
    for (const auto& [name, value] : extra) {
      check_element(value);
      out.vocab_.add_constant(name);
      out.constants_.push_back(value);
    }
    return out;
  }

  /// Expansion by fresh relation symbols.
  [[nodiscard]] Structure with_relation(const std::string& name, std::size_t arity,
                                        std::vector<Tuple> tuples) const {
    Structure out = *this;
    out.vocab_.add_relation(name, arity);
    out.relations_.push_back(std::make_shared<const Relation>(arity, n_, std::move(tuples)));
    return out;
  }

  friend bool operator==(const Structure& a, const Structure& b) {
    if (!(a.vocab_ == b.vocab_) || a.n_ != b.n_ || a.constants_ != b.constants_) {
      return false;
    }
    for (std::size_t i = 0; i < a.relations_.size(); ++i) {
      if (!(*a.relations_[i] == *b.relations_[i])) return false;
    }
    for (std::size_t i = 0; i < a.functions_.size(); ++i) {
      if (!(*a.functions_[i] == *b.functions_[i])) return false;
    }
    return true;
  }

 private:
  void check_element(Element e) const {
    if (e >= n_) {
      throw StructureError("element " + std::to_string(e) + " outside universe of size " +
                           std::to_string(n_));
    }
  }

  Vocabulary vocab_;
  std::size_t n_;
  std::vector<std::shared_ptr<const Relation>> relations_;
  std::vector<Element> constants_;
  std::vector<std::shared_ptr<const FunctionTable>> functions_;
};

/// |A| = |tau| + |A| + sum_R |R^A| * ar(R) + sum_f |A|^ar(f), constants
/// counting as nullary functions.
inline std::size_t structure_size(const Structure& a) {
  const auto& v = a.vocabulary();
  std::size_t n = a.universe_size();
  std::size_t size = v.symbol_count() + n;
  for (std::size_t i = 0; i < v.relations().size(); ++i) {
    size += a.relation(i).size() * v.relations()[i].arity;
  }
  size += v.constants().size();
  for (const auto& f : v.functions()) size += checked_power(n, f.arity);
  return size;
}

}  // namespace fomc
