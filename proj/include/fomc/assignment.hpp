#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fomc/error.hpp"
#include "fomc/structure.hpp"

namespace fomc {

/// Ordered partial map from variables to universe elements. The order is the
/// first-appearance order of the variables in the formula it belongs to.
class Assignment {
 public:
  using Binding = std::pair<std::string, Element>;

  Assignment() = default;
  Assignment(std::initializer_list<Binding> bindings) {
    for (const auto& [v, e] : bindings) bind(v, e);
  }

  /// Pairs `vars[i] -> values[i]`.
  static Assignment zip(const std::vector<std::string>& vars, const std::vector<Element>& values) {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i) a.bind(vars[i], values[i]);
    return a;
  }

  Assignment& bind(const std::string& var, Element value) {
    if (lookup(var)) throw AssignmentError("variable '" + var + "' bound twice");
    bindings_.emplace_back(var, value);
    return *this;
  }

  [[nodiscard]] std::optional<Element> lookup(const std::string& var) const {
    for (const auto& [v, e] : bindings_) {
      if (v == var) return e;
    }
    return std::nullopt;
  }

  [[nodiscard]] Element at(const std::string& var) const {
    auto e = lookup(var);
    if (!e) throw AssignmentError("variable '" + var + "' is not assigned");
    return *e;
  }

  [[nodiscard]] bool covers(const std::vector<std::string>& vars) const {
    return std::all_of(vars.begin(), vars.end(),
                       [&](const std::string& v) { return lookup(v).has_value(); });
  }

  /// Throws AssignmentError naming the first of `vars` left unassigned.
  void require(const std::vector<std::string>& vars) const {
    for (const auto& v : vars) {
      if (!lookup(v)) throw AssignmentError("variable '" + v + "' is not assigned");
    }
  }

  /// Restriction to `vars`, in the order given.
  [[nodiscard]] Assignment restrict(const std::vector<std::string>& vars) const {
    Assignment out;
    for (const auto& v : vars) out.bind(v, at(v));
    return out;
  }

  void check_range(std::size_t universe) const {
    for (const auto& [v, e] : bindings_) {
      if (e >= universe) {
        throw AssignmentError("value " + std::to_string(e) + " of '" + v +
                              "' outside universe");
      }
    }
  }

  [[nodiscard]] const std::vector<Binding>& bindings() const { return bindings_; }
  [[nodiscard]] std::size_t size() const { return bindings_.size(); }
  [[nodiscard]] bool empty() const { return bindings_.empty(); }

  [[nodiscard]] std::vector<Element> values() const {
    std::vector<Element> out;
    for (const auto& b : bindings_) out.push_back(b.second);
    return out;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<Binding> bindings_;
};

/// Odometer over [0,n)^k in lexicographic order; k == 0 yields one empty tuple.
class TupleOdometer {
 public:
  TupleOdometer(std::size_t universe, std::size_t length)
      : n_(universe), current_(length, 0), done_(universe == 0 && length > 0) {}

  [[nodiscard]] bool done() const { return done_; }
  [[nodiscard]] const std::vector<Element>& operator*() const { return current_; }

  TupleOdometer& operator++() {
    for (std::size_t i = current_.size(); i-- > 0;) {
      if (++current_[i] < n_) return *this;
      current_[i] = 0;
    }
    done_ = true;
    return *this;
  }

 private:
  std::size_t n_;
  std::vector<Element> current_;
  bool done_;
};

}  // namespace fomc
