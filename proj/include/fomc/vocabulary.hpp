#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fomc/error.hpp"

namespace fomc {

enum class SymbolKind { Relation, Constant, Function };

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct SymbolRef {
  SymbolKind kind;
  std::size_t index;
};

/// A finite set of relation, constant and function symbols with pairwise
/// distinct names. Relations and functions have arity >= 1; nullary
/// functions are expressed as constants.
class Vocabulary {
 public:
  Vocabulary() = default;

  Vocabulary& add_relation(const std::string& name, std::size_t arity) {
    if (arity == 0) {
      throw VocabularyError("relation '" + name + "' must have arity >= 1");
    }
    claim(name, SymbolKind::Relation, relations_.size());
    relations_.push_back({name, arity});
    return *this;
  }

  Vocabulary& add_constant(const std::string& name) {
    claim(name, SymbolKind::Constant, constants_.size());
    constants_.push_back(name);
    return *this;
  }

  Vocabulary& add_function(const std::string& name, std::size_t arity) {
    if (arity == 0) {
      throw VocabularyError("function '" + name +
                            "' must have arity >= 1 (declare it as a constant)");
    }
    claim(name, SymbolKind::Function, functions_.size());
    functions_.push_back({name, arity});
    return *this;
  }

  [[nodiscard]] const std::vector<Symbol>& relations() const { return relations_; }
  [[nodiscard]] const std::vector<std::string>& constants() const { return constants_; }
  [[nodiscard]] const std::vector<Symbol>& functions() const { return functions_; }

  /// |tau|: the number of symbols.
  [[nodiscard]] std::size_t symbol_count() const {
    return relations_.size() + constants_.size() + functions_.size();
  }

  [[nodiscard]] std::optional<SymbolRef> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] bool contains(const std::string& name) const {
    return index_.count(name) != 0;
  }

  [[nodiscard]] bool has_functions() const { return !functions_.empty(); }

  [[nodiscard]] std::size_t relation_index(const std::string& name) const {
    return expect(name, SymbolKind::Relation, "relation");
  }
  [[nodiscard]] std::size_t constant_index(const std::string& name) const {
    return expect(name, SymbolKind::Constant, "constant");
  }
  [[nodiscard]] std::size_t function_index(const std::string& name) const {
    return expect(name, SymbolKind::Function, "function");
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.relations_ == b.relations_ && a.constants_ == b.constants_ &&
           a.functions_ == b.functions_;
  }

 private:
  void claim(const std::string& name, SymbolKind kind, std::size_t index) {
    if (name.empty()) throw VocabularyError("empty symbol name");
    if (!index_.emplace(name, SymbolRef{kind, index}).second) {
      throw VocabularyError("duplicate symbol '" + name + "'");
    }
  }

  std::size_t expect(const std::string& name, SymbolKind kind,
                     const char* what) const {
    auto ref = find(name);
    if (!ref || ref->kind != kind) {
      throw VocabularyError(std::string("unknown ") + what + " '" + name + "'");
    }
    return ref->index;
  }

  std::vector<Symbol> relations_;
  std::vector<std::string> constants_;
  std::vector<Symbol> functions_;
  std::unordered_map<std::string, SymbolRef> index_;
};

/// `base`, or `base` followed by underscores, whichever is first unused.
inline std::string fresh_symbol(const Vocabulary& v, std::string base) {
  while (v.contains(base)) base += '_';
  return base;
}

}  // namespace fomc
