#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fomc {

enum class CostModel { Brute, Dnc };

/// Accounted-space meter. Bits and depth are charged explicitly by the
/// engines; they model the paper's stack contents, not process memory.
class SpaceMeter {
 public:
  explicit SpaceMeter(CostModel model = CostModel::Brute) : model_(model) {}

  void push(std::size_t bits, std::size_t depth = 1) {
    bits_ += bits;
    depth_ += depth;
    peak_bits_ = std::max(peak_bits_, bits_);
    peak_depth_ = std::max(peak_depth_, depth_);
  }

  void pop(std::size_t bits, std::size_t depth = 1) {
    bits_ -= bits;
    depth_ -= depth;
  }

  /// Scoped charge.
  class Frame {
   public:
    Frame(SpaceMeter& m, std::size_t bits, std::size_t depth = 1)
        : m_(m), bits_(bits), depth_(depth) {
      m_.push(bits_, depth_);
    }
    ~Frame() { m_.pop(bits_, depth_); }
    Frame(const Frame&) = delete;
    Frame& operator=(const Frame&) = delete;

   private:
    SpaceMeter& m_;
    std::size_t bits_;
    std::size_t depth_;
  };

  [[nodiscard]] CostModel model() const { return model_; }
  [[nodiscard]] std::size_t current_bits() const { return bits_; }
  [[nodiscard]] std::size_t current_depth() const { return depth_; }
  [[nodiscard]] std::size_t peak_bits() const { return peak_bits_; }
  [[nodiscard]] std::size_t peak_depth() const { return peak_depth_; }

 private:
  CostModel model_;
  std::size_t bits_ = 0;
  std::size_t depth_ = 0;
  std::size_t peak_bits_ = 0;
  std::size_t peak_depth_ = 0;
};

struct Counters {
  std::uint64_t recursive_calls = 0;
  std::uint64_t assignments_enumerated = 0;

  Counters& operator+=(const Counters& o) {
    recursive_calls += o.recursive_calls;
    assignments_enumerated += o.assignments_enumerated;
    return *this;
  }
};

/// Parameters and peaks of one divide-and-conquer run, kept so the per-run
/// space bounds can be checked after a Sigma_t evaluation.
struct DncRun {
  std::size_t norm = 0;
  std::size_t width = 0;
  std::size_t universe = 0;
  std::size_t peak_depth = 0;
  std::size_t peak_bits = 0;
};

struct EvalReport {
  bool answer = false;
  std::string engine;
  std::size_t peak_bits = 0;
  std::size_t peak_depth = 0;
  Counters counters;
  double wall_ms = 0;
  std::vector<DncRun> runs;
};

}  // namespace fomc
