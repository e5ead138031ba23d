#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "prefopt/geometry.hpp"

namespace prefopt {

/// Result of compare(x, y), describing y relative to x.
enum class Outcome : int { kBetter = -1, kTie = 0, kWorse = 1 };

constexpr int sign(Outcome o) { return static_cast<int>(o); }

/// compare(y, x) given compare(x, y).
constexpr Outcome flip(Outcome o) { return static_cast<Outcome>(-static_cast<int>(o)); }

/// Pairwise comparison oracle. Every call to compare() increments queries().
class PreferenceOracle {
 public:
  explicit PreferenceOracle(std::size_t dim);
  virtual ~PreferenceOracle() = default;
  PreferenceOracle(const PreferenceOracle&) = delete;
  PreferenceOracle& operator=(const PreferenceOracle&) = delete;

  /// kBetter if y is strictly preferred to x, kWorse if x is, kTie otherwise.
  Outcome compare(const Point& x, const Point& y);

  std::size_t dim() const { return dim_; }
  std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }

 protected:
  virtual Outcome do_compare(const Point& x, const Point& y) = 0;

 private:
  std::size_t dim_;
  std::atomic<std::uint64_t> queries_{0};
};

using ObjectiveFn = std::function<double(const Point&)>;

/// Oracle induced by a scalar function: compare(x, y) = sign(f(y) - f(x)).
class FunctionOracle : public PreferenceOracle {
 public:
  /// tie_tolerance > 0 declares |f(y) - f(x)| <= tie_tolerance a tie.
  FunctionOracle(ObjectiveFn f, std::size_t dim, double tie_tolerance = 0.0);

  /// Evaluates the underlying function without counting a query.
  double evaluate(const Point& x) const;
  const ObjectiveFn& function() const { return f_; }
  double tie_tolerance() const { return tie_tolerance_; }

 protected:
  Outcome do_compare(const Point& x, const Point& y) override;

 private:
  ObjectiveFn f_;
  double tie_tolerance_;
};

/// Oracle for phi(f(.)) with phi strictly increasing; it induces the same preferences.
std::shared_ptr<FunctionOracle> monotone_wrap(const std::shared_ptr<const FunctionOracle>& base,
                                              std::function<double(double)> phi);

struct TaggedOutcome {
  Point x;
  Point y;
  Outcome outcome;
  std::uint64_t index;

  bool operator==(const TaggedOutcome& o) const {
    return index == o.index && outcome == o.outcome && x.size() == o.x.size() &&
           y.size() == o.y.size() && x == o.x && y == o.y;
  }
};

/// Forwards to another oracle and records every comparison in order.
class TranscriptRecorder : public PreferenceOracle {
 public:
  explicit TranscriptRecorder(std::shared_ptr<PreferenceOracle> inner);

  std::vector<TaggedOutcome> transcript() const;
  PreferenceOracle& inner() { return *inner_; }

 protected:
  Outcome do_compare(const Point& x, const Point& y) override;

 private:
  std::shared_ptr<PreferenceOracle> inner_;
  mutable std::mutex mu_;
  std::vector<TaggedOutcome> log_;
};

}  // namespace prefopt
