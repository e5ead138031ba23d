#include "prefopt/oracle.hpp"

#include <cmath>
#include <string>

#include "prefopt/errors.hpp"

namespace prefopt {

PreferenceOracle::PreferenceOracle(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidDimension("oracle dimension must be positive");
}

Outcome PreferenceOracle::compare(const Point& x, const Point& y) {
  const auto d = static_cast<Eigen::Index>(dim_);
  if (x.size() != d || y.size() != d) {
    throw InvalidDimension("compare: expected points of dimension " + std::to_string(dim_));
  }
  queries_.fetch_add(1, std::memory_order_relaxed);
  return do_compare(x, y);
}

FunctionOracle::FunctionOracle(ObjectiveFn f, std::size_t dim, double tie_tolerance)
    : PreferenceOracle(dim), f_(std::move(f)), tie_tolerance_(tie_tolerance) {
  if (!f_) throw InvalidOracle("objective function is empty");
  if (!(tie_tolerance >= 0.0)) throw InvalidParameter("tie tolerance must be nonnegative");
}

double FunctionOracle::evaluate(const Point& x) const {
  const double v = f_(x);
  if (std::isnan(v)) throw InvalidOracle("objective returned NaN");
  return v;
}

Outcome FunctionOracle::do_compare(const Point& x, const Point& y) {
  const double fx = evaluate(x);
  const double fy = evaluate(y);
  if (fy < fx - tie_tolerance_) return Outcome::kBetter;
  if (fy > fx + tie_tolerance_) return Outcome::kWorse;
  return Outcome::kTie;
}

std::shared_ptr<FunctionOracle> monotone_wrap(const std::shared_ptr<const FunctionOracle>& base,
                                              std::function<double(double)> phi) {
  if (!base || !phi) throw InvalidOracle("monotone_wrap: null argument");
  auto f = [base, phi = std::move(phi)](const Point& x) { return phi(base->evaluate(x)); };
  return std::make_shared<FunctionOracle>(std::move(f), base->dim(), 0.0);
}

TranscriptRecorder::TranscriptRecorder(std::shared_ptr<PreferenceOracle> inner)
    : PreferenceOracle(inner ? inner->dim() : 0), inner_(std::move(inner)) {}

Outcome TranscriptRecorder::do_compare(const Point& x, const Point& y) {
  const Outcome o = inner_->compare(x, y);
  std::lock_guard<std::mutex> lock(mu_);
  log_.push_back({x, y, o, static_cast<std::uint64_t>(log_.size())});
  return o;
}

std::vector<TaggedOutcome> TranscriptRecorder::transcript() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

}  // namespace prefopt
