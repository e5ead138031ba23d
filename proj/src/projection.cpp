#include <cmath>
#include <limits>
#include <sstream>

#include "prefopt/errors.hpp"
#include "prefopt/optimizer.hpp"

namespace prefopt {

FeasibleSet FeasibleSet::ball(Point center, double radius) {
  if (center.size() == 0) throw InvalidDimension("ball center must be non-empty");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidParameter("ball radius must be positive");
  return FeasibleSet(Kind::kBall, std::move(center), Point(), radius);
}

FeasibleSet FeasibleSet::box(Point lo, Point hi) {
  if (lo.size() == 0 || lo.size() != hi.size()) throw InvalidDimension("box bounds mismatch");
  if ((hi - lo).minCoeff() < 0.0) throw InvalidParameter("box requires lo <= hi");
  return FeasibleSet(Kind::kBox, std::move(lo), std::move(hi), 0.0);
}

FeasibleSet FeasibleSet::whole(std::size_t dim) {
  if (dim == 0) throw InvalidDimension("dimension must be positive");
  return FeasibleSet(Kind::kWhole, Point::Zero(static_cast<Eigen::Index>(dim)), Point(), 0.0);
}

Point FeasibleSet::project(const Point& x) const {
  if (x.size() != a_.size()) throw InvalidDimension("project: dimension mismatch");
  switch (kind_) {
    case Kind::kBall: {
      const Eigen::VectorXd r = x - a_;
      const double n = r.norm();
      if (n <= radius_) return x;
      return a_ + (radius_ / n) * r;
    }
    case Kind::kBox:
      return x.cwiseMax(a_).cwiseMin(b_);
    case Kind::kWhole:
      return x;
  }
  return x;
}

bool FeasibleSet::contains(const Point& x, double tol) const {
  if (x.size() != a_.size()) throw InvalidDimension("contains: dimension mismatch");
  switch (kind_) {
    case Kind::kBall:
      return (x - a_).norm() <= radius_ + tol;
    case Kind::kBox:
      return (x - project(x)).norm() <= tol;
    case Kind::kWhole:
      return true;
  }
  return false;
}

std::optional<double> FeasibleSet::diameter() const {
  switch (kind_) {
    case Kind::kBall:
      return 2.0 * radius_;
    case Kind::kBox:
      return (b_ - a_).norm();
    case Kind::kWhole:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string FeasibleSet::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kBall:
      os << "ball(radius=" << radius_ << ")";
      break;
    case Kind::kBox:
      os << "box";
      break;
    case Kind::kWhole:
      os << "R^" << a_.size();
      break;
  }
  return os.str();
}

Cut optimality_cut(const UnitVec& n_x, const Point& x) {
  if (n_x.dim() != static_cast<std::size_t>(x.size())) throw InvalidDimension("cut: dimension mismatch");
  return Cut{n_x, x, CutKind::kOptimality};
}

Cut feasibility_cut(const FeasibleSet& set, const Point& x) {
  const Point xp = set.project(x);
  const Eigen::VectorXd r = x - xp;
  if (r.norm() < tol::kConstruction) throw InvalidCall("feasibility_cut: x is feasible");
  return Cut{UnitVec(r), xp, CutKind::kFeasibility};
}

}  // namespace prefopt
