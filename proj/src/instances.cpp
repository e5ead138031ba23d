#include "prefopt/instances.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "prefopt/errors.hpp"

namespace prefopt {

namespace {

// Direction of a nonzero vector, rescaled first so tiny gradients near an optimum still normalize.
UnitVec direction_of(const Eigen::VectorXd& v, const char* what) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw UndefinedNormal(what);
  return UnitVec(v / scale);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_point(const Point& x, std::size_t dim, const char* what) {
  if (x.size() != static_cast<Eigen::Index>(dim)) {
    throw InvalidDimension(std::string(what) + ": expected dimension " + std::to_string(dim));
  }
}

}  // namespace

Instance make_linear(const UnitVec& c, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidInstance("linear instance radius must be positive and finite");
  }
  const std::size_t d = c.dim();
  const Eigen::VectorXd cv = c.vec();
  Instance inst;
  inst.id = "linear";
  inst.dim = d;
  inst.oracle = std::make_shared<FunctionOracle>([cv](const Point& x) { return cv.dot(x); }, d);

  auto& t = inst.truth;
  t.normal_at = [c, d](const Point& x) {
    check_point(x, d, "normal_at");
    return c;
  };
  // The optimum over B(0,R) is -Rc, and the indifference set of x is the
  // hyperplane <c,y> = <c,x>; their distance is <c,x> + R.
  t.delta_ls = [cv, radius](const Point& x) { return std::max(0.0, cv.dot(x) + radius); };
  t.dist_opt = [cv, radius](const Point& x) { return (x + radius * cv).norm(); };
  t.nearest_optimum = [cv, radius](const Point&) -> Point { return -radius * cv; };
  t.regularity_lb = [](const Point&) { return kInf; };
  return inst;
}

namespace {

ObjectiveFn sphere_function(SphereVariant v) {
  switch (v) {
    case SphereVariant::kNorm:
      return [](const Point& x) { return x.norm(); };
    case SphereVariant::kLogNorm:
      return [](const Point& x) { return std::log1p(x.norm()); };
    case SphereVariant::kPiecewise:
      return [](const Point& x) {
        const double r = x.norm();
        return r <= 1.0 ? std::log1p(r) : r;
      };
  }
  throw InvalidInstance("unknown sphere variant");
}

InstanceTruth sphere_truth(std::size_t d) {
  InstanceTruth t;
  t.normal_at = [d](const Point& x) {
    check_point(x, d, "normal_at");
    return direction_of(x, "sphere instance: normal undefined at the origin");
  };
  t.delta_ls = [](const Point& x) { return x.norm(); };
  t.dist_opt = [](const Point& x) { return x.norm(); };
  t.nearest_optimum = [](const Point& x) -> Point { return Point::Zero(x.size()); };
  t.regularity_lb = [](const Point& x) { return x.norm(); };
  t.growth = GrowthParams{1.0, kInf};
  return t;
}

}  // namespace

Instance make_sphere(std::size_t dim, SphereVariant variant) {
  if (dim == 0) throw InvalidDimension("sphere instance: dimension must be positive");
  Instance inst;
  inst.id = "sphere";
  inst.dim = dim;
  inst.oracle = std::make_shared<FunctionOracle>(sphere_function(variant), dim);
  inst.truth = sphere_truth(dim);
  return inst;
}

SphereTriple make_sphere_triple(std::size_t dim) {
  if (dim == 0) throw InvalidDimension("sphere instance: dimension must be positive");
  SphereTriple s;
  s.oracles = {std::make_shared<FunctionOracle>(sphere_function(SphereVariant::kNorm), dim),
               std::make_shared<FunctionOracle>(sphere_function(SphereVariant::kLogNorm), dim),
               std::make_shared<FunctionOracle>(sphere_function(SphereVariant::kPiecewise), dim)};
  s.truth = sphere_truth(dim);
  return s;
}

Instance make_quadratic(const Eigen::MatrixXd& q, const Point& xhat) {
  const auto n = q.rows();
  if (n == 0 || q.cols() != n) throw InvalidDimension("quadratic instance: Q must be square");
  check_point(xhat, static_cast<std::size_t>(n), "quadratic instance xhat");
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > tol::kConstruction * scale) {
    throw InvalidInstance("quadratic instance: Q is not symmetric");
  }
  const Eigen::MatrixXd qs = 0.5 * (q + q.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(qs);
  const Eigen::VectorXd lam = eig.eigenvalues();
  const double lmax = lam.maxCoeff();
  if (!(lmax > 0.0)) throw InvalidInstance("quadratic instance: Q has no positive eigenvalue");
  const double cutoff = tol::kConstruction * lmax;
  if (lam.minCoeff() < -cutoff) throw InvalidInstance("quadratic instance: Q has a negative eigenvalue");

  double lmin_pos = lmax;
  Eigen::MatrixXd range_basis(n, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lam[i] > cutoff) {
      lmin_pos = std::min(lmin_pos, lam[i]);
      range_basis.conservativeResize(Eigen::NoChange, range_basis.cols() + 1);
      range_basis.col(range_basis.cols() - 1) = eig.eigenvectors().col(i);
    }
  }
  const Eigen::MatrixXd range_proj = range_basis * range_basis.transpose();
  const auto d = static_cast<std::size_t>(n);

  auto f = [qs, xhat](const Point& x) {
    const Eigen::VectorXd r = x - xhat;
    return 0.5 * r.dot(qs * r);
  };

  Instance inst;
  inst.id = "quadratic";
  inst.dim = d;
  inst.oracle = std::make_shared<FunctionOracle>(f, d);
  auto& t = inst.truth;
  t.normal_at = [qs, xhat, d](const Point& x) {
    check_point(x, d, "normal_at");
    const Eigen::VectorXd g = qs * (x - xhat);
    return direction_of(g, "quadratic instance: x is a minimizer");
  };
  t.delta_ls = [f, lmax](const Point& x) { return std::sqrt(std::max(0.0, 2.0 * f(x) / lmax)); };
  t.dist_opt = [range_proj, xhat](const Point& x) { return (range_proj * (x - xhat)).norm(); };
  t.nearest_optimum = [range_proj, xhat](const Point& x) -> Point {
    return x - range_proj * (x - xhat);
  };
  t.regularity_lb = [qs, xhat, lmax](const Point& x) { return (qs * (x - xhat)).norm() / lmax; };
  t.growth = GrowthParams{std::sqrt(lmin_pos / lmax), kInf};
  return inst;
}

Instance make_dist_to_box(const Point& lo, const Point& hi) {
  if (lo.size() == 0 || lo.size() != hi.size()) throw InvalidDimension("box bounds mismatch");
  if ((hi - lo).minCoeff() < 0.0) throw InvalidInstance("box requires lo <= hi");
  const auto d = static_cast<std::size_t>(lo.size());
  auto project = [lo, hi](const Point& x) -> Point { return x.cwiseMax(lo).cwiseMin(hi); };

  Instance inst;
  inst.id = "dist_box";
  inst.dim = d;
  inst.oracle = std::make_shared<FunctionOracle>(
      [project](const Point& x) { return (x - project(x)).norm(); }, d);
  auto& t = inst.truth;
  t.normal_at = [project, d](const Point& x) {
    check_point(x, d, "normal_at");
    const Eigen::VectorXd r = x - project(x);
    return direction_of(r, "dist_box instance: x lies in the box");
  };
  t.delta_ls = [project](const Point& x) { return (x - project(x)).norm(); };
  t.dist_opt = t.delta_ls;
  t.nearest_optimum = project;
  // The sublevel set is the box inflated by t = dist(x, box), which contains a
  // ball of radius t tangent at x.
  t.regularity_lb = t.delta_ls;
  t.growth = GrowthParams{1.0, kInf};
  return inst;
}

namespace {

double mckinnon_value(const Point& p) {
  const double x = p[0];
  const double y = p[1];
  const double a = x <= 0.0 ? 360.0 : 6.0;
  return a * x * x + y + y * y;
}

Eigen::Vector2d mckinnon_gradient(const Point& p) {
  const double x = p[0];
  const double y = p[1];
  return {x <= 0.0 ? 720.0 * x : 12.0 * x, 1.0 + 2.0 * y};
}

const Eigen::Vector2d kMcKinnonMin(0.0, -0.5);
constexpr double kMcKinnonFStar = -0.25;

// Radius along direction theta from the minimizer where the function reaches c.
double mckinnon_crossing(double theta, double c) {
  const Eigen::Vector2d dir(std::cos(theta), std::sin(theta));
  auto g = [&](double r) { return mckinnon_value(kMcKinnonMin + r * dir); };
  double lo = 0.0;
  double hi = 1.0;
  while (g(hi) < c) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < c ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double mckinnon_delta_ls_polar(const Point& p) {
  check_point(p, 2, "mckinnon_delta_ls_polar");
  const double c = mckinnon_value(p);
  if (c <= kMcKinnonFStar) return 0.0;

  constexpr int kDirections = 720;
  const double step = 2.0 * M_PI / kDirections;
  int best_j = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kDirections; ++j) {
    const double r = mckinnon_crossing(j * step, c);
    if (r < best) {
      best = r;
      best_j = j;
    }
  }

  // Golden-section refinement on the bracket around the best direction; each
  // round restarts on a bracket a quarter of the previous width.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double center = best_j * step;
  double half_width = step;
  for (int round = 0; round < 3; ++round) {
    double a = center - half_width;
    double b = center + half_width;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = mckinnon_crossing(x1, c);
    double f2 = mckinnon_crossing(x2, c);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = mckinnon_crossing(x1, c);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = mckinnon_crossing(x2, c);
      }
    }
    center = 0.5 * (a + b);
    best = std::min({best, f1, f2, mckinnon_crossing(center, c)});
    half_width /= 4.0;
  }
  return best;
}

Instance make_mckinnon() {
  Instance inst;
  inst.id = "mckinnon";
  inst.dim = 2;
  inst.oracle = std::make_shared<FunctionOracle>(mckinnon_value, 2);
  auto& t = inst.truth;
  t.normal_at = [](const Point& x) {
    check_point(x, 2, "normal_at");
    const Eigen::Vector2d g = mckinnon_gradient(x);
    return direction_of(g, "mckinnon instance: x is the minimizer");
  };
  t.delta_ls = mckinnon_delta_ls_polar;
  t.dist_opt = [](const Point& x) { return (x - kMcKinnonMin).norm(); };
  t.nearest_optimum = [](const Point&) -> Point { return kMcKinnonMin; };
  t.regularity_lb = [](const Point& x) { return mckinnon_gradient(x).norm() / 720.0; };
  t.growth = GrowthParams{1.0 / 360.0, kInf};
  return inst;
}

}  // namespace prefopt
