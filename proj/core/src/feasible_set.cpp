#include "irqn/feasible_set.hpp"

#include <cmath>

#include <fmt/format.h>

namespace irqn {

FeasibleSet FeasibleSet::whole_space(Index n) { return FeasibleSet(WholeSpace{n}); }

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  require_dim(upper, lower.size(), "upper bound");
  for (Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw Error(ErrorCode::InfeasibleSet,
                  fmt::format("box lower[{}]={} exceeds upper {}", i, lower[i], upper[i]));
    }
  }
  return FeasibleSet(Box{std::move(lower), std::move(upper)});
}

FeasibleSet FeasibleSet::nonnegative_orthant(Index n) {
  return box(Vector::Zero(n), Vector::Constant(n, std::numeric_limits<double>::infinity()));
}

FeasibleSet FeasibleSet::polyhedron(Matrix A, Vector b, Vector lower, Vector upper) {
  auto qp = std::make_shared<const ProjectionQp>(std::move(A), std::move(b), std::move(lower),
                                                 std::move(upper));
  // Phase one: the projection of the origin exists iff the set is nonempty.
  const PolyhedralProjection origin = qp->solve(Vector::Zero(qp->dim()));
  if (origin.certificate.primal_residual > 1e-10) {
    throw Error(ErrorCode::InfeasibleSet, "phase-one projection did not reach a feasible point");
  }
  return FeasibleSet(Polyhedron{std::move(qp)});
}

Index FeasibleSet::dim() const {
  return std::visit(
      [](const auto& s) -> Index {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return s.dim;
        } else if constexpr (std::is_same_v<T, Box>) {
          return s.lower.size();
        } else {
          return s.qp->dim();
        }
      },
      set_);
}

const ProjectionQp* FeasibleSet::as_polyhedron() const {
  const auto* p = std::get_if<Polyhedron>(&set_);
  return p ? p->qp.get() : nullptr;
}

std::string FeasibleSet::describe() const {
  if (is_whole_space()) return fmt::format("R^{}", dim());
  if (const Box* box = as_box()) {
    const bool orthant = (box->lower.array() == 0.0).all() && box->upper.array().isInf().all();
    if (orthant) return fmt::format("R^{}_+", dim());
    return fmt::format("box[{}]", dim());
  }
  return fmt::format("polyhedron[{} rows, n={}]", as_polyhedron()->num_rows(), dim());
}

Vector project(const FeasibleSet& set, const Vector& x) {
  require_dim(x, set.dim(), "point");
  if (set.is_whole_space()) return x;
  if (const Box* box = set.as_box()) return x.cwiseMax(box->lower).cwiseMin(box->upper);
  return set.as_polyhedron()->solve(x).point;
}

bool contains(const FeasibleSet& set, const Vector& x, double tol) {
  require_dim(x, set.dim(), "point");
  if (set.is_whole_space()) return true;
  if (const Box* box = set.as_box()) {
    return ((box->lower - x).array() <= tol).all() && ((x - box->upper).array() <= tol).all();
  }
  return set.as_polyhedron()->max_violation(x) <= tol;
}

Vector Projector::operator()(const Vector& x) {
  ++count_;
  const ProjectionQp* qp = set_.as_polyhedron();
  if (qp == nullptr) return project(set_, x);
  PolyhedralProjection result = qp->solve(x, warm_);
  warm_ = result.certificate.active_set;
  last_cert_ = std::move(result.certificate);
  has_cert_ = true;
  return std::move(result.point);
}

}  // namespace irqn
