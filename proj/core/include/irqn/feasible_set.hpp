#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "irqn/active_set_qp.hpp"
#include "irqn/common.hpp"

namespace irqn {

struct WholeSpace {
  Index dim;
};

/// Componentwise bounds; -inf / +inf entries are allowed, so the nonnegative
/// orthant is a Box with upper = +inf.
struct Box {
  Vector lower;
  Vector upper;
};

struct Polyhedron {
  std::shared_ptr<const ProjectionQp> qp;
};

/// The closed convex set C of a variational inequality. Immutable after
/// construction and cheap to copy (polyhedral data is shared).
class FeasibleSet {
 public:
  using Variant = std::variant<WholeSpace, Box, Polyhedron>;

  static FeasibleSet whole_space(Index n);
  static FeasibleSet box(Vector lower, Vector upper);
  static FeasibleSet nonnegative_orthant(Index n);
  /// {x : A x <= b, lower <= x <= upper}. Empty `lower` / `upper` mean
  /// unbounded. Nonemptiness is checked by projecting the origin; an empty
  /// set throws InfeasibleSet.
  static FeasibleSet polyhedron(Matrix A, Vector b, Vector lower = {}, Vector upper = {});

  Index dim() const;
  const Variant& variant() const { return set_; }

  bool is_whole_space() const { return std::holds_alternative<WholeSpace>(set_); }
  const Box* as_box() const { return std::get_if<Box>(&set_); }
  const ProjectionQp* as_polyhedron() const;

  std::string describe() const;

 private:
  explicit FeasibleSet(Variant set) : set_(std::move(set)) {}

  Variant set_;
};

/// Euclidean projection P_C(x).
Vector project(const FeasibleSet& set, const Vector& x);

bool contains(const FeasibleSet& set, const Vector& x, double tol);

/// Projection with a per-owner warm-start cache: consecutive polyhedral
/// projections reuse the previous active set. Holds its own copy of the set.
/// Not thread-safe; each solve owns its own Projector.
class Projector {
 public:
  explicit Projector(FeasibleSet set) : set_(std::move(set)) {}

  Vector operator()(const Vector& x);

  const FeasibleSet& set() const { return set_; }
  long count() const { return count_; }
  /// Certificate of the most recent polyhedral projection, if any.
  const QpCertificate* last_certificate() const { return has_cert_ ? &last_cert_ : nullptr; }

 private:
  FeasibleSet set_;
  std::vector<int> warm_;
  QpCertificate last_cert_;
  bool has_cert_ = false;
  long count_ = 0;
};

}  // namespace irqn
