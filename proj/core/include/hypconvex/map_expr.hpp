#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "hypconvex/types.hpp"

namespace hypconvex {

// Raised when an expression is evaluated outside its domain (division by
// zero, log of zero, overflow to a non-finite value).
class EvaluationError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Immutable expression tree over complex constants and coordinate variables.
class MapExpr {
 public:
  enum class Op { constant, variable, add, sub, mul, div, neg, exp, log, pow };

  static MapExpr constant(Cplx value);
  static MapExpr variable(std::size_t index);
  static MapExpr unary(Op op, MapExpr arg);
  static MapExpr binary(Op op, MapExpr lhs, MapExpr rhs);
  static MapExpr power(MapExpr base, int exponent);

  Op op() const { return node_->op; }
  Cplx value() const { return node_->value; }
  std::size_t index() const { return node_->index; }
  int exponent() const { return node_->exponent; }
  const std::vector<MapExpr>& args() const { return node_->args; }

  Cplx evaluate(const CVector& z) const;

  // Largest variable index referenced plus one (0 if none).
  std::size_t arity() const;

  bool references_at_least(std::size_t index) const { return arity() > index; }

 private:
  struct Node {
    Op op;
    Cplx value{};
    std::size_t index = 0;
    int exponent = 0;
    std::vector<MapExpr> args;
  };
  explicit MapExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

const char* to_string(MapExpr::Op op);

MapExpr operator+(MapExpr a, MapExpr b);
MapExpr operator-(MapExpr a, MapExpr b);
MapExpr operator*(MapExpr a, MapExpr b);
MapExpr operator/(MapExpr a, MapExpr b);
MapExpr exp(MapExpr a);
MapExpr log(MapExpr a);

}  // namespace hypconvex
