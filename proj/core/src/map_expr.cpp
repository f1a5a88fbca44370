#include "hypconvex/map_expr.hpp"

#include <algorithm>
#include <cmath>

namespace hypconvex {

namespace {

Cplx checked(Cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw EvaluationError(std::string("map evaluation: non-finite result in ") + what);
  }
  return v;
}

}  // namespace

MapExpr MapExpr::constant(Cplx value) {
  return MapExpr(std::make_shared<const Node>(Node{Op::constant, value, 0, 0, {}}));
}

MapExpr MapExpr::variable(std::size_t index) {
  return MapExpr(std::make_shared<const Node>(Node{Op::variable, {}, index, 0, {}}));
}

MapExpr MapExpr::unary(Op op, MapExpr arg) {
  if (op != Op::neg && op != Op::exp && op != Op::log) throw DomainError("not a unary operator");
  return MapExpr(std::make_shared<const Node>(Node{op, {}, 0, 0, {std::move(arg)}}));
}

MapExpr MapExpr::binary(Op op, MapExpr lhs, MapExpr rhs) {
  if (op != Op::add && op != Op::sub && op != Op::mul && op != Op::div) {
    throw DomainError("not a binary operator");
  }
  return MapExpr(std::make_shared<const Node>(Node{op, {}, 0, 0, {std::move(lhs), std::move(rhs)}}));
}

MapExpr MapExpr::power(MapExpr base, int exponent) {
  return MapExpr(std::make_shared<const Node>(Node{Op::pow, {}, 0, exponent, {std::move(base)}}));
}

Cplx MapExpr::evaluate(const CVector& z) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::variable:
      if (n.index >= static_cast<std::size_t>(z.size())) {
        throw EvaluationError("map evaluation: variable " + std::to_string(n.index) +
                              " out of range");
      }
      return z[static_cast<Eigen::Index>(n.index)];
    case Op::add: return checked(n.args[0].evaluate(z) + n.args[1].evaluate(z), "add");
    case Op::sub: return checked(n.args[0].evaluate(z) - n.args[1].evaluate(z), "sub");
    case Op::mul: return checked(n.args[0].evaluate(z) * n.args[1].evaluate(z), "mul");
    case Op::div: {
      const Cplx den = n.args[1].evaluate(z);
      if (den == Cplx{0.0, 0.0}) throw EvaluationError("map evaluation: division by zero");
      return checked(n.args[0].evaluate(z) / den, "div");
    }
    case Op::neg: return -n.args[0].evaluate(z);
    case Op::exp: return checked(std::exp(n.args[0].evaluate(z)), "exp");
    case Op::log: {
      const Cplx a = n.args[0].evaluate(z);
      if (a == Cplx{0.0, 0.0}) throw EvaluationError("map evaluation: log of zero");
      return std::log(a);  // principal branch, cut along the negative reals
    }
    case Op::pow: {
      const Cplx base = n.args[0].evaluate(z);
      if (n.exponent < 0 && base == Cplx{0.0, 0.0}) {
        throw EvaluationError("map evaluation: negative power of zero");
      }
      Cplx result{1.0, 0.0};
      Cplx b = n.exponent < 0 ? 1.0 / base : base;
      for (unsigned e = static_cast<unsigned>(std::abs(n.exponent)); e; e >>= 1) {
        if (e & 1u) result *= b;
        b *= b;
      }
      return checked(result, "pow");
    }
  }
  throw EvaluationError("map evaluation: unknown operator");
}

std::size_t MapExpr::arity() const {
  const Node& n = *node_;
  if (n.op == Op::variable) return n.index + 1;
  std::size_t a = 0;
  for (const auto& arg : n.args) a = std::max(a, arg.arity());
  return a;
}

const char* to_string(MapExpr::Op op) {
  switch (op) {
    case MapExpr::Op::constant: return "const";
    case MapExpr::Op::variable: return "var";
    case MapExpr::Op::add: return "add";
    case MapExpr::Op::sub: return "sub";
    case MapExpr::Op::mul: return "mul";
    case MapExpr::Op::div: return "div";
    case MapExpr::Op::neg: return "neg";
    case MapExpr::Op::exp: return "exp";
    case MapExpr::Op::log: return "log";
    case MapExpr::Op::pow: return "pow";
  }
  return "?";
}

MapExpr operator+(MapExpr a, MapExpr b) { return MapExpr::binary(MapExpr::Op::add, std::move(a), std::move(b)); }
MapExpr operator-(MapExpr a, MapExpr b) { return MapExpr::binary(MapExpr::Op::sub, std::move(a), std::move(b)); }
MapExpr operator*(MapExpr a, MapExpr b) { return MapExpr::binary(MapExpr::Op::mul, std::move(a), std::move(b)); }
MapExpr operator/(MapExpr a, MapExpr b) { return MapExpr::binary(MapExpr::Op::div, std::move(a), std::move(b)); }
MapExpr exp(MapExpr a) { return MapExpr::unary(MapExpr::Op::exp, std::move(a)); }
MapExpr log(MapExpr a) { return MapExpr::unary(MapExpr::Op::log, std::move(a)); }

}  // namespace hypconvex
