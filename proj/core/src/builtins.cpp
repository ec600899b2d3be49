#include "llfp/lattice/builtins.hpp"

namespace llfp {

std::string to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::powerset:
      return "powerset";
    case LatticeKind::signs:
      return "signs";
    case LatticeKind::interval:
      return "interval";
  }
  return "?";
}

std::vector<std::pair<std::string, std::size_t>> builtin_signatures(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::powerset:
      return {{"union", 2}, {"inter", 2}, {"id", 1}};
    case LatticeKind::signs:
      return {{"s_add", 2}, {"s_sub", 2}, {"s_mul", 2}};
    case LatticeKind::interval:
      return {{"f_add", 2}, {"f_sub", 2}, {"f_mul", 2}};
  }
  return {};
}

void register_builtins(FunctionRegistry<PowersetLattice>& registry, const PowersetLattice& lattice) {
  registry.register_function("union", 2, [&lattice](std::span<const BitSet> a) { return lattice.join(a[0], a[1]); });
  registry.register_function("inter", 2, [&lattice](std::span<const BitSet> a) { return lattice.meet(a[0], a[1]); });
  registry.register_function("id", 1, [](std::span<const BitSet> a) { return a[0]; });
}

void register_builtins(FunctionRegistry<SignLattice>& registry, const SignLattice&) {
  registry.register_function("s_add", 2, [](std::span<const SignSet> a) { return sign_add(a[0], a[1]); });
  registry.register_function("s_sub", 2, [](std::span<const SignSet> a) { return sign_sub(a[0], a[1]); });
  registry.register_function("s_mul", 2, [](std::span<const SignSet> a) { return sign_mul(a[0], a[1]); });
}

void register_builtins(FunctionRegistry<IntervalLattice>& registry, const IntervalLattice& lattice) {
  auto op = [&lattice](ArithOp o) {
    return [&lattice, o](std::span<const Interval> a) { return lattice.arith(o, a[0], a[1]); };
  };
  registry.register_function("f_add", 2, op(ArithOp::add));
  registry.register_function("f_sub", 2, op(ArithOp::sub));
  registry.register_function("f_mul", 2, op(ArithOp::mul));
}

}  // namespace llfp
