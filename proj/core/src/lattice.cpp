#include "llfp/lattice/lattice.hpp"

#include <limits>
#include <sstream>

namespace llfp {

std::string ExtInt::to_string() const {
  switch (kind_) {
    case Kind::neg_inf:
      return "-inf";
    case Kind::pos_inf:
      return "inf";
    case Kind::finite:
      break;
  }
  return std::to_string(value_);
}

namespace {

ExtInt saturate(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max()) return ExtInt::pos_inf();
  if (v < std::numeric_limits<std::int64_t>::min()) return ExtInt::neg_inf();
  return ExtInt(static_cast<std::int64_t>(v));
}

int sign_of(ExtInt a) {
  if (a.is_neg_inf()) return -1;
  if (a.is_pos_inf()) return 1;
  return a.value() < 0 ? -1 : (a.value() > 0 ? 1 : 0);
}

}  // namespace

ExtInt ext_add(ExtInt a, ExtInt b) {
  if (a.is_finite() && b.is_finite()) return saturate(static_cast<__int128>(a.value()) + b.value());
  if ((a.is_neg_inf() && b.is_pos_inf()) || (a.is_pos_inf() && b.is_neg_inf())) {
    throw LatticeError("undefined sum -inf + inf");
  }
  return a.is_finite() ? b : a;
}

ExtInt ext_neg(ExtInt a) {
  if (a.is_neg_inf()) return ExtInt::pos_inf();
  if (a.is_pos_inf()) return ExtInt::neg_inf();
  return saturate(-static_cast<__int128>(a.value()));
}

ExtInt ext_mul(ExtInt a, ExtInt b) {
  if (a.is_finite() && b.is_finite()) return saturate(static_cast<__int128>(a.value()) * b.value());
  int s = sign_of(a) * sign_of(b);
  if (s == 0) return ExtInt(0);
  return s > 0 ? ExtInt::pos_inf() : ExtInt::neg_inf();
}

std::string LatticeLiteral::to_string() const {
  struct Printer {
    std::string operator()(const Bottom&) const { return "bot"; }
    std::string operator()(const Top&) const { return "top"; }
    std::string operator()(const Set& s) const {
      std::string out = "{";
      for (std::size_t i = 0; i < s.atoms.size(); ++i) {
        if (i) out += ",";
        out += s.atoms[i];
      }
      return out + "}";
    }
    std::string operator()(const Range& r) const { return "[" + r.lo.to_string() + "," + r.hi.to_string() + "]"; }
  };
  return std::visit(Printer{}, form);
}

}  // namespace llfp
