#include <cmath>
#include <cstdio>

#include "entroscope/entropy.hpp"

namespace entroscope {

EntropyValue EntropyValue::finite(double bits, std::string witness) {
  if (!std::isfinite(bits)) throw InvalidArgument("finite entropy value expected");
  return {bits, Kind::Finite, std::move(witness)};
}

EntropyValue EntropyValue::plus_infinity(std::string witness) {
  return {HUGE_VAL, Kind::PlusInfinity, std::move(witness)};
}

EntropyValue EntropyValue::minus_infinity(std::string witness) {
  return {-HUGE_VAL, Kind::MinusInfinity, std::move(witness)};
}

double EntropyValue::to_double() const {
  switch (kind) {
    case Kind::PlusInfinity: return HUGE_VAL;
    case Kind::MinusInfinity: return -HUGE_VAL;
    default: return bits;
  }
}

EntropyValue EntropyValue::operator-() const {
  switch (kind) {
    case Kind::PlusInfinity: return minus_infinity(witness);
    case Kind::MinusInfinity: return plus_infinity(witness);
    default: return {-bits, Kind::Finite, witness};
  }
}

std::string to_string(const EntropyValue& v) {
  if (v.kind == EntropyValue::Kind::PlusInfinity) return "+inf";
  if (v.kind == EntropyValue::Kind::MinusInfinity) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v.bits);
  return buf;
}

}  // namespace entroscope
