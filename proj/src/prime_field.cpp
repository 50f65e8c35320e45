#include "gdual/prime_field.hpp"

namespace gdual {

bool is_prime(Scalar n) {
  if (n < 2) return false;
  for (Scalar d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(Scalar p) : p_(p) {
  if (!is_prime(p)) throw AlgebraError("NotPrime", "characteristic " + std::to_string(p) + " is not prime");
  if (p > (Scalar{1} << 31)) throw AlgebraError("NotPrime", "characteristic too large for 64-bit products");
}

Scalar PrimeField::pow(Scalar a, std::uint64_t e) const noexcept {
  Scalar result = 1 % p_;
  a = reduce(a);
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Scalar PrimeField::inv(Scalar a) const {
  a = reduce(a);
  if (a == 0) throw AlgebraError("DivisionByZero", "zero has no inverse in F_" + std::to_string(p_));
  return pow(a, static_cast<std::uint64_t>(p_ - 2));
}

}  // namespace gdual
