#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gdual {

using Scalar = std::int64_t;

class AlgebraError : public std::runtime_error {
 public:
  AlgebraError(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

bool is_prime(Scalar n);

/// Arithmetic in F_p. Elements are stored as residues in [0, p).
class PrimeField {
 public:
  explicit PrimeField(Scalar p);

  Scalar p() const noexcept { return p_; }

  Scalar reduce(Scalar x) const noexcept {
    x %= p_;
    return x < 0 ? x + p_ : x;
  }
  Scalar add(Scalar a, Scalar b) const noexcept { return reduce(a + b); }
  Scalar sub(Scalar a, Scalar b) const noexcept { return reduce(a - b); }
  Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const noexcept { return (a * b) % p_; }
  Scalar inv(Scalar a) const;
  Scalar pow(Scalar a, std::uint64_t e) const noexcept;
  /// Image of (-1)^k.
  Scalar sign(int k) const noexcept { return (k & 1) ? p_ - 1 : 1 % p_; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  Scalar p_;
};

}  // namespace gdual
