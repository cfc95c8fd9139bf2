#pragma once

#include <compare>
#include <complex>
#include <map>
#include <string>
#include <string_view>

namespace fqed {

//! Exact rational exponent.
struct Rational {
  long num = 0;
  long den = 1;

  constexpr Rational() = default;
  Rational(long n, long d = 1);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator-() const { return {-num, den}; }
  Rational operator*(long k) const { return {num * k, den}; }
  bool operator==(const Rational&) const = default;
  bool is_zero() const { return num == 0; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
};

//! Symbolic record of the box-normalization factors attached to an amplitude:
//! a phase in {1, i, -1, -i} times a product of symbols raised to rational
//! powers. Symbols are free-form ("V", "T", "e", "Z", "2pi", "omega[k_i]", ...).
//! Composition adds exponents; the default-constructed ledger is the identity.
class NormalizationLedger {
public:
  NormalizationLedger() = default;

  static NormalizationLedger symbol(std::string name, Rational exponent);

  NormalizationLedger& times(std::string name, Rational exponent);
  /// Multiply the phase by i^quarter_turns.
  NormalizationLedger& rotate_phase(int quarter_turns);

  NormalizationLedger operator*(const NormalizationLedger& o) const;
  NormalizationLedger operator/(const NormalizationLedger& o) const;
  NormalizationLedger inverse() const;

  Rational exponent(std::string_view name) const;
  int phase_quarter_turns() const { return phase_; }
  std::complex<double> phase() const;
  bool is_identity() const { return phase_ == 0 && exps_.empty(); }

  /// Numeric value of the phase and the "e" and "Z" factors; every other
  /// symbol is left symbolic.
  std::complex<double> coupling(double e, double Z = 1.0) const;

  const std::map<std::string, Rational, std::less<>>& exponents() const { return exps_; }
  std::string to_string() const;

  bool operator==(const NormalizationLedger&) const = default;

private:
  std::map<std::string, Rational, std::less<>> exps_;
  int phase_ = 0;
};

} // namespace fqed
