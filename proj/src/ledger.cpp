#include "fqed/ledger.hpp"

#include "fqed/errors.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace fqed {

Rational::Rational(long n, long d) : num(n), den(d) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

NormalizationLedger NormalizationLedger::symbol(std::string name, Rational exponent) {
  NormalizationLedger l;
  l.times(std::move(name), exponent);
  return l;
}

NormalizationLedger& NormalizationLedger::times(std::string name, Rational exponent) {
  auto it = exps_.find(name);
  if (it == exps_.end()) {
    if (!exponent.is_zero()) exps_.emplace(std::move(name), exponent);
    return *this;
  }
  it->second = it->second + exponent;
  if (it->second.is_zero()) exps_.erase(it);
  return *this;
}

NormalizationLedger& NormalizationLedger::rotate_phase(int quarter_turns) {
  phase_ = ((phase_ + quarter_turns) % 4 + 4) % 4;
  return *this;
}

NormalizationLedger NormalizationLedger::operator*(const NormalizationLedger& o) const {
  NormalizationLedger out = *this;
  for (const auto& [name, e] : o.exps_) out.times(name, e);
  out.rotate_phase(o.phase_);
  return out;
}

NormalizationLedger NormalizationLedger::inverse() const {
  NormalizationLedger out;
  for (const auto& [name, e] : exps_) out.exps_.emplace(name, -e);
  out.phase_ = (4 - phase_) % 4;
  return out;
}

NormalizationLedger NormalizationLedger::operator/(const NormalizationLedger& o) const { return *this * o.inverse(); }

Rational NormalizationLedger::exponent(std::string_view name) const {
  auto it = exps_.find(name);
  return it == exps_.end() ? Rational{} : it->second;
}

std::complex<double> NormalizationLedger::phase() const {
  static constexpr std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[phase_];
}

std::complex<double> NormalizationLedger::coupling(double e, double Z) const {
  return phase() * std::pow(e, exponent("e").value()) * std::pow(Z, exponent("Z").value());
}

std::string NormalizationLedger::to_string() const {
  static constexpr const char* phases[4] = {"+", "+i", "-", "-i"};
  std::ostringstream os;
  os << phases[phase_];
  if (exps_.empty()) {
    os << "1";
    return os.str();
  }
  bool first = true;
  for (const auto& [name, e] : exps_) {
    if (!first) os << " ";
    first = false;
    os << name;
    if (!(e == Rational{1})) os << "^" << e.to_string();
  }
  return os.str();
}

} // namespace fqed
