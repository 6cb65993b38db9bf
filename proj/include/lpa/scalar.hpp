#pragma once

// Exact base-field arithmetic: rationals, Laurent polynomials over Q and the
// simple extensions Q[x, x^-1]/(f(x)) used by twisted modules.

#include <gmpxx.h>

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lpa {

using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Finitely supported map exponent -> coefficient. Zero coefficients are
/// never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::map<int, Rational> coeffs);

  static LaurentPoly monomial(Rational coeff, int exponent);
  static LaurentPoly parse(std::string_view text);

  const std::map<int, Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int exponent) const;
  bool is_zero() const { return coeffs_.empty(); }
  int min_exponent() const;
  int max_exponent() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const = default;

  std::string to_string() const;

 private:
  std::map<int, Rational> coeffs_;
};

enum class Irreducibility { Verified, Reducible, Unchecked };

std::string_view to_string(Irreducibility status);

/// Descriptor of K' = Q[x, x^-1]/(f). The modulus is f shifted to clear
/// negative exponents and scaled to be monic.
class ExtensionField {
 public:
  const LaurentPoly& defining_poly() const { return f_; }
  /// Monic modulus, dense coefficients c_0..c_n with c_n = 1.
  const std::vector<Rational>& modulus() const { return modulus_; }
  int degree() const { return static_cast<int>(modulus_.size()) - 1; }
  Irreducibility irreducibility() const { return status_; }

  bool same_field(const ExtensionField& o) const {
    return modulus_ == o.modulus_;
  }

 private:
  friend std::shared_ptr<const ExtensionField> extension_of(
      const LaurentPoly& f);
  LaurentPoly f_;
  std::vector<Rational> modulus_;
  Irreducibility status_ = Irreducibility::Unchecked;
};

using FieldPtr = std::shared_ptr<const ExtensionField>;

/// Throws ZeroConstantTerm or DegreeZero. Irreducibility is tested by the
/// rational root test up to degree 3 and recorded, never enforced here.
FieldPtr extension_of(const LaurentPoly& f);

/// An element of Q or of some extension K'. Rationals embed into any
/// extension; two distinct extensions never mix.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(long v) : value_(Rational(v)) {}  // NOLINT: implicit by design of literals
  Scalar(int v) : value_(Rational(v)) {}   // NOLINT
  Scalar(Rational q) : value_(canonical(std::move(q))) {}  // NOLINT

  /// Residue of degree < n modulo the field's modulus; reduces if longer.
  static Scalar in_field(FieldPtr field, std::vector<Rational> residue);
  /// The class x-bar of x.
  static Scalar generator(FieldPtr field);

  bool is_rational() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  const FieldPtr& field() const;
  /// Residue coefficients (length = degree); rationals give {q}.
  std::vector<Rational> residue() const;

  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar pow(long exponent) const;

  bool operator==(const Scalar& o) const;

  std::string to_string() const;

 private:
  struct Ext {
    FieldPtr field;
    std::vector<Rational> residue;
  };
  explicit Scalar(Ext e) : value_(std::move(e)) {}

  static Rational canonical(Rational q) {
    q.canonicalize();
    return q;
  }
  static Ext lift(const Scalar& s, const FieldPtr& field);
  static FieldPtr common_field(const Scalar& a, const Scalar& b);

  std::variant<Rational, Ext> value_;
};

/// Evaluates f at a scalar (negative exponents via inverses).
Scalar evaluate(const LaurentPoly& f, const Scalar& at);

}  // namespace lpa
