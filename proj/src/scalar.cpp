#include "lpa/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lpa/error.hpp"

namespace lpa {

namespace {

using Dense = std::vector<Rational>;

void trim(Dense& p) {
  while (!p.empty() && p.back() == 0) {
    p.pop_back();
  }
}

Dense dense_mul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) {
    return {};
  }
  Dense out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  trim(out);
  return out;
}

Dense dense_sub(Dense a, const Dense& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Division with remainder by a nonzero divisor.
std::pair<Dense, Dense> dense_divmod(Dense a, const Dense& b) {
  trim(a);
  Dense q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    Rational c = a.back() / lead;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) {
      a[shift + j] -= c * b[j];
    }
    a.pop_back();  // leading term cancels exactly
    trim(a);
  }
  trim(q);
  return {q, a};
}

Dense reduce_mod(Dense p, const Dense& modulus) {
  trim(p);
  if (p.size() < modulus.size()) return p;
  return dense_divmod(std::move(p), modulus).second;
}

Rational eval_dense(const Dense& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Rational root test on a polynomial with nonzero constant term.
Irreducibility rational_root_status(const Dense& monic) {
  int degree = static_cast<int>(monic.size()) - 1;
  if (degree == 1) return Irreducibility::Verified;
  if (degree > 3) return Irreducibility::Unchecked;
  mpz_class lcm = 1;
  for (const auto& c : monic) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  std::vector<mpz_class> ints;
  for (const auto& c : monic) {
    Rational scaled = c * lcm;
    ints.push_back(scaled.get_num());
  }
  const mpz_class limit("1000000000000");
  if (abs(ints.front()) > limit || abs(ints.back()) > limit) {
    return Irreducibility::Unchecked;
  }
  for (const auto& p : positive_divisors(ints.front())) {
    for (const auto& q : positive_divisors(ints.back())) {
      for (int sign : {1, -1}) {
        Rational root(p * sign, q);
        root.canonicalize();
        if (eval_dense(monic, root) == 0) return Irreducibility::Reducible;
      }
    }
  }
  // A reducible cubic or quadratic always has a linear factor.
  return Irreducibility::Verified;
}

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = strip_spaces(text);
  auto bad = [&] {
    return Error(ErrorKind::ParseError, "invalid rational '" + std::string(text) + "'");
  };
  if (s.empty()) throw bad();
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    return std::all_of(s.begin() + from, s.begin() + to,
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!digits(i, s.size())) throw bad();
  } else if (!digits(i, slash) || !digits(slash + 1, s.size())) {
    throw bad();
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) {
    throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(std::map<int, Rational> coeffs) {
  for (auto& [e, c] : coeffs) {
    if (c != 0) coeffs_.emplace(e, std::move(c));
  }
}

LaurentPoly LaurentPoly::monomial(Rational coeff, int exponent) {
  return LaurentPoly({{exponent, std::move(coeff)}});
}

Rational LaurentPoly::coefficient(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

int LaurentPoly::min_exponent() const {
  return coeffs_.empty() ? 0 : coeffs_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  std::map<int, Rational> out = coeffs_;
  for (const auto& [e, c] : o.coeffs_) out[e] += c;
  return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  std::map<int, Rational> out;
  for (const auto& [e1, c1] : coeffs_) {
    for (const auto& [e2, c2] : o.coeffs_) out[e1 + e2] += c1 * c2;
  }
  return LaurentPoly(std::move(out));
}

// term := [coef ["*"]] "x" ["^" int] | coef
LaurentPoly LaurentPoly::parse(std::string_view text) {
  std::string s = strip_spaces(text);
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::ParseError,
                 "invalid polynomial '" + std::string(text) + "': " + why);
  };
  if (s.empty()) throw fail("empty");
  std::map<int, Rational> coeffs;
  std::size_t i = 0;
  auto is_digit = [&](std::size_t k) {
    return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]));
  };
  auto read_uint = [&]() {
    std::size_t start = i;
    while (is_digit(i)) ++i;
    return s.substr(start, i - start);
  };
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw fail("expected '+' or '-' at position " + std::to_string(i));
    }
    first = false;
    Rational coeff(1);
    bool have_coeff = false;
    if (is_digit(i)) {
      std::string num = read_uint();
      if (i < s.size() && s[i] == '/') {
        ++i;
        std::string den = read_uint();
        if (den.empty()) throw fail("missing denominator");
        coeff = parse_rational(num + "/" + den);
      } else {
        coeff = parse_rational(num);
      }
      have_coeff = true;
      if (i < s.size() && s[i] == '*') {
        ++i;
        if (i >= s.size() || s[i] != 'x') throw fail("expected 'x' after '*'");
      }
    }
    int exponent = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      exponent = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        int esign = 1;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
          esign = s[i] == '-' ? -1 : 1;
          ++i;
        }
        std::string e = read_uint();
        if (e.empty()) throw fail("missing exponent");
        exponent = esign * std::stoi(e);
      }
    } else if (!have_coeff) {
      throw fail("expected a term at position " + std::to_string(i));
    }
    coeffs[exponent] += coeff * sign;
  }
  return LaurentPoly(std::move(coeffs));
}

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "x";
    if (e != 1) out << "^" << e;
  }
  return out.str();
}

std::string_view to_string(Irreducibility status) {
  switch (status) {
    case Irreducibility::Verified:
      return "verified";
    case Irreducibility::Reducible:
      return "reducible";
    case Irreducibility::Unchecked:
      return "unchecked";
  }
  return "unchecked";
}

FieldPtr extension_of(const LaurentPoly& f) {
  if (f.coefficient(0) == 0) {
    throw Error(ErrorKind::ZeroConstantTerm,
                "constant term of " + f.to_string() + " is zero");
  }
  int lo = f.min_exponent();
  int n = f.max_exponent() - lo;
  if (n < 1) {
    throw Error(ErrorKind::DegreeZero, f.to_string() + " has degree 0");
  }
  // x is a unit modulo f, so multiplying by x^-lo changes nothing.
  Dense modulus(static_cast<std::size_t>(n) + 1, Rational(0));
  for (const auto& [e, c] : f.coefficients()) {
    modulus[static_cast<std::size_t>(e - lo)] = c;
  }
  Rational lead = modulus.back();
  for (auto& c : modulus) c /= lead;
  auto field = std::shared_ptr<ExtensionField>(new ExtensionField());
  field->f_ = f;
  field->modulus_ = std::move(modulus);
  field->status_ = rational_root_status(field->modulus_);
  return field;
}

// --------------------------------------------------------------------- Scalar

Scalar Scalar::in_field(FieldPtr field, std::vector<Rational> residue) {
  for (auto& c : residue) c.canonicalize();
  Dense r = reduce_mod(std::move(residue), field->modulus());
  r.resize(static_cast<std::size_t>(field->degree()), Rational(0));
  return Scalar(Ext{std::move(field), std::move(r)});
}

Scalar Scalar::generator(FieldPtr field) {
  return in_field(std::move(field), {Rational(0), Rational(1)});
}

const Rational& Scalar::rational() const {
  if (!is_rational()) {
    throw Error(ErrorKind::MixedFieldOperands, "scalar is not rational");
  }
  return std::get<Rational>(value_);
}

const FieldPtr& Scalar::field() const {
  static const FieldPtr none;
  if (is_rational()) return none;
  return std::get<Ext>(value_).field;
}

std::vector<Rational> Scalar::residue() const {
  if (is_rational()) return {std::get<Rational>(value_)};
  return std::get<Ext>(value_).residue;
}

bool Scalar::is_zero() const {
  if (is_rational()) return std::get<Rational>(value_) == 0;
  const auto& r = std::get<Ext>(value_).residue;
  return std::all_of(r.begin(), r.end(), [](const Rational& c) { return c == 0; });
}

bool Scalar::is_one() const { return (*this - Scalar(1)).is_zero(); }

Scalar::Ext Scalar::lift(const Scalar& s, const FieldPtr& field) {
  if (s.is_rational()) {
    Dense r(static_cast<std::size_t>(field->degree()), Rational(0));
    r[0] = std::get<Rational>(s.value_);
    return Ext{field, std::move(r)};
  }
  return std::get<Ext>(s.value_);
}

FieldPtr Scalar::common_field(const Scalar& a, const Scalar& b) {
  const FieldPtr& fa = a.field();
  const FieldPtr& fb = b.field();
  if (fa && fb && fa != fb && !fa->same_field(*fb)) {
    throw Error(ErrorKind::MixedFieldOperands,
                "scalars from Q[x]/(" + fa->defining_poly().to_string() +
                    ") and Q[x]/(" + fb->defining_poly().to_string() + ")");
  }
  return fa ? fa : fb;
}

Scalar Scalar::operator+(const Scalar& o) const {
  FieldPtr f = common_field(*this, o);
  if (!f) return Scalar(std::get<Rational>(value_) + std::get<Rational>(o.value_));
  Ext a = lift(*this, f);
  Ext b = lift(o, f);
  for (std::size_t i = 0; i < a.residue.size(); ++i) a.residue[i] += b.residue[i];
  return Scalar(std::move(a));
}

Scalar Scalar::operator-() const {
  if (is_rational()) return Scalar(Rational(-std::get<Rational>(value_)));
  Ext a = std::get<Ext>(value_);
  for (auto& c : a.residue) c = -c;
  return Scalar(std::move(a));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  FieldPtr f = common_field(*this, o);
  if (!f) return Scalar(std::get<Rational>(value_) * std::get<Rational>(o.value_));
  if (is_rational() || o.is_rational()) {
    const Rational& k = is_rational() ? std::get<Rational>(value_)
                                      : std::get<Rational>(o.value_);
    Ext a = is_rational() ? std::get<Ext>(o.value_) : std::get<Ext>(value_);
    for (auto& c : a.residue) c *= k;
    return Scalar(std::move(a));
  }
  Dense prod = dense_mul(std::get<Ext>(value_).residue, std::get<Ext>(o.value_).residue);
  return in_field(f, std::move(prod));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (is_rational()) return Scalar(Rational(1 / std::get<Rational>(value_)));
  const Ext& e = std::get<Ext>(value_);
  // Extended Euclid: track s with s * value = r (mod modulus).
  Dense r0 = e.field->modulus(), r1 = e.residue;
  trim(r1);
  Dense s0, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, rem] = dense_divmod(r0, r1);
    Dense s2 = dense_sub(s0, dense_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) {
    throw Error(ErrorKind::DivisionByZero,
                "zero divisor modulo reducible " + e.field->defining_poly().to_string());
  }
  Rational g = r0[0];
  for (auto& c : s0) c /= g;
  return in_field(e.field, std::move(s0));
}

Scalar Scalar::operator/(const Scalar& o) const {
  common_field(*this, o);
  return *this * o.inverse();
}

Scalar Scalar::pow(long exponent) const {
  Scalar base = exponent < 0 ? inverse() : *this;
  unsigned long n = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                 : static_cast<unsigned long>(exponent);
  Scalar acc(1);
  while (n > 0) {
    if (n & 1UL) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  FieldPtr f = common_field(*this, o);
  if (!f) return std::get<Rational>(value_) == std::get<Rational>(o.value_);
  return lift(*this, f).residue == lift(o, f).residue;
}

std::string Scalar::to_string() const {
  if (is_rational()) return lpa::to_string(std::get<Rational>(value_));
  const auto& r = std::get<Ext>(value_).residue;
  std::map<int, Rational> coeffs;
  for (std::size_t i = 0; i < r.size(); ++i) coeffs[static_cast<int>(i)] = r[i];
  std::string body = LaurentPoly(std::move(coeffs)).to_string();
  // x-bar is written xb to keep it distinct from the polynomial variable.
  std::string out;
  for (char c : body) {
    out.push_back(c);
    if (c == 'x') out.push_back('b');
  }
  return "(" + out + ")";
}

Scalar evaluate(const LaurentPoly& f, const Scalar& at) {
  Scalar acc(0);
  for (const auto& [e, c] : f.coefficients()) acc += Scalar(c) * at.pow(e);
  return acc;
}

}  // namespace lpa
