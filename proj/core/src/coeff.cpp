#include "nfspectral/coeff.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace nfs {

RingSpec RingSpec::local_series(int truncation_order) {
  if (truncation_order < 1) {
    throw RingError("truncation order K must be >= 1");
  }
  return {Kind::LocalSeries, truncation_order};
}

std::string RingSpec::to_string() const {
  if (kind == Kind::Rationals) return "Q";
  return "Ql:" + std::to_string(order);
}

RingSpec RingSpec::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.starts_with("Ql:")) {
    auto digits = text.substr(3);
    int k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw RingError("malformed ring spec '" + std::string(text) + "'");
    }
    return local_series(k);
  }
  throw RingError("unknown ring '" + std::string(text) + "' (expected Q or Ql:K)");
}

RingElem::RingElem(RingSpec spec) : spec_(spec), coeffs_(static_cast<std::size_t>(spec.length())) {}

RingElem::RingElem(RingSpec spec, Rational constant) : RingElem(spec) {
  coeffs_[0] = std::move(constant);
}

RingElem::RingElem(RingSpec spec, std::vector<Rational> coeffs) : spec_(spec), coeffs_(std::move(coeffs)) {
  // Longer inputs are truncated at l^K; shorter ones are zero-padded.
  coeffs_.resize(static_cast<std::size_t>(spec.length()));
}

RingElem RingElem::lambda(RingSpec spec, int power) {
  RingElem out(spec);
  if (power < spec.length()) out.coeffs_[static_cast<std::size_t>(power)] = 1;
  return out;
}

bool RingElem::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

std::optional<int> RingElem::valuation() const {
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) != 0) return static_cast<int>(j);
  }
  return std::nullopt;
}

void RingElem::check_compatible(const RingElem& other) const {
  if (!(spec_ == other.spec_)) {
    throw RingError("incompatible ring contexts: " + spec_.to_string() + " vs " + other.spec_.to_string());
  }
}

RingElem& RingElem::operator+=(const RingElem& other) {
  check_compatible(other);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& other) {
  check_compatible(other);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  return *this;
}

RingElem operator*(const RingElem& a, const RingElem& b) {
  a.check_compatible(b);
  const std::size_t n = a.coeffs_.size();
  RingElem out(a.spec_);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

RingElem& RingElem::operator*=(const RingElem& other) {
  *this = *this * other;
  return *this;
}

RingElem& RingElem::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

RingElem RingElem::operator-() const {
  RingElem out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool operator==(const RingElem& a, const RingElem& b) {
  return a.spec_ == b.spec_ && a.coeffs_ == b.coeffs_;
}

RingElem RingElem::inverse() const {
  if (!is_unit()) {
    throw RingError("not invertible in local ring: " + to_string());
  }
  // a = a0 (1 + x) with x in m, so a^{-1} = a0^{-1} sum_j (-x)^j.
  const Rational inv0 = 1 / coeffs_[0];
  RingElem x = *this * inv0;
  x.coeffs_[0] = 0;
  RingElem neg_x = -x;
  RingElem term(spec_, Rational(1));
  RingElem sum = term;
  for (int j = 1; j < spec_.length(); ++j) {
    term *= neg_x;
    if (term.is_zero()) break;
    sum += term;
  }
  return sum * inv0;
}

RingElem RingElem::divided_by_lambda() const {
  if (sgn(coeffs_[0]) != 0) {
    throw RingError("cannot divide a unit by l: " + to_string());
  }
  RingElem out(spec_);
  for (std::size_t j = 1; j < coeffs_.size(); ++j) out.coeffs_[j - 1] = coeffs_[j];
  return out;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  auto trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  if (trimmed.empty()) throw RingError("empty rational literal");
  std::size_t i = 0;
  if (trimmed[0] == '-' || trimmed[0] == '+') i = 1;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (; i < trimmed.size(); ++i) {
    char c = trimmed[i];
    if (c == '/' && !seen_slash) {
      seen_slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw RingError("malformed rational '" + std::string(text) + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after)) {
    throw RingError("malformed rational '" + std::string(text) + "'");
  }
  std::string s(trimmed[0] == '+' ? trimmed.substr(1) : trimmed);
  if (seen_slash) {
    auto slash = s.find('/');
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw RingError("zero denominator in '" + std::string(text) + "'");
  }
  Rational q(s);
  q.canonicalize();
  return q;
}

std::string RingElem::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const Rational& c = coeffs_[j];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "l";
    if (j > 1) out << "^" << j;
  }
  if (first) return "0";
  return out.str();
}

namespace {

// Parses one unsigned term "c", "c*l", "c*l^j", "l", "l^j" and adds sign*term into acc.
void add_term(std::string_view term, int sign, std::vector<Rational>& acc, std::string_view whole) {
  auto fail = [&] { throw RingError("malformed ring element '" + std::string(whole) + "'"); };
  std::string t;
  for (char c : term) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) fail();
  Rational coeff = 1;
  int power = 0;
  auto lpos = t.find('l');
  std::string num = lpos == std::string::npos ? t : t.substr(0, lpos);
  if (lpos != std::string::npos) {
    if (!num.empty()) {
      if (num.back() != '*') fail();
      num.pop_back();
      if (num.empty()) fail();
    }
    std::string rest = t.substr(lpos + 1);
    if (rest.empty()) {
      power = 1;
    } else {
      if (rest[0] != '^' || rest.size() < 2) fail();
      auto digits = std::string_view(rest).substr(1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), power);
      if (ec != std::errc{} || ptr != digits.data() + digits.size() || power < 0) fail();
    }
  }
  if (!num.empty()) coeff = parse_rational(num);
  if (power >= static_cast<int>(acc.size())) return;  // truncated away
  acc[static_cast<std::size_t>(power)] += sign * coeff;
}

}  // namespace

RingElem RingElem::parse(std::string_view text, RingSpec spec) {
  if (!spec.is_local() && text.find('l') != std::string_view::npos) {
    throw RingError("l appears in a rational ring element '" + std::string(text) + "'");
  }
  std::vector<Rational> acc(static_cast<std::size_t>(spec.length()));
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i == text.size()) throw RingError("empty ring element");
  int sign = 1;
  if (text[i] == '-' || text[i] == '+') {
    sign = text[i] == '-' ? -1 : 1;
    ++i;
  }
  std::size_t start = i;
  for (; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '+' || text[i] == '-') {
      add_term(text.substr(start, i - start), sign, acc, text);
      if (i == text.size()) break;
      sign = text[i] == '-' ? -1 : 1;
      start = i + 1;
    }
  }
  return RingElem(spec, std::move(acc));
}

RingElem ring_mul(const RingElem& a, const RingElem& b) { return a * b; }
bool is_unit(const RingElem& a) { return a.is_unit(); }
RingElem invert(const RingElem& a) { return a.inverse(); }
Rational residue(const RingElem& a) { return a.residue(); }

}  // namespace nfs
