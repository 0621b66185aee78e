#pragma once

// Seeded random data for property tests. NFSPECTRAL_SEED picks the seed;
// the default is fixed so runs are reproducible.

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "nfspectral/abasis.hpp"
#include "nfspectral/coeff.hpp"

namespace nfs::testkit {

inline unsigned seed() {
  if (const char* s = std::getenv("NFSPECTRAL_SEED")) return static_cast<unsigned>(std::stoul(s));
  return 20240611u;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(seed());
  return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Rational random_rational(int num = 6, int den = 5) {
  Rational q(uniform(-num, num), uniform(1, den));
  q.canonicalize();
  return q;
}

inline RingElem random_elem(RingSpec spec) {
  std::vector<Rational> cs(static_cast<std::size_t>(spec.length()));
  for (auto& c : cs) c = random_rational();
  return RingElem(spec, std::move(cs));
}

inline ATerm random_term(int s_lo, int s_hi) {
  const int s = uniform(s_lo, s_hi);
  const auto basis = grade_basis(s);
  return basis[static_cast<std::size_t>(uniform(0, static_cast<int>(basis.size()) - 1))];
}

/// Sparse random element with terms of degree s_lo..s_hi.
inline AElement random_element(RingSpec spec, int s_lo, int s_hi, int terms = 5) {
  AElement e(spec);
  for (int i = 0; i < terms; ++i) e.add(random_term(s_lo, s_hi), random_elem(spec));
  return e;
}

inline AElement rotation(RingSpec spec = RingSpec::rationals()) { return AElement::term(spec, 0, 0, 1); }

/// A[0,0,1] plus every basis term of degree 1..n with random coefficients.
inline AElement dense_field(int n, RingSpec spec = RingSpec::rationals()) {
  AElement f = rotation(spec);
  for (int p = 1; p <= n; ++p)
    for (const auto& t : grade_basis(p)) f.add(t, random_elem(spec));
  return f;
}

inline RingElem q(RingSpec spec, const std::string& text) { return RingElem::parse(text, spec); }

}  // namespace nfs::testkit
