#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace adic {

using BigInt = mpz_class;
using Rational = mpq_class;
using RVector = std::vector<Rational>;

// "p/q", or "p" for integers
std::string fraction_string(const Rational& q);
Rational parse_fraction(std::string_view text);

Rational l1_norm(const RVector& v);
RVector normalized(const RVector& v);  // throws on the zero vector
bool is_zero(const RVector& v);

BigInt pow_int(const BigInt& base, unsigned long e);
BigInt lcm_int(const BigInt& a, const BigInt& b);
std::size_t lcm_size(std::size_t a, std::size_t b);
std::size_t gcd_size(std::size_t a, std::size_t b);

}  // namespace adic
