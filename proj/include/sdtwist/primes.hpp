#pragma once

#include <cstdint>
#include <vector>

#include "sdtwist/rational.hpp"

namespace sdtwist {

bool is_prime(const Integer& n);
bool is_prime(std::uint64_t n);

/// All primes <= bound, ascending (Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

/// Throws DomainError unless p is prime.
void require_prime(const Integer& p);

bool is_perfect_square(const Integer& n);

Integer gcd(const Integer& a, const Integer& b);

}  // namespace sdtwist
