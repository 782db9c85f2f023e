#pragma once

#include <cstdint>
#include <string>

#include "sdtwist/galois.hpp"
#include "sdtwist/polynomial.hpp"

namespace sdtwist {

/// Signed squarefree representative of n in Q*/(Q*)^2. When complete is
/// false the cofactor could not be split and is left out of the kernel.
struct SquarefreeKernel {
  Integer kernel;
  bool complete = false;
  std::uint64_t trial_bound = 0;
  Integer cofactor = 1;  // unfactored part, 1 when complete
};

/// (u, v) = (u0, v0) mod modulus.
struct Congruence {
  Integer u0, v0, modulus;
};

/// One specialization P(x, u/v) of a twist family.
struct FieldCandidate {
  Integer u, v;
  ExactPoly poly;  // primitive integral, positive leading coefficient
  Integer disc;
  SquarefreeKernel kernel;
  int disc_sign = 0;
  SdCertificate certificate;
  bool point_verified = false;
  Integer modulus = 1;  // residue class is (u mod modulus, v mod modulus)
  Integer residue_u = 0, residue_v = 0;
  std::string failure;  // empty on success
};

}  // namespace sdtwist
