#pragma once

#include <vector>

namespace wg {

/// Ai, Bi and first derivatives at a common abscissa.
struct AiryValue {
  double ai;
  double ai_prime;
  double bi;
  double bi_prime;
};

struct AiryMax {
  double x;      // location of the global maximum of Ai (in (-2.34, 0))
  double value;  // Ai(x) = ||Ai||_inf
};

/// Evaluate Ai, Bi, Ai', Bi' at a real argument.
///
/// Maclaurin series for |x| <= 7, asymptotic expansions beyond; the switch is
/// validated by the Wronskian invariant Ai*Bi' - Ai'*Bi = 1/pi.
/// Throws ValidationError for non-finite input.
AiryValue airy(double x);

inline double airy_ai(double x) { return airy(x).ai; }
inline double airy_ai_prime(double x) { return airy(x).ai_prime; }

/// The `count` zeros of Ai closest to the origin (all negative), in decreasing
/// order, each refined to 1e-12. 1 <= count <= 20.
std::vector<double> airy_first_zeros(int count);

/// Zeros of Ai' closest to the origin, decreasing order. 1 <= count <= 20.
std::vector<double> airy_prime_first_zeros(int count);

/// Location and value of the global maximum of Ai on the real line.
AiryMax airy_global_max();

}  // namespace wg
