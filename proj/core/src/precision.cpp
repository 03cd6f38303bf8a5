#include "tunnelkit/precision.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace tunnelkit {

int policy_digits(double log10_dE) {
  int d = static_cast<int>(std::ceil(-log10_dE)) + kGuardDigits;
  return std::max(20, d);
}

double expected_log10_splitting(const PotentialSpec& spec) {
  const double g = spec.g.to_double();
  if (!(g > 0)) return 0.0;
  const double pi = M_PI;
  double ln = 0.0;
  switch (spec.family) {
    case Family::DoubleWell: ln = std::log(4.0 / std::sqrt(g * pi)) - 2.0 / (3.0 * g); break;
    case Family::Cosine: ln = std::log(8.0 / (std::sqrt(g) * std::pow(pi, 1.5))) - 2.0 / (pi * pi * g); break;
    // side-to-side tunnelling through the centre, the slowest process
    case Family::TripleWell: ln = -0.41 / g; break;
    default: return 0.0;
  }
  return ln / std::log(10.0);
}

std::optional<int> env_digits() {
  const char* v = std::getenv("TUNNELKIT_DIGITS");
  if (v == nullptr || *v == '\0') return std::nullopt;
  std::size_t used = 0;
  int d = 0;
  try {
    d = std::stoi(v, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("TUNNELKIT_DIGITS is not an integer: ") + v);
  }
  if (used != std::string(v).size()) throw std::invalid_argument(std::string("TUNNELKIT_DIGITS is not an integer: ") + v);
  if (d < 20) throw std::invalid_argument("TUNNELKIT_DIGITS must be >= 20");
  return d;
}

int resolve_digits(std::optional<int> requested, const PotentialSpec& spec) {
  if (requested) {
    if (*requested < 20) throw std::invalid_argument("digits must be >= 20");
    return *requested;
  }
  if (auto e = env_digits()) return *e;
  return std::max(kDefaultDigits, policy_digits(expected_log10_splitting(spec)));
}

}  // namespace tunnelkit
