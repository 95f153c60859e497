#ifndef GEONIUM_CONSTANTS_HPP
#define GEONIUM_CONSTANTS_HPP

namespace geonium {

// Gaussian-CGS values. Every derivation routine takes hbar (and k_B where
// needed) as a defaulted argument so dimensionless unit tests can pass 1.
inline constexpr double kHbarCgs = 1.054571817e-27;  // erg s
inline constexpr double kBoltzmannCgs = 1.380649e-16;  // erg/K

}  // namespace geonium

#endif
