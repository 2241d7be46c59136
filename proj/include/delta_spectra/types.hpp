#pragma once

#include <cmath>
#include <stdexcept>

namespace delta_spectra {

/// The three signed contact strengths of the three-body problem.
///
/// Channel layout follows the coupling matrix g = diag{a, b, c}:
///   a -- impurity-electron line y = 0   (attractive when a < 0)
///   b -- impurity-hole line x = 0       (repulsive when b > 0)
///   c -- electron-hole diagonal x = y   (attractive when c < 0)
///
/// The exciton-plus-impurity Hamiltonian corresponds to (-kappa, kappa, -1);
/// the asymmetric variant to (-kappa, kappa_tilde, -1).
struct CouplingTriple {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    /// All channels active, so 1/a, 1/b, 1/c exist.
    bool invertible() const {
        return a != 0.0 && b != 0.0 && c != 0.0;
    }
};

inline CouplingTriple exciton_impurity(double kappa, double kappa_tilde) {
    return {-kappa, kappa_tilde, -1.0};
}

inline CouplingTriple exciton_impurity(double kappa) {
    return exciton_impurity(kappa, kappa);
}

inline CouplingTriple scaled(const CouplingTriple& c, double lambda) {
    return {lambda * c.a, lambda * c.b, lambda * c.c};
}

inline void check_mass_fraction(double sigma) {
    if (!(sigma >= 0.0 && sigma < 1.0))
        throw std::invalid_argument("mass fraction must satisfy 0 <= sigma < 1");
}

inline void check_invertible(const CouplingTriple& c) {
    if (!c.invertible())
        throw std::invalid_argument("all three contact strengths must be nonzero");
}

} // namespace delta_spectra
