#pragma once

#include <span>
#include <string>
#include <vector>

#include "darboux_lab/ermakov.hpp"
#include "darboux_lab/grid.hpp"
#include "darboux_lab/potentials.hpp"

namespace dlab {

struct BetaSample {
    cplx beta;
    cplx d_beta;
};

/// beta = -alpha'/alpha + i lambda/alpha^2 and its derivative.
BetaSample beta_lambda(const AlphaFunction& alpha, double x);

/// V_lambda = V0 + 2 beta' at one abscissa.
cplx potential_at(const AlphaFunction& alpha, double x);

ComplexField complex_potential(const AlphaFunction& alpha, std::span<const double> grid);

/// max |-beta' + beta^2 - V0 + eps| / max(1, |beta|^2 + |V0 - eps|).
double riccati_residual(const AlphaFunction& alpha, std::span<const double> grid);

enum class StateKind { Transformed, Missing };

struct EigenState {
    ComplexField field;
    double energy = 0.0;
    /// Integral of psi^2 before normalization.
    cplx raw_binorm;
    /// |raw_binorm| below 1e-10: the samples are left unnormalized.
    bool zero_binorm = false;
    StateKind kind = StateKind::Transformed;
    int source_level = -1;  // n of the seed bound state; -1 for the missing state
    std::string label() const;
};

inline constexpr double kZeroBinormThreshold = 1e-10;

/// Scales samples so that the Simpson integral of psi^2 is 1 and the first
/// sample above 1e-8 max|psi| has positive real part.
void binormalize(EigenState& state);

/// psi = phi_n' + beta phi_n with energy E_n; requires a uniform grid.
EigenState transform_bound_state(const AlphaFunction& alpha, const PotentialSpec& spec, int n,
                                 std::span<const double> grid);

/// psi_eps = (1/Q) [(1/c)(lambda/omega0 - i b/2) v - i u_p] with energy eps.
cplx missing_state_at(const AlphaFunction& alpha, double x);
EigenState missing_state(const AlphaFunction& alpha, std::span<const double> grid);

/// max |psi_eps'/psi_eps - beta| / max(1, |beta|) over points where
/// |psi_eps| exceeds floor * max|psi_eps|; the log-derivative is analytic.
double missing_state_log_derivative_residual(const AlphaFunction& alpha, std::span<const double> grid,
                                             double floor = 1e-6);

/// Real isospectral family at lambda = 0: alpha = v/omega0 + sign gamma_m u_p,
/// V = -V0 + 2 eps + 2 (alpha'/alpha)^2. Zeros of alpha are singularities,
/// reported rather than thrown.
struct RealFamily {
    RealField potential;
    std::vector<double> singularities;
};

RealFamily real_family_lambda0(const SeedPair& pair, double gamma_m, int sign, std::span<const double> grid);

/// Zeros of alpha = v/omega0 + sign gamma_m u_p, by sign change and bisection.
std::vector<double> real_family_zeros(const SeedPair& pair, double gamma_m, int sign,
                                      std::span<const double> grid);

struct AreaCheck {
    double integral = 0.0;
    double boundary = 0.0;
};

/// Integral of Im V_lambda over the window together with the closed form
/// 2 lambda [1/Q] evaluated at the window ends.
AreaCheck zero_total_area(const AlphaFunction& alpha, const Window& window);

/// max |V(x) - conj(V(-x))|; the grid must be symmetric about zero.
double pt_symmetry_check(const ComplexField& field);

struct PredictedLevel {
    double energy = 0.0;
    int multiplicity = 1;
    std::string label;
};

/// Ordered levels {eps} union {E_0, ..., E_{count-1}}. A level of V0 equal to
/// eps (within 1e-9) is listed once with multiplicity 2.
struct SpectrumPrediction {
    std::vector<PredictedLevel> levels;
    std::vector<double> energies() const;
};

/// count defaults to every bound level for Morse and three otherwise.
SpectrumPrediction predict_spectrum(const PotentialSpec& spec, double epsilon, int count = -1);

/// The same without the added level (V0 itself).
SpectrumPrediction hermitian_spectrum(const PotentialSpec& spec, int count = -1);

}  // namespace dlab
