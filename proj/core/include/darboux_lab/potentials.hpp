#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>

#include "darboux_lab/grid.hpp"

namespace dlab {

enum class Family { Morse, TrigPoschlTeller, Oscillator };

std::string to_string(Family f);

/// Morse well V0 = G0 (1 - exp(-gamma x))^2 with depth G0 = gamma^2 (N + delta + 1/2)^2.
struct MorseParams {
    double gamma = 1.0;
    double delta = 0.5;
    int n_max = 0;

    double d() const { return n_max + delta + 0.5; }
    double depth() const { return gamma * gamma * d() * d(); }
};

/// Trigonometric Poschl-Teller well V0 = U0^2 r (r - 1) / cos^2(U0 x) on |x| < pi / (2 U0).
struct PoschlTellerParams {
    double u0 = 1.0;
    double r = 2.0;
};

/// An exactly solvable Hermitian potential. Immutable after construction.
class PotentialSpec {
public:
    Family family() const { return family_; }
    const MorseParams& morse() const;
    const PoschlTellerParams& poschl_teller() const;

    /// Mathematical domain; infinite for Morse and the oscillator.
    Window domain() const;
    /// True when V0 diverges at the (finite) domain edges.
    bool has_walls() const { return family_ == Family::TrigPoschlTeller; }
    /// Finite window used for sampling and Dirichlet truncation.
    Window default_window() const;
    /// Number of discrete levels, or nullopt when the spectrum is unbounded.
    std::optional<int> n_bound() const;
    bool is_even() const { return family_ != Family::Morse; }

    double v0(double x) const;
    double energy(int n) const;
    std::string describe() const;

private:
    friend PotentialSpec make_morse(double, double, int);
    friend PotentialSpec make_pt(double, double);
    friend PotentialSpec make_oscillator();

    Family family_ = Family::Oscillator;
    MorseParams morse_{};
    PoschlTellerParams pt_{};
};

PotentialSpec make_morse(double gamma, double delta, int n_max);
PotentialSpec make_pt(double u0, double r);
/// The oscillator V0 = x^2, E_n = 2n + 1.
PotentialSpec make_oscillator();

/// Exact V0(x); throws DomainError outside the open domain.
double eval_v0(const PotentialSpec& spec, double x);
/// Closed-form E_n; throws DomainError for n out of range.
double energy(const PotentialSpec& spec, int n);

struct BoundSample {
    double value = 0.0;
    double derivative = 0.0;
};

/// Unit-normalized bound state phi_n with analytic derivative. The
/// normalization constant is fixed at construction.
class BoundState {
public:
    BoundState(const PotentialSpec& spec, int n);

    int index() const { return n_; }
    double energy() const { return energy_; }
    BoundSample eval(double x) const;

private:
    PotentialSpec spec_;
    int n_;
    double energy_;
    double log_norm_ = 0.0;  // Morse: ln C_n
    double norm_ = 1.0;      // Poschl-Teller: nu_n
};

RealField bound_state(const PotentialSpec& spec, int n, std::span<const double> grid);

}  // namespace dlab
