#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "darboux_lab/darboux.hpp"
#include "darboux_lab/eigen.hpp"
#include "darboux_lab/grid.hpp"
#include "darboux_lab/potentials.hpp"

namespace dlab {

/// Three-point discretization of -d^2/dx^2 + V on a uniform grid with
/// Dirichlet walls one spacing beyond either end.
struct FdHamiltonian {
    std::vector<double> x;
    double h = 0.0;
    std::vector<cplx> diagonal;  // 2/h^2 + V(x_i)
    double off_diagonal = 0.0;   // -1/h^2

    std::size_t size() const { return x.size(); }
    Tridiagonal tridiagonal() const;
};

inline constexpr std::size_t kMinFdPoints = 50;

FdHamiltonian build_fd(const ComplexField& potential);
FdHamiltonian build_fd(const PotentialSpec& spec, std::span<const double> grid);

enum class EigMode { Auto, Dense, Tridiagonal };

struct EigOptions {
    EigMode mode = EigMode::Auto;
    std::size_t dense_cap = 1500;
    /// Inverse-iteration refinement of eigenvalues with |Re E| below this.
    double refine_below = 0.0;
    bool refine = false;
};

/// Eigenvalues sorted by real part. Auto tries the tridiagonal QL first and
/// falls back to the dense solver (within dense_cap) if it breaks down.
std::vector<cplx> eig_complex(const FdHamiltonian& h, EigOptions opts = {});

struct SpectrumReport {
    std::vector<double> predicted;
    std::vector<cplx> computed;  // matched value per predicted entry
    std::vector<double> abs_errors;
    double max_imag = 0.0;
    double max_rel_imag = 0.0;  // max |Im E| / max(1, |Re E|)
    double max_split = 0.0;      // largest distance from a degenerate level's centroid
    std::vector<cplx> spurious;  // unmatched values below the cutoff
    double cutoff = 0.0;
    bool pass = false;
};

/// Global nearest-value assignment: each predicted level takes as many
/// distinct computed values as its multiplicity, closest pairs first.
/// A level is judged by the centroid of its matched values: passes iff every
/// centroid is within tol_abs in real part and has |Im| <= tol_imag.
SpectrumReport spectrum_match(const SpectrumPrediction& prediction, std::span<const cplx> computed,
                              double tol_abs, double tol_imag, double cutoff);

/// Level above which computed eigenvalues are not inspected: G0 - 0.1 for
/// Morse, halfway past the last predicted level otherwise.
double spectrum_cutoff(const PotentialSpec& spec, const SpectrumPrediction& prediction);

struct VerifyOptions {
    int n = 1200;
    double tol_abs = 1e-2;
    double tol_imag = 1e-6;
    EigOptions eig{};
};

/// FD spectra on n and 2n + 1 interior points of the window, one Richardson
/// step (4 E_{h/2} - E_h) / 3 on each matched level centroid, then
/// spectrum_match. max_split is taken from the finer grid.
SpectrumReport verify_spectrum(const std::function<cplx(double)>& potential, const Window& window,
                               const SpectrumPrediction& prediction, double cutoff, VerifyOptions opts = {});

/// Window used for FD spectra: the domain for walled potentials, the default
/// truncation window otherwise.
Window fd_window(const PotentialSpec& spec);

inline constexpr std::size_t kMinResidualPoints = 800;

/// max |-psi'' + V psi - E psi| / max(1, max|psi| max(1, |E|)) with a
/// five-point second derivative, skipping three points at each end.
double schrodinger_residual(const ComplexField& state, cplx energy, const ComplexField& potential);
double schrodinger_residual(const EigenState& state, const ComplexField& potential);

struct InterlacingResult {
    bool holds = true;
    bool vacuous = false;
    std::vector<double> real_zeros;
    std::vector<double> imag_zeros;
    std::string note;
};

/// Zeros of Re psi and Im psi inside {|psi| > threshold max|psi|}, from
/// sample sign changes refined by linear interpolation. Holds when every gap
/// between consecutive real zeros contains an imaginary zero. Vacuous when
/// Im psi is roundoff or Re psi has fewer than two zeros.
InterlacingResult interlacing_check(const ComplexField& state, double support_threshold = 1e-3);

/// Composite Simpson of psi^2 (no conjugation).
cplx binorm(const ComplexField& state);

/// Integral of psi_m psi_n (no conjugation).
cplx bilinear_overlap(const ComplexField& a, const ComplexField& b);

}  // namespace dlab
