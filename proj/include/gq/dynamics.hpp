#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "gq/algebra.hpp"
#include "gq/core.hpp"
#include "gq/groupoid.hpp"
#include "gq/representation.hpp"

namespace gq {

/// Sample times for an evolution.
struct TimeGrid {
  std::vector<double> times;

  /// `points` evenly spaced values from start to stop inclusive.
  static TimeGrid uniform(double start, double stop, std::size_t points);
  /// "start:stop:points", e.g. "0:10:101". Throws DomainError on bad input.
  static TimeGrid parse(std::string_view text);
  /// [0, 10] with 101 points.
  static TimeGrid standard() { return uniform(0.0, 10.0, 101); }
};

/// π₀ on L²(Ω) with basis labels taken from the object labels.
class FundamentalRep {
 public:
  explicit FundamentalRep(Groupoid g) : g_(std::move(g)) {}

  Operator apply(const AlgebraElement& a) const { return fundamental(a, g_); }
  std::size_t dim() const noexcept { return g_.object_count(); }
  std::string label(std::size_t i) const { return g_.object_label(ObjectId{i}); }
  const Groupoid& groupoid() const noexcept { return g_; }

 private:
  Groupoid g_;
};

/// Partition of the basis of L²(Ω_A × Ω_B) into the subspaces
/// H_O = span{|x_A, x_B⟩ : x_A ∈ O} for each orbit O of `a`. When `a` is
/// totally disconnected these are the H_{x_A} = ℂ|x_A⟩ ⊗ H_B.
///
/// Every π₀(α) of the product is checked to vanish off the blocks
/// (entrywise ≤ 1e-14); a failure throws InternalError.
std::vector<std::vector<std::size_t>> block_structure(const Groupoid& a, const Groupoid& b);

/// A self-adjoint operator in the span of rep(ℂ[G]), with its spectral data.
class Hamiltonian {
 public:
  /// Throws DomainError unless ‖h − h*‖ ≤ 1e-12 (coefficientwise).
  static Hamiltonian from_element(const AlgebraElement& h, Rep rep, const Groupoid& g);
  /// Throws DomainError if the matrix is not Hermitian or lies farther than
  /// 1e-8 from span rep(ℂ[G]).
  static Hamiltonian from_matrix(Operator m, const Groupoid& g);

  const Operator& op() const noexcept { return op_; }
  std::size_t dim() const noexcept { return op_.dim(); }
  const Eigen::VectorXd& energies() const noexcept { return energies_; }
  const Matrix& eigenvectors() const noexcept { return vectors_; }

  /// u_t = exp(itH) = V e^{itΛ} V†.
  Matrix propagator(double t) const;

 private:
  explicit Hamiltonian(Operator op);

  Operator op_;
  Eigen::VectorXd energies_;
  Matrix vectors_;
};

/// Samples A_α standard complex normal on a support of k transitions, k
/// uniform in 1..|G|, then returns (a + a*)/2.
AlgebraElement random_hamiltonian_element(const Groupoid& g, Rng& rng);

struct SchmidtDiagnostics {
  std::size_t rank = 0;
  double entropy = 0.0;
  /// Singular values of the coefficient matrix of the normalized vector, descending.
  Eigen::VectorXd coefficients;
  /// σ₂/σ₁ (0 for rank ≤ 1 shapes).
  double ratio = 0.0;
};

/// Schmidt data of ψ ∈ ℂ^{dA} ⊗ ℂ^{dB} with ψ[i·dB + j] = C(i, j).
/// Rank counts σᵢ > 1e-9·σ_max; entropy is −Σ pᵢ log pᵢ with pᵢ = σᵢ²/Σσ².
SchmidtDiagnostics schmidt_diagnostics(const Vector& psi, std::size_t dim_a, std::size_t dim_b);

struct Bipartition {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
};

struct EvolutionTrace {
  std::vector<double> times;
  /// Filled for pure evolutions.
  std::vector<Vector> vectors;
  /// Filled for mixed evolutions.
  std::vector<Matrix> densities;
  /// Per time, when a bipartition was given for a pure evolution.
  std::vector<std::size_t> schmidt_ranks;
  std::vector<double> entropies;
  std::vector<double> schmidt_ratios;
  /// max over t of |‖ψ_t‖ − 1| or |Tr ρ_t − 1|.
  double max_norm_drift = 0.0;
  /// max over t of |Tr(ρ_t H) − Tr(ρ_0 H)|.
  double max_energy_drift = 0.0;
};

/// Schrödinger picture of ρ_t(a) = ρ(u_t a u_t†): ψ_t = u_t† ψ.
/// ψ must have unit norm within 1e-10 (DomainError otherwise); unitarity and
/// norm preservation are checked at every t to 1e-10 (NumericalError).
EvolutionTrace evolve(const Hamiltonian& h, const Vector& psi, const TimeGrid& grid,
                      std::optional<Bipartition> parts = std::nullopt);

/// ρ̂_t = u_t† ρ̂ u_t. ρ̂ must be Hermitian with unit trace.
EvolutionTrace evolve(const Hamiltonian& h, const Matrix& rho, const TimeGrid& grid);

struct TheoremOptions {
  std::size_t trials = 50;
  TimeGrid grid = TimeGrid::standard();
  std::uint64_t seed = 42;
  std::size_t jobs = 1;
  double ratio_tolerance = 1e-9;
  double block_tolerance = 1e-10;
  /// Counterexample mode: entropy above this counts as entangled.
  double entropy_threshold = 0.1;
};

struct TheoremTrial {
  std::size_t trial = 0;
  std::size_t support = 0;
  /// max over t and x_A of σ₂/σ₁ for |x_A⟩ ⊗ ψ_B.
  double max_schmidt_ratio = 0.0;
  /// max over t and blocks of ‖(1 − Π_x) ρ_t Π_x‖ for the mixture.
  double max_off_block = 0.0;
  double max_norm_drift = 0.0;
  bool pass = false;
};

struct TheoremReport {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::size_t blocks = 0;
  std::size_t grid_points = 0;
  std::uint64_t seed = 0;
  std::vector<TheoremTrial> trials;
  double worst_ratio = 0.0;
  double worst_off_block = 0.0;
  bool pass = true;
};

/// Samples `trials` random Hamiltonians in π₀(ℂ[G_A × G_B]) and checks that
/// pure product states |x_A⟩ ⊗ ψ_B stay Schmidt rank 1 and block mixtures
/// Σ p_x |x⟩⟨x| ⊗ ρ_B^x stay block diagonal at every grid time.
/// Throws PreconditionError unless `a` is totally disconnected.
TheoremReport separability_theorem_check(const Groupoid& a, const Groupoid& b, const TheoremOptions& options);

struct EntanglementTrial {
  std::size_t trial = 0;
  std::size_t support = 0;
  double max_entropy = 0.0;
  /// First grid time with entropy above the threshold.
  std::optional<double> onset;
};

struct EntanglementReport {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::size_t grid_points = 0;
  std::uint64_t seed = 0;
  double threshold = 0.0;
  std::vector<EntanglementTrial> trials;
  std::size_t entangled = 0;
  double max_entropy = 0.0;

  double entangled_fraction() const noexcept {
    return trials.empty() ? 0.0 : static_cast<double>(entangled) / static_cast<double>(trials.size());
  }
};

/// Evolves random product states ψ_A ⊗ ψ_B under random Hamiltonians in
/// π₀(ℂ[G_A × G_B]) and records the entropy reached. No precondition.
EntanglementReport entanglement_search(const Groupoid& a, const Groupoid& b, const TheoremOptions& options);

/// Deterministic per-trial generator seeded from (seed, trial).
Rng trial_rng(std::uint64_t seed, std::size_t trial);

}  // namespace gq
