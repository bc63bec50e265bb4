#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gq/core.hpp"
#include "gq/representation.hpp"

namespace gq {

inline constexpr double kPropositionTolerance = 1e-9;
inline constexpr double kMeetStepTolerance = 1e-12;
inline constexpr int kMeetMaxIterations = 500;

/// Residuals ‖P† − P‖ and ‖P² − P‖. Each is the spectral norm, or its
/// Frobenius upper bound when that bound is already below tolerance.
struct PropositionResiduals {
  double self_adjoint = 0.0;
  double idempotent = 0.0;

  double max() const noexcept { return self_adjoint > idempotent ? self_adjoint : idempotent; }
};

PropositionResiduals proposition_residuals(const Matrix& m, double tol = kPropositionTolerance);

class NotAProposition : public DomainError {
 public:
  explicit NotAProposition(PropositionResiduals r);
  const PropositionResiduals& residuals() const noexcept { return residuals_; }

 private:
  PropositionResiduals residuals_;
};

/// A certified self-adjoint idempotent operator.
class Proposition {
 public:
  /// Throws NotAProposition when either residual exceeds `tol`.
  static Proposition certify(Operator op, double tol = kPropositionTolerance);
  static Proposition zero(Rep rep, std::size_t dim);
  static Proposition identity(Rep rep, std::size_t dim);

  const Operator& op() const noexcept { return op_; }
  const Matrix& matrix() const noexcept { return op_.matrix; }
  Rep rep() const noexcept { return op_.rep; }
  std::size_t dim() const noexcept { return op_.dim(); }
  const PropositionResiduals& residuals() const noexcept { return residuals_; }

  /// P' = 1 − P. Applying it twice returns the original matrix bit for bit.
  Proposition complement() const;

 private:
  Proposition(Operator op, Matrix complement, PropositionResiduals r)
      : op_(std::move(op)), complement_(std::move(complement)), residuals_(r) {}

  Operator op_;
  Matrix complement_;
  PropositionResiduals residuals_;
};

/// Certified proposition, or nullopt with the residuals written to `rejected`.
std::optional<Proposition> is_proposition(const Operator& op, PropositionResiduals* rejected = nullptr);

/// P ⊆ Q ⇔ PQ = P within `tol`. Throws DomainError on mismatched dims.
bool leq(const Proposition& p, const Proposition& q, double tol = kPropositionTolerance);

struct MeetResult {
  Proposition meet;
  int iterations = 0;
  double last_step = 0.0;
};

/// P ∩ Q as the limit of the powers of PQP. The powers are evaluated in the
/// eigenbasis of PQP with the spectrum clamped to [0, 1]; each iteration
/// squares the current power until successive iterates differ by at most
/// kMeetStepTolerance. Throws NumericalError after kMeetMaxIterations.
MeetResult meet_with_trace(const Proposition& p, const Proposition& q);
Proposition meet(const Proposition& p, const Proposition& q);

/// Same limit from the unsymmetrized sequence (PQ)ⁿ, one factor per
/// iteration. Cross-check only; slow when P and Q are nearly aligned.
MeetResult meet_unsymmetrized(const Proposition& p, const Proposition& q, int max_iterations = 20000,
                              double step_tol = kMeetStepTolerance);

Proposition complement(const Proposition& p);

/// P ∪ Q := (P' ∩ Q')'.
Proposition join(const Proposition& p, const Proposition& q);

struct NamedProposition {
  std::string name;
  Proposition prop;
};

struct LawViolation {
  std::string law;
  std::vector<std::size_t> operands;
  double residual = 0.0;
};

struct LatticeReport {
  std::size_t propositions = 0;
  std::size_t pairs_tested = 0;
  std::size_t triples_tested = 0;
  std::vector<LawViolation> order_violations;
  std::vector<LawViolation> modularity_violations;
  std::vector<LawViolation> distributivity_violations;

  bool is_boolean() const noexcept {
    return order_violations.empty() && modularity_violations.empty() && distributivity_violations.empty();
  }
};

struct LatticeCheckOptions {
  /// A law counts as violated when the operator-norm gap exceeds this.
  double law_tolerance = 1e-8;
  /// Stop collecting distributivity witnesses after this many.
  std::size_t max_witnesses = 64;
};

/// Order laws on all pairs/triples, weak modularity on all pairs, both
/// distributive laws on all triples (P, {Q, R}).
LatticeReport check_boolean(const std::vector<NamedProposition>& props, const LatticeCheckOptions& options = {});

}  // namespace gq
