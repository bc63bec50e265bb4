#include "gq/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gq/linalg.hpp"
#include "gq/vn_algebra.hpp"

namespace gq {

namespace {

constexpr double kUnitTolerance = 1e-10;

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw DomainError("grid " + std::string(what) + " '" + std::string(text) + "' is not a number");
  return v;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Each index writes its
// own slot, so the result does not depend on scheduling.
template <typename Fn>
void run_indexed(std::size_t n, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Vector random_unit_vector(std::size_t n, Rng& rng) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = standard_complex_normal(rng);
  return v / v.norm();
}

// ‖(1 − Π) ρ Π‖ for the coordinate projection Π onto `block`.
double off_block_norm(const Matrix& rho, const std::vector<std::size_t>& block) {
  const auto n = rho.rows();
  std::vector<bool> inside(static_cast<std::size_t>(n), false);
  for (std::size_t i : block) inside[i] = true;
  Matrix m(n - static_cast<Eigen::Index>(block.size()), static_cast<Eigen::Index>(block.size()));
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (inside[static_cast<std::size_t>(i)]) continue;
    for (std::size_t c = 0; c < block.size(); ++c) m(r, static_cast<Eigen::Index>(c)) = rho(i, static_cast<Eigen::Index>(block[c]));
    ++r;
  }
  if (m.size() == 0) return 0.0;
  return operator_norm(m);
}

}  // namespace

TimeGrid TimeGrid::uniform(double start, double stop, std::size_t points) {
  if (points == 0) throw DomainError("time grid needs at least one point");
  TimeGrid g;
  g.times.reserve(points);
  if (points == 1) {
    g.times.push_back(start);
    return g;
  }
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g.times.push_back(start + step * static_cast<double>(i));
  g.times.back() = stop;
  return g;
}

TimeGrid TimeGrid::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
    throw DomainError("grid must look like start:stop:points, got '" + std::string(text) + "'");
  const double start = parse_double(text.substr(0, first), "start");
  const double stop = parse_double(text.substr(first + 1, second - first - 1), "stop");
  const std::string_view count = text.substr(second + 1);
  std::size_t points = 0;
  const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), points);
  if (ec != std::errc{} || ptr != count.data() + count.size())
    throw DomainError("grid point count '" + std::string(count) + "' is not a nonnegative integer");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw DomainError("grid bounds must be finite");
  return uniform(start, stop, points);
}

std::vector<std::vector<std::size_t>> block_structure(const Groupoid& a, const Groupoid& b) {
  const OrbitDecomposition orbits = orbit_decomposition(a);
  const std::size_t nb = b.object_count();
  std::vector<std::vector<std::size_t>> blocks(orbits.orbits.size());
  std::vector<std::size_t> block_of(a.object_count() * nb);
  for (std::size_t o = 0; o < orbits.orbits.size(); ++o) {
    for (ObjectId xa : orbits.orbits[o]) {
      for (std::size_t xb = 0; xb < nb; ++xb) {
        const std::size_t idx = product_object(b, xa, ObjectId{xb}).index;
        blocks[o].push_back(idx);
        block_of[idx] = o;
      }
    }
    std::sort(blocks[o].begin(), blocks[o].end());
  }

  const Groupoid prod = direct_product(a, b);
  for (std::size_t i = 0; i < prod.size(); ++i) {
    const Matrix m = fundamental(AlgebraElement::basis(TransitionId{i}), prod).matrix;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        if (block_of[static_cast<std::size_t>(r)] != block_of[static_cast<std::size_t>(c)] && std::abs(m(r, c)) > 1e-14)
          throw InternalError("pi0(" + prod.transition_label(TransitionId{i}) + ") leaves its block");
  }
  return blocks;
}

Hamiltonian::Hamiltonian(Operator op) : op_(std::move(op)) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (op_.matrix + op_.matrix.adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("Hamiltonian eigendecomposition failed", 0.0);
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

Hamiltonian Hamiltonian::from_element(const AlgebraElement& h, Rep rep, const Groupoid& g) {
  check_element(h, g);
  const double residual = h.distance(involution(h, g));
  if (residual > 1e-12)
    throw DomainError("Hamiltonian element is not self-adjoint (residual " + std::to_string(residual) + ")");
  return Hamiltonian(represent(rep, h, g));
}

Hamiltonian Hamiltonian::from_matrix(Operator m, const Groupoid& g) {
  const auto n = static_cast<Eigen::Index>(rep_dimension(m.rep, g));
  if (m.matrix.rows() != n || m.matrix.cols() != n) throw DomainError("Hamiltonian has the wrong dimension");
  if (hermiticity_residual(m.matrix) > 1e-12) throw DomainError("Hamiltonian matrix is not Hermitian");
  const Matrix basis = span_basis(representation_basis(m.rep, g).elements);
  const double residual = span_residual(basis, m.matrix);
  if (residual > 1e-8)
    throw DomainError("Hamiltonian is outside the algebra span (residual " + std::to_string(residual) + ")");
  return Hamiltonian(std::move(m));
}

Matrix Hamiltonian::propagator(double t) const {
  const Vector phases = (Complex(0.0, t) * energies_.cast<Complex>()).array().exp();
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

AlgebraElement random_hamiltonian_element(const Groupoid& g, Rng& rng) {
  std::vector<std::size_t> ids(g.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  std::uniform_int_distribution<std::size_t> pick_k(1, g.size());
  const std::size_t k = pick_k(rng);
  // Partial Fisher-Yates: the first k entries are a uniform k-subset.
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, ids.size() - 1);
    std::swap(ids[i], ids[pick(rng)]);
  }
  AlgebraElement a;
  for (std::size_t i = 0; i < k; ++i) a.add(TransitionId{ids[i]}, standard_complex_normal(rng));
  AlgebraElement h = a + involution(a, g);
  h *= 0.5;
  return h;
}

SchmidtDiagnostics schmidt_diagnostics(const Vector& psi, std::size_t dim_a, std::size_t dim_b) {
  if (static_cast<std::size_t>(psi.size()) != dim_a * dim_b)
    throw DomainError("vector length " + std::to_string(psi.size()) + " does not match " + std::to_string(dim_a) +
                      " x " + std::to_string(dim_b));
  const double norm = psi.norm();
  if (norm == 0.0) throw DomainError("Schmidt decomposition of the zero vector");
  Matrix c(static_cast<Eigen::Index>(dim_a), static_cast<Eigen::Index>(dim_b));
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j)
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = psi(static_cast<Eigen::Index>(i * dim_b + j)) / norm;

  SchmidtDiagnostics d;
  d.coefficients = Eigen::JacobiSVD<Matrix>(c).singularValues();
  const double smax = d.coefficients.size() ? d.coefficients(0) : 0.0;
  const double total = d.coefficients.squaredNorm();
  for (Eigen::Index i = 0; i < d.coefficients.size(); ++i) {
    const double s = d.coefficients(i);
    if (s > kRankTolerance * smax) ++d.rank;
    const double p = s * s / total;
    if (p > 0.0) d.entropy -= p * std::log(p);
  }
  d.ratio = d.coefficients.size() > 1 ? d.coefficients(1) / smax : 0.0;
  return d;
}

EvolutionTrace evolve(const Hamiltonian& h, const Vector& psi, const TimeGrid& grid, std::optional<Bipartition> parts) {
  if (static_cast<std::size_t>(psi.size()) != h.dim()) throw DomainError("initial vector has the wrong dimension");
  if (std::abs(psi.norm() - 1.0) > kUnitTolerance) throw DomainError("initial vector is not normalized");
  if (parts && parts->dim_a * parts->dim_b != h.dim()) throw DomainError("bipartition does not match the dimension");

  const Matrix& hm = h.op().matrix;
  const double e0 = psi.dot(hm * psi).real();
  const auto n = static_cast<Eigen::Index>(h.dim());
  EvolutionTrace trace;
  trace.times = grid.times;
  for (double t : grid.times) {
    const Matrix u = h.propagator(t);
    const double unitarity = (u * u.adjoint() - Matrix::Identity(n, n)).norm();
    if (unitarity > kUnitTolerance) throw NumericalError("propagator is not unitary", unitarity);
    Vector v = u.adjoint() * psi;
    const double drift = std::abs(v.norm() - 1.0);
    if (drift > kUnitTolerance) throw NumericalError("evolution lost normalization", drift);
    trace.max_norm_drift = std::max(trace.max_norm_drift, drift);
    trace.max_energy_drift = std::max(trace.max_energy_drift, std::abs(v.dot(hm * v).real() - e0));
    if (parts) {
      const SchmidtDiagnostics d = schmidt_diagnostics(v, parts->dim_a, parts->dim_b);
      trace.schmidt_ranks.push_back(d.rank);
      trace.entropies.push_back(d.entropy);
      trace.schmidt_ratios.push_back(d.ratio);
    }
    trace.vectors.push_back(std::move(v));
  }
  return trace;
}

EvolutionTrace evolve(const Hamiltonian& h, const Matrix& rho, const TimeGrid& grid) {
  const auto n = static_cast<Eigen::Index>(h.dim());
  if (rho.rows() != n || rho.cols() != n) throw DomainError("initial density has the wrong dimension");
  if (hermiticity_residual(rho) > kUnitTolerance) throw DomainError("initial density is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > kUnitTolerance) throw DomainError("initial density does not have unit trace");

  const Matrix& hm = h.op().matrix;
  const double e0 = (rho * hm).trace().real();
  EvolutionTrace trace;
  trace.times = grid.times;
  for (double t : grid.times) {
    const Matrix u = h.propagator(t);
    const double unitarity = (u * u.adjoint() - Matrix::Identity(n, n)).norm();
    if (unitarity > kUnitTolerance) throw NumericalError("propagator is not unitary", unitarity);
    Matrix r = u.adjoint() * rho * u;
    const double drift = std::abs(r.trace() - 1.0);
    if (drift > kUnitTolerance) throw NumericalError("evolution lost unit trace", drift);
    trace.max_norm_drift = std::max(trace.max_norm_drift, drift);
    trace.max_energy_drift = std::max(trace.max_energy_drift, std::abs((r * hm).trace().real() - e0));
    trace.densities.push_back(std::move(r));
  }
  return trace;
}

Rng trial_rng(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(std::uint64_t{trial} >> 32)};
  return Rng(seq);
}

TheoremReport separability_theorem_check(const Groupoid& a, const Groupoid& b, const TheoremOptions& options) {
  if (!is_totally_disconnected(a))
    throw PreconditionError(
        "the first factor is not totally disconnected; the separability theorem does not apply "
        "(use counterexample mode to search for entangling dynamics)");
  const Groupoid prod = direct_product(a, b);
  const auto blocks = block_structure(a, b);
  const std::size_t na = a.object_count();
  const std::size_t nb = b.object_count();

  TheoremReport report;
  report.dim_a = na;
  report.dim_b = nb;
  report.blocks = blocks.size();
  report.grid_points = options.grid.times.size();
  report.seed = options.seed;
  report.trials.resize(options.trials);

  run_indexed(options.trials, options.jobs, [&](std::size_t trial) {
    Rng rng = trial_rng(options.seed, trial);
    const AlgebraElement helt = random_hamiltonian_element(prod, rng);
    const Hamiltonian h = Hamiltonian::from_element(helt, Rep::Fundamental, prod);
    TheoremTrial out;
    out.trial = trial;
    out.support = helt.support_size();

    std::vector<double> weights(na);
    Matrix mixture = Matrix::Zero(static_cast<Eigen::Index>(na * nb), static_cast<Eigen::Index>(na * nb));
    std::exponential_distribution<double> expo(1.0);
    double total = 0.0;
    for (double& w : weights) total += (w = expo(rng));

    for (std::size_t xa = 0; xa < na; ++xa) {
      const Vector psi_b = random_unit_vector(nb, rng);
      Vector psi = Vector::Zero(static_cast<Eigen::Index>(na * nb));
      psi.segment(static_cast<Eigen::Index>(xa * nb), static_cast<Eigen::Index>(nb)) = psi_b;
      const EvolutionTrace pure = evolve(h, psi, options.grid, Bipartition{na, nb});
      for (double r : pure.schmidt_ratios) out.max_schmidt_ratio = std::max(out.max_schmidt_ratio, r);
      out.max_norm_drift = std::max(out.max_norm_drift, pure.max_norm_drift);
      mixture += (weights[xa] / total) * psi * psi.adjoint();
    }

    const EvolutionTrace mixed = evolve(h, mixture, options.grid);
    out.max_norm_drift = std::max(out.max_norm_drift, mixed.max_norm_drift);
    for (const Matrix& rho : mixed.densities)
      for (const auto& block : blocks) out.max_off_block = std::max(out.max_off_block, off_block_norm(rho, block));

    out.pass = out.max_schmidt_ratio <= options.ratio_tolerance && out.max_off_block <= options.block_tolerance;
    report.trials[trial] = out;
  });

  for (const TheoremTrial& t : report.trials) {
    report.worst_ratio = std::max(report.worst_ratio, t.max_schmidt_ratio);
    report.worst_off_block = std::max(report.worst_off_block, t.max_off_block);
    report.pass = report.pass && t.pass;
  }
  return report;
}

EntanglementReport entanglement_search(const Groupoid& a, const Groupoid& b, const TheoremOptions& options) {
  const Groupoid prod = direct_product(a, b);
  const std::size_t na = a.object_count();
  const std::size_t nb = b.object_count();

  EntanglementReport report;
  report.dim_a = na;
  report.dim_b = nb;
  report.grid_points = options.grid.times.size();
  report.seed = options.seed;
  report.threshold = options.entropy_threshold;
  report.trials.resize(options.trials);

  run_indexed(options.trials, options.jobs, [&](std::size_t trial) {
    Rng rng = trial_rng(options.seed, trial);
    const AlgebraElement helt = random_hamiltonian_element(prod, rng);
    const Hamiltonian h = Hamiltonian::from_element(helt, Rep::Fundamental, prod);
    const Vector psi_a = random_unit_vector(na, rng);
    const Vector psi_b = random_unit_vector(nb, rng);
    Vector psi(static_cast<Eigen::Index>(na * nb));
    for (std::size_t i = 0; i < na; ++i)
      psi.segment(static_cast<Eigen::Index>(i * nb), static_cast<Eigen::Index>(nb)) = psi_a(static_cast<Eigen::Index>(i)) * psi_b;
    psi /= psi.norm();

    const EvolutionTrace trace = evolve(h, psi, options.grid, Bipartition{na, nb});
    EntanglementTrial out;
    out.trial = trial;
    out.support = helt.support_size();
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
      out.max_entropy = std::max(out.max_entropy, trace.entropies[i]);
      if (!out.onset && trace.entropies[i] > options.entropy_threshold) out.onset = trace.times[i];
    }
    report.trials[trial] = out;
  });

  for (const EntanglementTrial& t : report.trials) {
    if (t.onset) ++report.entangled;
    report.max_entropy = std::max(report.max_entropy, t.max_entropy);
  }
  return report;
}

}  // namespace gq
