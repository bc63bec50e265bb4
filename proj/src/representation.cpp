#include "gq/representation.hpp"

namespace gq {

std::string_view to_string(Rep rep) {
  return rep == Rep::LeftRegular ? "left-regular" : "fundamental";
}

Rep parse_rep(std::string_view text) {
  if (text == "left-regular") return Rep::LeftRegular;
  if (text == "fundamental") return Rep::Fundamental;
  throw DomainError("unknown representation '" + std::string(text) + "'");
}

Operator left_regular(const AlgebraElement& a, const Groupoid& g) {
  check_element(a, g);
  const auto n = static_cast<Eigen::Index>(g.size());
  Operator op{Rep::LeftRegular, Matrix::Zero(n, n)};
  for (const auto& [alpha, c] : a.coefficients()) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const TransitionId gamma{j};
      if (auto ag = g.compose(alpha, gamma))
        op.matrix(static_cast<Eigen::Index>(ag->index), static_cast<Eigen::Index>(j)) += c;
    }
  }
  return op;
}

Operator fundamental(const AlgebraElement& a, const Groupoid& g) {
  check_element(a, g);
  const auto n = static_cast<Eigen::Index>(g.object_count());
  Operator op{Rep::Fundamental, Matrix::Zero(n, n)};
  for (const auto& [alpha, c] : a.coefficients())
    op.matrix(static_cast<Eigen::Index>(g.target(alpha).index), static_cast<Eigen::Index>(g.source(alpha).index)) += c;
  return op;
}

Operator represent(Rep rep, const AlgebraElement& a, const Groupoid& g) {
  return rep == Rep::LeftRegular ? left_regular(a, g) : fundamental(a, g);
}

std::size_t rep_dimension(Rep rep, const Groupoid& g) {
  return rep == Rep::LeftRegular ? g.size() : g.object_count();
}

}  // namespace gq
