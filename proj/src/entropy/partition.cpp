#include <algorithm>
#include <cmath>
#include <set>

#include "detail.hpp"

namespace entroscope::detail {

void check_partition(const Partition& p, const SystemLayout& layout) {
  std::set<std::string> seen;
  for (const auto* group : {&p.a, &p.b})
    for (const auto& label : *group) {
      if (!layout.contains(label)) throw InvalidArgument("partition names unknown subsystem '" + label + "'");
      if (!seen.insert(label).second) throw InvalidArgument("subsystem '" + label + "' appears twice in partition");
    }
  if (seen.size() != layout.size()) throw InvalidArgument("partition does not cover every subsystem");
  if (p.a.empty()) throw InvalidArgument("partition has an empty A part");
}

SystemLayout grouped_layout(const SystemLayout& layout, const Partition& p) {
  SystemLayout a = layout.restricted_to(p.a);
  if (p.b.empty()) return a;
  return a.concat(layout.restricted_to(p.b));
}

Matrix identity_tensor(const Matrix& m_b, const SystemLayout& layout, const Partition& p) {
  SystemLayout grouped = grouped_layout(layout, p);
  Index da = layout.restricted_to(p.a).total_dim();
  Matrix grouped_op = p.b.empty() ? Matrix(Matrix::Identity(da, da) * m_b(0, 0)) : kron(Matrix::Identity(da, da), m_b);
  std::vector<std::string> labels = grouped.labels();
  if (labels == layout.labels()) return grouped_op;
  return permute_systems(grouped_op, grouped, layout.labels());
}

bool is_diagonal(const Matrix& m) {
  double scale = m.cwiseAbs().maxCoeff();
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j && std::abs(m(i, j)) > 1e-15 * scale) return false;
  return true;
}

void check_epsilon(double eps, bool allow_zero) {
  bool ok = std::isfinite(eps) && eps <= 1.0 && (allow_zero ? eps >= 0.0 : eps > 0.0);
  if (!ok) throw InvalidArgument("epsilon out of range: " + std::to_string(eps));
}

}  // namespace entroscope::detail
