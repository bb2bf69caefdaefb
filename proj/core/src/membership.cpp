#include "sigcond/membership.hpp"

#include <algorithm>

#include "sigcond/errors.hpp"

namespace sigcond {

MembershipVector::MembershipVector(const LocalNeighborhood& domain,
                                   const NodeSet& seeds_global)
    : domain_(&domain),
      values_(domain.size(), 0.0),
      seed_(domain.size(), 0) {
  for (int s : seeds_global) {
    int local = domain.local_id(s);
    if (local < 0) throw validation_error("seed outside neighborhood");
    seed_[local] = 1;
    values_[local] = 1.0;
  }
}

void MembershipVector::set(int local, double v) { values_[local] = v; }

std::vector<int> MembershipVector::support() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (values_[i] > 0.0) out.push_back(i);
  }
  return out;
}

NodeSet MembershipVector::thresholded(double tau) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (values_[i] >= tau) out.push_back(domain_->global_id(i));
  }
  return NodeSet(std::move(out));
}

double clamp_to_box(double v, double floor_value) {
  return std::max(floor_value, std::min(1.0, v));
}

void project(MembershipVector& c) {
  for (int i = 0; i < c.size(); ++i) {
    c.set(i, clamp_to_box(c.value(i), c.floor(i)));
  }
}

double edge_weight_membership(const MembershipVector& x, const MembershipVector& y) {
  if (&x.domain() != &y.domain())
    throw validation_error("membership vectors over different neighborhoods");
  const LocalNeighborhood& domain = x.domain();
  const Graph& g = domain.graph();
  double total = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    double xi = x.value(i);
    if (xi == 0.0) continue;
    double row = 0.0;
    for (int j : g.neighbors(domain.global_id(i))) {
      int local = domain.local_id(j);
      if (local >= 0) row += y.value(local);
    }
    total += xi * row;
  }
  return total;
}

}  // namespace sigcond
