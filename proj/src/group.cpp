#include "gpi/group.hpp"

#include <algorithm>

#include "gpi/errors.hpp"

namespace gpi {

GroupSpec::GroupSpec(std::vector<int> cyclic_orders)
    : orders_(std::move(cyclic_orders)) {
  for (int o : orders_) {
    if (o < 1) throw MalformedElement("cyclic order must be >= 1");
  }
  // Mixed-radix enumeration, last factor fastest.
  std::size_t total = 1;
  for (int o : orders_) total *= static_cast<std::size_t>(o);
  elements_.reserve(total);
  for (std::size_t index = 0; index < total; ++index) {
    GroupElement g;
    g.residues.resize(orders_.size());
    std::size_t rest = index;
    for (std::size_t i = orders_.size(); i-- > 0;) {
      g.residues[i] = static_cast<int>(rest % orders_[i]);
      rest /= orders_[i];
    }
    elements_.push_back(std::move(g));
  }
  if (orders_.empty()) elements_.assign(1, GroupElement{});
}

std::size_t GroupSpec::order() const {
  std::size_t total = 1;
  for (int o : orders_) total *= static_cast<std::size_t>(o);
  return total;
}

bool GroupSpec::conforms(const GroupElement& g) const {
  if (g.residues.size() != orders_.size()) return false;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (g.residues[i] < 0 || g.residues[i] >= orders_[i]) return false;
  }
  return true;
}

void GroupSpec::check(const GroupElement& g) const {
  if (!conforms(g)) {
    throw MalformedElement("group element " + to_string(g) +
                           " does not conform to the group");
  }
}

GroupElement GroupSpec::identity() const {
  return GroupElement{std::vector<int>(orders_.size(), 0)};
}

GroupElement GroupSpec::op(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  GroupElement r;
  r.residues.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    r.residues[i] = (a.residues[i] + b.residues[i]) % orders_[i];
  }
  return r;
}

GroupElement GroupSpec::inverse(const GroupElement& a) const {
  check(a);
  GroupElement r;
  r.residues.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    r.residues[i] = (orders_[i] - a.residues[i]) % orders_[i];
  }
  return r;
}

std::vector<GroupElement> GroupSpec::elements() const { return elements_; }

std::size_t GroupSpec::index_of(const GroupElement& g) const {
  check(g);
  std::size_t index = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    index = index * orders_[i] + static_cast<std::size_t>(g.residues[i]);
  }
  return index;
}

const GroupElement& GroupSpec::element_at(std::size_t index) const {
  return elements_.at(index);
}

GroupElement GroupSpec::make(std::vector<int> residues) const {
  if (residues.size() != orders_.size()) {
    throw MalformedElement("expected " + std::to_string(orders_.size()) +
                           " residues, got " + std::to_string(residues.size()));
  }
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    residues[i] = ((residues[i] % orders_[i]) + orders_[i]) % orders_[i];
  }
  return GroupElement{std::move(residues)};
}

GroupElement group_op(const GroupElement& a, const GroupElement& b,
                      const GroupSpec& spec) {
  return spec.op(a, b);
}

std::string to_string(const GroupElement& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.residues.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g.residues[i]);
  }
  return s + ")";
}

}  // namespace gpi
