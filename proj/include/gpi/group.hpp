#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace gpi {

// An element of a finite abelian group Z_{n1} x ... x Z_{nr}, stored as
// reduced residues.
struct GroupElement {
  std::vector<int> residues;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

// Direct product of cyclic groups. The trivial group is the empty product
// (or any product of order-1 factors).
class GroupSpec {
 public:
  GroupSpec() : GroupSpec(std::vector<int>{}) {}
  explicit GroupSpec(std::vector<int> cyclic_orders);

  static GroupSpec trivial() { return GroupSpec{}; }
  static GroupSpec z2() { return GroupSpec{{2}}; }

  const std::vector<int>& cyclic_orders() const { return orders_; }
  std::size_t order() const;
  bool is_trivial() const { return order() == 1; }

  // True when `g` has the right shape and reduced residues.
  bool conforms(const GroupElement& g) const;
  void check(const GroupElement& g) const;  // throws MalformedElement

  GroupElement identity() const;
  GroupElement op(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;

  // All elements in mixed-radix order, last factor fastest.
  std::vector<GroupElement> elements() const;
  std::size_t index_of(const GroupElement& g) const;
  const GroupElement& element_at(std::size_t index) const;

  // Builds an element from unreduced residues.
  GroupElement make(std::vector<int> residues) const;

  bool operator==(const GroupSpec&) const = default;

 private:
  std::vector<int> orders_;
  std::vector<GroupElement> elements_;
};

GroupElement group_op(const GroupElement& a, const GroupElement& b,
                      const GroupSpec& spec);

// "(1,2)" style; "()" for the empty tuple.
std::string to_string(const GroupElement& g);

}  // namespace gpi
