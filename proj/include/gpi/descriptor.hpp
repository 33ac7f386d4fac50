#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gpi/algebra.hpp"
#include "gpi/identities.hpp"
#include "json.hpp"

namespace gpi {

// JSON description of an algebra:
//   {"kind": "grassmann", "group": [2], "N": 6, "grading": {"deg": "kstar", "k": 1}}
//   {"kind": "grassmann", "group": [2], "grading": {"values": [1,0,1]}}
//   {"kind": "grassmann", "group": []}                      ungraded E
//   {"kind": "matrix", "n": 2, "group": [2], "grading": {"targets": [0,1]}}
//   {"kind": "block_triangular", "shape": [2,2], "group": [2], "grading": {"targets": [0,1,0,1]}}
//   {"kind": "matrix_over", "shape": [1,1], "entries": {...}}
// A missing "N" means the truncation is chosen per signature.
struct AlgebraDescriptor {
  std::string kind;
  GroupSpec group;
  int n = 0;
  int N = 0;
  GrassmannSpec grassmann;
  std::vector<GroupElement> targets;
  BlockShape shape;
  std::shared_ptr<const AlgebraDescriptor> entries;

  bool is_grassmann_based() const;
  // The Grassmann data at the bottom of a grassmann/matrix_over chain.
  const AlgebraDescriptor& innermost() const;
};

AlgebraDescriptor descriptor_from_json(const nlohmann::json& j);
nlohmann::json descriptor_to_json(const AlgebraDescriptor& d);
// Sorted keys, two-space indent, trailing newline.
std::string dump_descriptor(const AlgebraDescriptor& d);

// Accepts inline JSON, a path to a JSON file, or a short form:
//   field | grassmann[:N=6,deg=natural|infty|kstar,k=1] | matrix:targets=0;1
// List values are separated by ';' or ':'.
AlgebraDescriptor parse_descriptor_text(const std::string& text);

// Same algebra over block shape `shape` with the entry-degree grading.
AlgebraDescriptor matrix_over(const AlgebraDescriptor& entries, const BlockShape& shape);

// Evaluation target for a signature of total degree `n`; Grassmann-based
// descriptors without N get default_truncation(spec, n) + extra_generators.
EvalTarget make_eval_target(const AlgebraDescriptor& d, std::size_t n, int extra_generators = 0);

StructureConstantAlgebra build_algebra(const AlgebraDescriptor& d);

}  // namespace gpi
