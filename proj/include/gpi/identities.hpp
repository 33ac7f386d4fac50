#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gpi/algebra.hpp"
#include "gpi/linalg.hpp"
#include "gpi/polynomial.hpp"

namespace gpi {

// UT(d_1..d_m; E_N) with the entry-degree grading; shape (1) is E_N itself.
struct GrassmannMatrixTarget {
  GrassmannSpec spec;
  BlockShape shape{{1}};

  std::string describe() const;
};

using AlgebraPtr = std::shared_ptr<const StructureConstantAlgebra>;
using EvalTarget = std::variant<AlgebraPtr, GrassmannMatrixTarget>;

std::string describe(const EvalTarget& target);

// Multilinear identities at one signature, in permutation-monomial
// coordinates (ambient dimension n!).
struct IdentitySubspace {
  MultidegreeSignature signature;
  Subspace space{1};

  std::size_t dim() const { return space.dim(); }
};

IdentitySubspace identities_by_evaluation(const StructureConstantAlgebra& a,
                                          const MultidegreeSignature& sig,
                                          const ResourceGuard& guard = {});
IdentitySubspace identities_by_evaluation(const GrassmannMatrixTarget& t,
                                          const MultidegreeSignature& sig,
                                          const ResourceGuard& guard = {});
IdentitySubspace identities_by_evaluation(const EvalTarget& t, const MultidegreeSignature& sig,
                                          const ResourceGuard& guard = {});

// Evaluation rows built from disjoint-support monomial tuples. With
// `require_saturated`, throws when N realizes fewer parity/degree patterns
// than a larger truncation would.
std::vector<SparseRow> grassmann_fast_rows(const GrassmannMatrixTarget& t,
                                           const MultidegreeSignature& sig,
                                           bool require_saturated = true);

// Smallest N for which every pattern realizable in E is realizable in E_N.
int saturating_generators(const GrassmannSpec& spec, const MultidegreeSignature& sig);

// 2n + k for k_star, 2n otherwise.
int default_truncation(const GrassmannSpec& spec, std::size_t total_degree);

struct TIdealPresentation {
  GroupSpec group;
  std::vector<NcPolynomial> generators;

  // Throws MalformedElement when a generator is not multilinear in its own
  // variables.
  void add(const NcPolynomial& f);
  // Adds f once per assignment of group elements to its variables.
  void add_all_gradings(const NcPolynomial& f);
};

// Generators of T(E) for the gradings whose T-ideal has a known finite
// generating set; `graded = false` gives the ungraded T(E).
TIdealPresentation grassmann_presentation(const GrassmannSpec& spec, bool graded);

IdentitySubspace identities_by_consequences(const TIdealPresentation& t,
                                            const MultidegreeSignature& sig,
                                            const ResourceGuard& guard = {});

// Anything that can produce multilinear components on demand. Results are
// cached per signature.
class ComponentProvider {
 public:
  virtual ~ComponentProvider() = default;

  const Subspace& component(const MultidegreeSignature& sig) const;
  virtual std::string describe() const = 0;

 protected:
  virtual Subspace compute(const MultidegreeSignature& sig) const = 0;

 private:
  mutable std::mutex mu_;
  mutable std::map<MultidegreeSignature, std::shared_ptr<const Subspace>> cache_;
};

using ProviderPtr = std::shared_ptr<const ComponentProvider>;

ProviderPtr evaluation_provider(EvalTarget target, ResourceGuard guard = {});
ProviderPtr consequence_provider(TIdealPresentation t, ResourceGuard guard = {});
// Components of the ideal product T1 T2.
ProviderPtr product_provider(ProviderPtr t1, ProviderPtr t2, ResourceGuard guard = {});

IdentitySubspace tideal_product(const ComponentProvider& t1, const ComponentProvider& t2,
                                const MultidegreeSignature& sig, const ResourceGuard& guard = {});
// Same span computed from u0 f u1 g u2 with f, g on disjoint variable sets.
IdentitySubspace tideal_product_bordered(const ComponentProvider& t1, const ComponentProvider& t2,
                                         const MultidegreeSignature& sig,
                                         const ResourceGuard& guard = {});

enum class FactoringRelation { equal, product_strictly_inside };
std::string to_string(FactoringRelation r);

struct FactoringVerdict {
  MultidegreeSignature signature;
  std::size_t dim_R = 0;
  std::size_t dim_product = 0;
  FactoringRelation relation = FactoringRelation::equal;
  std::optional<NcPolynomial> witness;
};

// Throws InternalInconsistency when the product is not inside T(R).
FactoringVerdict check_factoring(const ComponentProvider& r, const std::vector<ProviderPtr>& factors,
                                 const MultidegreeSignature& sig,
                                 const ResourceGuard& guard = {});

struct StabilizationReport {
  std::vector<int> n_values;
  std::vector<std::size_t> dims;
  bool stabilized = false;  // the last two dims agree
};

StabilizationReport stabilization_scan(const std::function<EvalTarget(int)>& family,
                                       const MultidegreeSignature& sig,
                                       const std::vector<int>& n_values,
                                       const ResourceGuard& guard = {});

// Throws SignatureMismatch when f is not multilinear at s.signature.
bool membership(const NcPolynomial& f, const IdentitySubspace& s);

// Truncated-quotient generic model: entries stay in F<X>, and an entry is
// zero modulo T(A) when each multihomogeneous component lies in the
// provider's component. Exact for multilinear f.
struct QuotientModelResult {
  std::vector<NcPolynomial> entries;  // row-major n x n
  int size = 0;
  int degree_bound = 0;
  bool is_identity = false;
};

QuotientModelResult model_eval_quotient(const NcPolynomial& f, const BlockShape& shape,
                                        const GroupSpec& group, const ComponentProvider& provider);

// True when p vanishes modulo the provider's T-ideal; p must be
// multilinear in every multihomogeneous component.
bool vanishes_modulo(const NcPolynomial& p, const ComponentProvider& provider);

}  // namespace gpi
