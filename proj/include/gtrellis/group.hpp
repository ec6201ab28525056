#pragma once

// Finite groups given by Cayley tables, with the identity fixed at index 0.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gtrellis {

using Element = std::uint32_t;

/// Sorted, duplicate-free list of element indices.
using ElementSet = std::vector<Element>;

enum class ErrorKind {
  Malformed,
  NotClosed,
  NotAssociative,
  NoIdentityAtZero,
  NoInverse,
  NotASubgroup,
  NotNormal,
  TooLarge,
  TooMany,
  NotAGroup,
  NotSubdirect,
  NotControllable,
  IndexOutOfRange,
  DiagonalIdentityFailed,
  InputNotInX0,
  InvalidPath,
  Inconsistent,
  MembershipViolation,
  FactorizationFailed,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class FiniteGroup {
 public:
  /// Validates every group axiom; throws Error naming the violating indices.
  static FiniteGroup from_table(const std::vector<std::vector<std::int64_t>>& table);

  /// Builds from a product functor without re-running the O(n^3) associativity sweep.
  /// Only for tables that are groups by construction (products, quotients, induced subgroups).
  static FiniteGroup from_trusted(std::size_t order, const std::function<Element(Element, Element)>& mul);

  std::size_t order() const noexcept { return order_; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  static constexpr Element identity() noexcept { return 0; }

  Element conj(Element g, Element h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
  std::size_t element_order(Element a) const;
  bool is_abelian() const;
  std::vector<std::vector<Element>> table() const;

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  FiniteGroup(std::size_t order, std::vector<Element> table);

  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
};

/// Free-function spelling of FiniteGroup::from_table.
FiniteGroup validate_group(const std::vector<std::vector<std::int64_t>>& table);

class Subgroup {
 public:
  Subgroup() : elements_{0} {}

  /// Throws NotASubgroup unless `elements` is closed and contains the identity.
  static Subgroup from_elements(const FiniteGroup& g, ElementSet elements);
  static Subgroup whole(const FiniteGroup& g);

  const ElementSet& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(Element e) const;
  bool is_trivial() const noexcept { return elements_.size() == 1; }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;

 private:
  explicit Subgroup(ElementSet elements) : elements_(std::move(elements)) {}
  friend Subgroup subgroup_closure(const FiniteGroup&, std::span<const Element>);
  friend Subgroup intersect(const Subgroup&, const Subgroup&);

  ElementSet elements_;
};

ElementSet make_set(std::vector<Element> elements);
bool is_subset(std::span<const Element> a, std::span<const Element> b);
ElementSet set_intersection(std::span<const Element> a, std::span<const Element> b);

bool is_closed(const FiniteGroup& g, std::span<const Element> set);
Subgroup subgroup_closure(const FiniteGroup& g, std::span<const Element> seed);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

bool is_normal(const FiniteGroup& g, const Subgroup& h);
/// Validating overload: throws NotASubgroup if `h` is not closed.
bool is_normal(const FiniteGroup& g, std::span<const Element> h);
/// Smallest normal subgroup of g containing h.
Subgroup normal_closure(const FiniteGroup& g, const Subgroup& h);

ElementSet complex_product(const FiniteGroup& g, std::span<const Element> h1, std::span<const Element> h2);
/// Complex product of two subgroups that is known to be a subgroup; throws NotASubgroup otherwise.
Subgroup subgroup_product(const FiniteGroup& g, const Subgroup& h1, const Subgroup& h2);

enum class Side { Left, Right };

/// Picks one representative from a coset (elements sorted ascending).
using RepresentativeChooser = std::function<Element(std::span<const Element> coset)>;

struct CosetPartition {
  Side side = Side::Left;
  std::vector<ElementSet> cosets;       // ordered by smallest member; cosets[0] is the subgroup
  std::vector<Element> representatives;  // representatives[0] == 0
  std::vector<std::size_t> label_of;     // element -> coset index
};

CosetPartition coset_partition(const FiniteGroup& g, const Subgroup& h, Side side,
                               const RepresentativeChooser& chooser = {});

class QuotientGroup {
 public:
  const FiniteGroup& group() const noexcept { return quotient_; }
  std::size_t order() const noexcept { return quotient_.order(); }
  std::size_t project(Element g) const { return partition_.label_of[g]; }
  const Subgroup& kernel() const noexcept { return kernel_; }
  const CosetPartition& partition() const noexcept { return partition_; }
  Element representative(std::size_t label) const { return partition_.representatives[label]; }

 private:
  friend QuotientGroup quotient(const FiniteGroup&, const Subgroup&, const RepresentativeChooser&);
  QuotientGroup(FiniteGroup q, Subgroup n, CosetPartition p)
      : quotient_(std::move(q)), kernel_(std::move(n)), partition_(std::move(p)) {}

  FiniteGroup quotient_;
  Subgroup kernel_;
  CosetPartition partition_;
};

/// Throws NotNormal if `n` is not normal in `g`.
QuotientGroup quotient(const FiniteGroup& g, const Subgroup& n, const RepresentativeChooser& chooser = {});

/// A subgroup re-indexed as a group in its own right. Index i corresponds to the
/// i-th smallest parent element, so the identity stays at 0.
struct InducedGroup {
  FiniteGroup group;
  ElementSet to_parent;

  Element from_parent(Element parent) const;  // throws MembershipViolation
  ElementSet from_parent(std::span<const Element> parent) const;
};

InducedGroup induced_group(const FiniteGroup& g, const Subgroup& h);

/// Default cap for brute-force isomorphism testing.
inline constexpr std::size_t kIsomorphismOrderCap = 64;

/// Backtracking over generator images; throws TooLarge above `order_cap`.
bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b, std::size_t order_cap = kIsomorphismOrderCap);

/// Greedy generating set: each generator is the smallest element outside the span of the previous ones.
std::vector<Element> generating_set(const FiniteGroup& g);

// Standard small groups.
FiniteGroup trivial_group();
FiniteGroup cyclic_group(std::size_t n);
/// (Z2)^rank with index bit i holding coordinate i.
FiniteGroup elementary_abelian_2(std::size_t rank);
/// Index of (g, h) is g + |G| * h.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
/// Symmetric group on n points, permutations in lexicographic order, product (p*q)(i) = p(q(i)).
FiniteGroup symmetric_group(std::size_t n);

}  // namespace gtrellis
