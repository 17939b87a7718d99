#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grouplab/parallel.hpp"
#include "grouplab/subgroup.hpp"

namespace grouplab {

/// Coefficient vector (m_0, ..., m_l), l >= 1, of the relation
///   prod_{i=0..l} y^i x^{m_i} y^-i  in  H'_{x,y},
/// with gcd of the nonzero |m_i| equal to 1. The i = 0 term is included so
/// that abelian groups satisfy (-1, 1); see milnor_search for the
/// enumeration order.
struct MilnorSpec {
  std::vector<int> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  int weight() const;
  bool valid() const;  // degree >= 1, some m_i != 0, gcd of nonzero = 1
  std::string str() const;  // "(m_0,m_1,...)"
  static MilnorSpec parse(const std::string& text);
};

/// Integer polynomial, coefficient index = power of X, trailing zeros trimmed.
struct PolynomialVec {
  std::vector<long long> coeffs;

  void trim();
  PolynomialVec operator*(const PolynomialVec& o) const;
  std::string str() const;  // "1 - 2*X + X^2"; zero prints "0"
};

/// q_t(X) = sum m_i X^i.
PolynomialVec milnor_polynomial(const MilnorSpec& spec);
PolynomialVec poly_product(const std::vector<PolynomialVec>& ps);

/// Per-pair state: H = <b^i a b^-i>, its derived subgroup, and the conjugate
/// list; reused across the many candidate vectors a search tries.
struct MilnorContext {
  GroupPtr g;
  std::uint32_t a = 0, b = 0;
  std::uint32_t ord_b = 1;
  std::vector<std::uint32_t> conjugates;  // b^i a b^-i for i = 0..ord_b-1
  SubgroupMask h;
  SubgroupMask h_derived;
};
MilnorContext milnor_context(const GroupPtr& g, std::uint32_t a, std::uint32_t b);

/// True iff prod (b^i a b^-i)^{m_i} lies in H'. Equal to the membership of
/// the spec's interleaved product because the two differ by an element of H'.
bool milnor_value(const MilnorContext& ctx, const MilnorSpec& spec);
bool milnor_value(const GroupPtr& g, std::uint32_t a, std::uint32_t b, const MilnorSpec& spec);

/// First satisfied spec in (degree, weight, lexicographic-by-coefficients)
/// order, coefficients compared as integers; nullopt when the bounds are
/// exhausted. Vectors whose top coefficient is zero at degree > 1 are skipped
/// as duplicates of a lower degree.
std::optional<MilnorSpec> milnor_search(const GroupPtr& g, std::uint32_t a, std::uint32_t b,
                                        int max_degree, int max_weight);
std::optional<MilnorSpec> milnor_search(const MilnorContext& ctx, int max_degree, int max_weight);

enum class PairScan { class_reps, all_pairs };

struct LocallyMilnorResult {
  bool holds = false;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> failing_pairs;
  std::uint64_t pairs_scanned = 0;
};

/// milnor_search over every pair. class_reps scans a over conjugacy
/// representatives only (sound: H_{a^g, b^g} = (H_{a,b})^g); all_pairs is the
/// exhaustive variant the acceptance checks use.
LocallyMilnorResult locally_milnor(const GroupPtr& g, int max_degree, int max_weight,
                                   PairScan scan = PairScan::class_reps,
                                   Exec exec = Exec::parallel);

}  // namespace grouplab
