#include "grouplab/milnor.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "grouplab/errors.hpp"
#include "grouplab/structure.hpp"

namespace grouplab {

int MilnorSpec::weight() const {
  int w = 0;
  for (int m : coeffs) w += m < 0 ? -m : m;
  return w;
}

bool MilnorSpec::valid() const {
  if (coeffs.size() < 2) return false;
  int g = 0;
  for (int m : coeffs) g = std::gcd(g, m < 0 ? -m : m);
  return g == 1;
}

std::string MilnorSpec::str() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < coeffs.size(); ++i) out << (i ? "," : "") << coeffs[i];
  out << ")";
  return out.str();
}

MilnorSpec MilnorSpec::parse(const std::string& text) {
  MilnorSpec s;
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') t += c;
  std::istringstream in(t);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      s.coeffs.push_back(std::stoi(item));
    } catch (const std::exception&) {
      raise(ErrorKind::parse_error, "bad milnor coefficient: " + item);
    }
  }
  if (!s.valid()) raise(ErrorKind::invalid_parameter, "invalid milnor spec " + s.str());
  return s;
}

void PolynomialVec::trim() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

PolynomialVec PolynomialVec::operator*(const PolynomialVec& o) const {
  PolynomialVec out;
  if (coeffs.empty() || o.coeffs.empty()) return out;
  out.coeffs.assign(coeffs.size() + o.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs.size(); ++j) out.coeffs[i + j] += coeffs[i] * o.coeffs[j];
  out.trim();
  return out;
}

std::string PolynomialVec::str() const {
  if (coeffs.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const long long c = coeffs[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    const long long a = c < 0 ? -c : c;
    if (a != 1 || i == 0) out << a;
    if (i > 0) {
      if (a != 1) out << "*";
      out << "X";
      if (i > 1) out << "^" << i;
    }
    first = false;
  }
  return first ? "0" : out.str();
}

PolynomialVec milnor_polynomial(const MilnorSpec& spec) {
  PolynomialVec p;
  p.coeffs.assign(spec.coeffs.begin(), spec.coeffs.end());
  p.trim();
  return p;
}

PolynomialVec poly_product(const std::vector<PolynomialVec>& ps) {
  PolynomialVec acc;
  acc.coeffs = {1};
  for (const auto& p : ps) acc = acc * p;
  return acc;
}

MilnorContext milnor_context(const GroupPtr& g, std::uint32_t a, std::uint32_t b) {
  g->require_tabled("milnor_value");
  MilnorContext ctx;
  ctx.g = g;
  ctx.a = a;
  ctx.b = b;
  ctx.ord_b = g->element_order(b);
  ctx.conjugates.reserve(ctx.ord_b);
  std::uint32_t bi = 0;  // b^i
  for (std::uint32_t i = 0; i < ctx.ord_b; ++i) {
    ctx.conjugates.push_back(g->mul(g->mul(bi, a), g->inv(bi)));
    bi = g->mul(bi, b);
  }
  ctx.h = closure(g, ctx.conjugates);
  ctx.h_derived = derived_subgroup(ctx.h);
  return ctx;
}

bool milnor_value(const MilnorContext& ctx, const MilnorSpec& spec) {
  const auto& g = *ctx.g;
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < spec.coeffs.size(); ++i) {
    const std::uint32_t c = ctx.conjugates[i % ctx.ord_b];
    acc = g.mul(acc, g.pow(c, spec.coeffs[i]));
  }
  return ctx.h_derived.contains(acc);
}

bool milnor_value(const GroupPtr& g, std::uint32_t a, std::uint32_t b, const MilnorSpec& spec) {
  if (!spec.valid()) raise(ErrorKind::invalid_parameter, "invalid milnor spec " + spec.str());
  return milnor_value(milnor_context(g, a, b), spec);
}

namespace {

/// Enumerates coefficient vectors of fixed length and weight in lexicographic
/// order (each m_i runs -w..w ascending); calls f on each complete vector,
/// stopping when f returns true.
bool enumerate_vectors(std::vector<int>& v, std::size_t pos, int remaining,
                       const std::function<bool(const std::vector<int>&)>& f) {
  if (pos + 1 == v.size()) {
    for (int m : {-remaining, remaining}) {
      v[pos] = m;
      if (f(v)) return true;
      if (remaining == 0) break;  // -0 == 0
    }
    return false;
  }
  for (int m = -remaining; m <= remaining; ++m) {
    v[pos] = m;
    const int used = m < 0 ? -m : m;
    if (enumerate_vectors(v, pos + 1, remaining - used, f)) return true;
  }
  return false;
}

}  // namespace

std::optional<MilnorSpec> milnor_search(const MilnorContext& ctx, int max_degree,
                                        int max_weight) {
  if (max_degree < 1 || max_weight < 1)
    raise(ErrorKind::invalid_parameter, "milnor_search needs positive bounds");
  std::optional<MilnorSpec> found;
  for (int degree = 1; degree <= max_degree && !found; ++degree) {
    for (int weight = 1; weight <= max_weight && !found; ++weight) {
      std::vector<int> v(static_cast<std::size_t>(degree) + 1, 0);
      enumerate_vectors(v, 0, weight, [&](const std::vector<int>& cand) {
        if (degree > 1 && cand.back() == 0) return false;  // seen at lower degree
        MilnorSpec s{cand};
        if (!s.valid()) return false;
        if (!milnor_value(ctx, s)) return false;
        found = std::move(s);
        return true;
      });
    }
  }
  return found;
}

std::optional<MilnorSpec> milnor_search(const GroupPtr& g, std::uint32_t a, std::uint32_t b,
                                        int max_degree, int max_weight) {
  return milnor_search(milnor_context(g, a, b), max_degree, max_weight);
}

LocallyMilnorResult locally_milnor(const GroupPtr& g, int max_degree, int max_weight,
                                   PairScan scan, Exec exec) {
  g->require_tabled("locally_milnor");
  const std::uint32_t n = g->order();
  std::vector<std::uint32_t> firsts;
  if (scan == PairScan::class_reps) {
    firsts = g->class_reps();
  } else {
    firsts.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) firsts[i] = i;
  }

  const std::int64_t total = static_cast<std::int64_t>(firsts.size()) * n;
  std::vector<std::uint8_t> failed(static_cast<std::size_t>(total), 0);
  parallel_for(exec, total, [&](std::int64_t i) {
    const std::uint32_t a = firsts[static_cast<std::size_t>(i) / n];
    const auto b = static_cast<std::uint32_t>(i % n);
    if (!milnor_search(g, a, b, max_degree, max_weight)) failed[static_cast<std::size_t>(i)] = 1;
  });

  LocallyMilnorResult out;
  out.pairs_scanned = static_cast<std::uint64_t>(total);
  for (std::int64_t i = 0; i < total; ++i)
    if (failed[static_cast<std::size_t>(i)])
      out.failing_pairs.emplace_back(firsts[static_cast<std::size_t>(i) / n],
                                     static_cast<std::uint32_t>(i % n));
  out.holds = out.failing_pairs.empty();
  return out;
}

}  // namespace grouplab
