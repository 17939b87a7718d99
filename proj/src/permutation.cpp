#include "grouplab/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "grouplab/errors.hpp"

namespace grouplab {

Permutation::Permutation(std::uint32_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), 0u);
}

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::uint32_t v : images_) {
    if (v >= images_.size() || seen[v])
      raise(ErrorKind::invalid_parameter, "image array is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::from_cycles(std::uint32_t degree,
                                     const std::vector<std::vector<std::uint32_t>>& cycles) {
  std::vector<std::uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const std::uint32_t from = cyc[i];
      const std::uint32_t to = cyc[(i + 1) % cyc.size()];
      if (from >= degree || to >= degree)
        raise(ErrorKind::invalid_parameter, "cycle point out of range");
      img[from] = to;
    }
  }
  return Permutation(std::move(img));
}

Permutation Permutation::parse_cycles(std::uint32_t degree, std::string_view text) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') raise(ErrorKind::parse_error, "expected '(' in cycle notation");
    ++i;
    std::vector<std::uint32_t> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        raise(ErrorKind::parse_error, "expected point index in cycle notation");
      std::uint32_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + static_cast<std::uint32_t>(text[i++] - '0');
      cyc.push_back(v);
      skip_ws();
    }
    if (i >= text.size()) raise(ErrorKind::parse_error, "unterminated cycle");
    ++i;  // ')'
    if (cyc.size() > 1) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return from_cycles(degree, cycles);
}

Permutation Permutation::compose(const Permutation& q) const {
  std::vector<std::uint32_t> img(images_.size());
  for (std::uint32_t i = 0; i < img.size(); ++i) img[i] = images_[q.images_[i]];
  Permutation out;
  out.images_ = std::move(img);
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> img(images_.size());
  for (std::uint32_t i = 0; i < img.size(); ++i) img[images_[i]] = i;
  Permutation out;
  out.images_ = std::move(img);
  return out;
}

bool Permutation::is_identity() const {
  for (std::uint32_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

bool Permutation::is_even() const {
  // parity via cycle decomposition
  std::vector<bool> seen(images_.size(), false);
  std::uint32_t transpositions = 0;
  for (std::uint32_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint32_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = images_[j];
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

std::string Permutation::cycle_string() const {
  std::vector<bool> seen(images_.size(), false);
  std::ostringstream out;
  bool any = false;
  for (std::uint32_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) {
      seen[i] = true;
      continue;
    }
    out << '(';
    std::uint32_t j = i;
    bool first = true;
    while (!seen[j]) {
      if (!first) out << ' ';
      out << j;
      seen[j] = true;
      j = images_[j];
      first = false;
    }
    out << ')';
    any = true;
  }
  return any ? out.str() : "()";
}

std::size_t Permutation::hash() const {
  // FNV-1a over the image words; stable across runs.
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint32_t v : images_) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace grouplab
