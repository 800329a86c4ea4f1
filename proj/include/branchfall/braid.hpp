#pragma once

// Braid words in the Artin generators: exponent sums, closure permutation,
// torus braids, quasipositive composition and the slice-Bennequin bound.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace branchfall {

/// Strand count plus letters +i / -i for sigma_i / sigma_i^{-1}, 1 <= i < strands.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  /// Parses "s1 s2^-1 s1^3"; the empty string is the trivial word.
  static BraidWord parse(std::string_view text, int strands);
  std::string str() const;

  void validate() const;
  std::size_t length() const { return letters.size(); }
  BraidWord inverse() const;
  BraidWord free_reduced() const;
  BraidWord power(int k) const;

  friend BraidWord operator*(const BraidWord& a, const BraidWord& b);
  friend bool operator==(const BraidWord& a, const BraidWord& b) = default;
};

int exponent_sum(const BraidWord& w);

struct ClosureInfo {
  std::vector<int> permutation;  // strand starting at position p ends at permutation[p]
  int components = 0;
};

ClosureInfo permutation_and_components(const BraidWord& w);

/// (sigma_1 ... sigma_{p-1})^q on p strands.
BraidWord torus_braid(int p, int q);

struct Band {
  BraidWord conjugator;
  int generator = 1;
};

/// prod gamma_k sigma_{i_k} gamma_k^{-1}
BraidWord qp_compose(const std::vector<Band>& bands, int strands);

/// Splits a word into consecutive blocks gamma sigma_i gamma^{-1} when it
/// literally has that shape; nullopt otherwise. No braid relations are used.
std::optional<std::vector<Band>> qp_bands(const BraidWord& w);

/// Upper bound n - e(w) for the slice Euler characteristic of the closure.
int slice_bennequin(const BraidWord& w);

}  // namespace branchfall
