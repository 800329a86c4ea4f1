#include "branchfall/braid.hpp"

#include "branchfall/error.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace branchfall {

BraidWord BraidWord::parse(std::string_view text, int strands) {
  BraidWord w;
  w.strands = strands;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    if (tok[pos] != 's' && tok[pos] != 'S') fail(ErrorKind::input, "braid letter must look like s3 or s3^-1: '" + tok + "'");
    ++pos;
    std::size_t used = 0;
    int gen = 0, exp = 1;
    try {
      gen = std::stoi(tok.substr(pos), &used);
    } catch (const std::exception&) {
      fail(ErrorKind::input, "bad generator index in '" + tok + "'");
    }
    pos += used;
    if (pos < tok.size()) {
      if (tok[pos] != '^') fail(ErrorKind::input, "bad braid letter '" + tok + "'");
      ++pos;
      try {
        exp = std::stoi(tok.substr(pos), &used);
      } catch (const std::exception&) {
        fail(ErrorKind::input, "bad exponent in '" + tok + "'");
      }
      if (pos + used != tok.size()) fail(ErrorKind::input, "trailing characters in '" + tok + "'");
    }
    if (gen <= 0 || tok.substr(1, 1) == "-") fail(ErrorKind::input, "generator index must be positive: '" + tok + "'");
    for (int k = 0; k < std::abs(exp); ++k) w.letters.push_back(exp > 0 ? gen : -gen);
  }
  w.validate();
  return w;
}

std::string BraidWord::str() const {
  std::string out;
  for (int l : letters) {
    if (!out.empty()) out += ' ';
    out += "s" + std::to_string(std::abs(l));
    if (l < 0) out += "^-1";
  }
  return out;
}

void BraidWord::validate() const {
  if (strands < 1) fail(ErrorKind::input, "braid needs at least one strand");
  for (int l : letters)
    if (l == 0 || std::abs(l) >= strands)
      fail(ErrorKind::input, "generator s" + std::to_string(std::abs(l)) + " invalid on " + std::to_string(strands) +
                                 " strands");
}

BraidWord BraidWord::inverse() const {
  BraidWord w{strands, {}};
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(-*it);
  return w;
}

BraidWord BraidWord::free_reduced() const {
  BraidWord w{strands, {}};
  for (int l : letters) {
    if (!w.letters.empty() && w.letters.back() == -l)
      w.letters.pop_back();
    else
      w.letters.push_back(l);
  }
  return w;
}

BraidWord BraidWord::power(int k) const {
  BraidWord base = k < 0 ? inverse() : *this;
  BraidWord w{strands, {}};
  for (int i = 0; i < std::abs(k); ++i) w.letters.insert(w.letters.end(), base.letters.begin(), base.letters.end());
  return w;
}

BraidWord operator*(const BraidWord& a, const BraidWord& b) {
  if (a.strands != b.strands) fail(ErrorKind::input, "strand counts differ");
  BraidWord w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

int exponent_sum(const BraidWord& w) {
  int e = 0;
  for (int l : w.letters) e += l > 0 ? 1 : -1;
  return e;
}

ClosureInfo permutation_and_components(const BraidWord& w) {
  w.validate();
  const int n = w.strands;
  // at[p] = which starting strand currently sits at position p
  std::vector<int> at(n);
  std::iota(at.begin(), at.end(), 0);
  for (int l : w.letters) {
    int i = std::abs(l) - 1;
    std::swap(at[i], at[i + 1]);
  }
  ClosureInfo info;
  info.permutation.assign(n, 0);
  for (int p = 0; p < n; ++p) info.permutation[at[p]] = p;
  std::vector<bool> seen(n, false);
  for (int p = 0; p < n; ++p) {
    if (seen[p]) continue;
    ++info.components;
    for (int q = p; !seen[q]; q = info.permutation[q]) seen[q] = true;
  }
  return info;
}

BraidWord torus_braid(int p, int q) {
  if (p < 1 || q < 0) fail(ErrorKind::input, "torus braid needs p >= 1, q >= 0");
  BraidWord w{p, {}};
  for (int r = 0; r < q; ++r)
    for (int i = 1; i < p; ++i) w.letters.push_back(i);
  return w;
}

BraidWord qp_compose(const std::vector<Band>& bands, int strands) {
  BraidWord w{strands, {}};
  for (const auto& b : bands) {
    if (b.conjugator.strands != strands) fail(ErrorKind::input, "band conjugator has the wrong strand count");
    BraidWord g{strands, {b.generator}};
    g.validate();
    w = w * b.conjugator * g * b.conjugator.inverse();
  }
  return w;
}

std::optional<std::vector<Band>> qp_bands(const BraidWord& w) {
  const auto& L = w.letters;
  const int n = static_cast<int>(L.size());
  auto block = [&](int a, int b) {  // [a, b) is gamma s gamma^{-1}
    int len = b - a;
    if (len % 2 == 0) return false;
    int mid = a + len / 2;
    if (L[mid] <= 0) return false;
    for (int k = 0; a + k < mid; ++k)
      if (L[a + k] != -L[b - 1 - k]) return false;
    return true;
  };
  // reach[i]: position i can be reached by whole blocks, from[i] the block start
  std::vector<int> from(n + 1, -1);
  from[0] = 0;
  for (int b = 1; b <= n; ++b)
    for (int a = b - 1; a >= 0 && from[b] < 0; a -= 1)
      if (from[a] >= 0 && block(a, b)) from[b] = a;
  if (from[n] < 0) return std::nullopt;
  std::vector<Band> bands;
  for (int b = n; b > 0; b = from[b]) {
    int a = from[b], mid = a + (b - a) / 2;
    bands.insert(bands.begin(),
                 Band{BraidWord{w.strands, std::vector<int>(L.begin() + a, L.begin() + mid)}, L[mid]});
  }
  return bands;
}

int slice_bennequin(const BraidWord& w) { return w.strands - exponent_sum(w); }

}  // namespace branchfall
