#pragma once

// Reference implementations used only by tests. They work on plain
// vector<vector<uint8_t>> matrices with per-bit loops and share no code with
// the packed implementation beyond reading bits through BitGrid::get.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "alphamix/iris_template.hpp"
#include "alphamix/population.hpp"

namespace oracle {

using Bits = std::vector<std::vector<std::uint8_t>>;

inline Bits bits_of(const alphamix::BitGrid& g) {
  Bits out(g.rows(), std::vector<std::uint8_t>(g.cols(), 0));
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) out[r][c] = g.get(r, c) ? 1 : 0;
  return out;
}

// out[r][c] = in[r][(c - s) mod cols]
inline Bits rotate(const Bits& in, long s) {
  Bits out = in;
  for (std::size_t r = 0; r < in.size(); ++r) {
    const long n = static_cast<long>(in[r].size());
    for (long c = 0; c < n; ++c) out[r][c] = in[r][((c - s) % n + n) % n];
  }
  return out;
}

struct Score {
  bool comparable = false;
  std::size_t diff = 0;
  std::size_t valid = 0;
  double value() const { return static_cast<double>(diff) / static_cast<double>(valid); }
};

inline Score zero_shift(const Bits& ca, const Bits& ma, const Bits& cb, const Bits& mb) {
  Score s;
  for (std::size_t r = 0; r < ca.size(); ++r) {
    for (std::size_t c = 0; c < ca[r].size(); ++c) {
      if (ma[r][c] && mb[r][c]) {
        ++s.valid;
        if (ca[r][c] != cb[r][c]) ++s.diff;
      }
    }
  }
  s.comparable = s.valid > 0;
  return s;
}

// Minimum over shifts in [-range, range] of zero-shift scores of explicitly
// rotated copies of b. Compared as exact rationals.
inline Score hamming(const alphamix::IrisTemplate& a, const alphamix::IrisTemplate& b,
                     std::size_t range) {
  const Bits ca = bits_of(a.code()), ma = bits_of(a.mask());
  const Bits cb = bits_of(b.code()), mb = bits_of(b.mask());
  Score best;
  for (long s = -static_cast<long>(range); s <= static_cast<long>(range); ++s) {
    const Score cur = zero_shift(ca, ma, rotate(cb, s), rotate(mb, s));
    if (!cur.comparable) continue;
    if (!best.comparable || cur.diff * best.valid < best.diff * cur.valid) best = cur;
  }
  return best;
}

inline bool matches(const alphamix::IrisTemplate& sample, const alphamix::IrisTemplate& probe,
                    double tau, std::size_t range) {
  const Score s = hamming(sample, probe, range);
  return s.comparable && s.value() <= tau;
}

struct Coverage {
  std::size_t samples = 0;
  std::set<std::string> identities;
};

inline Coverage coverage(const alphamix::IrisTemplate& t, const alphamix::Population& p,
                         double tau, const std::set<std::string>& exclude, std::size_t range) {
  Coverage cov;
  for (const auto& s : p) {
    if (exclude.count(s.identity_id())) continue;
    if (matches(s, t, tau, range)) {
      ++cov.samples;
      cov.identities.insert(s.identity_id());
    }
  }
  return cov;
}

// Cross-identity false matches of sample i.
inline std::size_t false_matches(const alphamix::Population& p, std::size_t i, double tau,
                                 std::size_t range) {
  std::size_t n = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j].identity_id() == p[i].identity_id()) continue;
    if (matches(p[i], p[j], tau, range)) ++n;
  }
  return n;
}

// Naive fold of one operator over plain bit matrices.
inline Bits fold(alphamix::MixOp op, const std::vector<Bits>& xs) {
  Bits acc = xs.front();
  for (std::size_t k = 1; k < xs.size(); ++k) {
    for (std::size_t r = 0; r < acc.size(); ++r) {
      for (std::size_t c = 0; c < acc[r].size(); ++c) {
        const auto x = acc[r][c], y = xs[k][r][c];
        switch (op) {
          case alphamix::MixOp::And: acc[r][c] = x & y; break;
          case alphamix::MixOp::Or: acc[r][c] = x | y; break;
          case alphamix::MixOp::Xor: acc[r][c] = x ^ y; break;
        }
      }
    }
  }
  return acc;
}

// Training reward (sample matches over all of p) of mixing `members`,
// computed with the naive fold and naive matcher.
inline std::size_t reward_of(const alphamix::Population& p, const std::vector<std::size_t>& members,
                             alphamix::MixOp op, alphamix::MaskPolicy policy, double tau,
                             std::size_t range) {
  std::vector<Bits> codes, masks;
  for (std::size_t m : members) {
    codes.push_back(bits_of(p[m].code()));
    masks.push_back(bits_of(p[m].mask()));
  }
  const Bits code = fold(op, codes);
  const Bits mask = fold(policy == alphamix::MaskPolicy::SameOperator ? op : alphamix::MixOp::And,
                         masks);
  std::size_t n = 0;
  for (const auto& s : p) {
    const Bits cs = bits_of(s.code()), ms = bits_of(s.mask());
    Score best;
    for (long sh = -static_cast<long>(range); sh <= static_cast<long>(range); ++sh) {
      const Score cur = zero_shift(cs, ms, rotate(code, sh), rotate(mask, sh));
      if (!cur.comparable) continue;
      if (!best.comparable || cur.diff * best.valid < best.diff * cur.valid) best = cur;
    }
    if (best.comparable && best.value() <= tau) ++n;
  }
  return n;
}

// Best reward over all nonempty subsets of size <= max_size.
inline std::size_t exhaustive_best(const alphamix::Population& p, std::size_t max_size,
                                   alphamix::MixOp op, alphamix::MaskPolicy policy, double tau,
                                   std::size_t range) {
  std::size_t best = 0;
  const std::size_t n = p.size();
  for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
    if (static_cast<std::size_t>(__builtin_popcount(subset)) > max_size) continue;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (subset & (1u << i)) members.push_back(i);
    best = std::max(best, reward_of(p, members, op, policy, tau, range));
  }
  return best;
}

}  // namespace oracle
