#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rieszprod/bigint.hpp"
#include "rieszprod/rational.hpp"

namespace rieszprod::sequences {

// One block {p_l, q_{1,l} p_l, ..., q_{r_l,l} p_l} of a block-structured
// sequence. Multipliers start at 1 and increase strictly. Index range is
// 1-based and inclusive.
struct Block {
  BigInt base;
  std::vector<BigInt> multipliers;
  std::size_t start = 0;
  std::size_t end = 0;
};

// Strictly increasing sequence of positive integers with generator
// provenance and optional block structure. Immutable after construction.
class IndexedSequence {
 public:
  IndexedSequence(std::string family, std::vector<BigInt> terms);

  const std::string& family() const { return family_; }
  const std::map<std::string, std::string>& params() const { return params_; }
  std::size_t size() const { return terms_.size(); }
  const BigInt& term(std::size_t k) const;  // 1-based
  const std::vector<BigInt>& terms() const { return terms_; }

  bool has_blocks() const { return !blocks_.empty(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  bool has_markers() const { return !markers_.empty(); }
  // markers()[i] is M_{i+1}; for block families M_1 = 0 and block l covers
  // indices M_{l-1}+1 .. M_l.
  const std::vector<std::size_t>& markers() const { return markers_; }
  // Base values p_l; may extend one entry past the last generated block.
  const std::vector<BigInt>& bases() const { return bases_; }

  void set_param(const std::string& key, const std::string& value) {
    params_[key] = value;
  }
  void set_blocks(std::vector<Block> blocks);
  void set_markers(std::vector<std::size_t> markers) {
    markers_ = std::move(markers);
  }
  void set_bases(std::vector<BigInt> bases) { bases_ = std::move(bases); }

 private:
  std::string family_;
  std::vector<BigInt> terms_;
  std::map<std::string, std::string> params_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> markers_;
  std::vector<BigInt> bases_;
};

// n_1 = 1, n_{k+1} = k n_k + 1.
IndexedSequence erdos_taylor(std::size_t count);

// Base recurrence p_1 = 1, p_{l+1} = l^2 (l^2 + 1) / 2 * p_l; terms are the
// blocks {p_l, 2 p_l, ..., l^2 p_l} for l = 2..block_count. Every multiple
// of p_l from p_l up to p_{l+1} is a subset sum of block l, hence the name.
// Bases carry p_1..p_{block_count+1}; markers carry M_1 = 0 .. M_L.
IndexedSequence complete_sumset_sequence(std::size_t block_count);

// Blocks {p_l, 2 p_l, ..., r_l p_l} with p_1 = 1 and
// p_{l+1} = [r_l^2 / gamma_l] p_l + 1. The square-ratio series of this
// family diverges, which is what the scans downstream demonstrate.
// Requires 0 < gamma_l < 1 for l >= 2 and r_l >= 2.
IndexedSequence divergent_block_sequence(const std::vector<Rational>& gammas,
                                         const std::vector<BigInt>& rs);

// Default parameter tables for divergent_block_sequence: gamma_l =
// 1/ceil(sqrt(l)) (tends to zero, squares not summable) and
// r_l = 2 + floor(log2 l) (grows slowly enough).
std::vector<Rational> default_gamma_table(std::size_t blocks);
std::vector<BigInt> default_r_table(std::size_t blocks);

// Explicit block construction; validates p_{l+1} > q_{r_l,l} p_l.
IndexedSequence block_sequence(const std::vector<BigInt>& bases,
                               const std::vector<std::vector<BigInt>>& mults);

// ratio^1, ratio^2, ..., ratio^count.
IndexedSequence geometric_sequence(const BigInt& ratio, std::size_t count);

// base^(1^2), base^(2^2), ..., base^(count^2).
IndexedSequence square_exponent_sequence(const BigInt& base,
                                         std::size_t count);

IndexedSequence custom_sequence(std::vector<BigInt> terms);

// Cumulative exact partial sums of (n_k / n_{k+1})^exponent for k = 1..K,
// optionally restricted to indices in S.
std::vector<Rational> ratio_series(const IndexedSequence& seq, int exponent,
                                   std::size_t K,
                                   const std::set<std::size_t>* S = nullptr);

// S = { k : n_k does not divide n_{k+1} }.
std::set<std::size_t> divisibility_profile(const IndexedSequence& seq);

struct FactorBlock {
  std::size_t start = 0;
  std::size_t end = 0;
  BigInt base;                // p_l = n_start
  std::vector<BigInt> s;      // s_{0,l} = 1, s_{j,l} = n_{start+j}/n_{start+j-1}
  std::vector<BigInt> q;      // cumulative products q_{j,l}
  BigInt q_sum;               // q_l
  bool doubling_bound_ok = false;  // q_l <= 2 q_{r_l,l}
};

struct FactorChain {
  std::set<std::size_t> S;
  std::vector<FactorBlock> blocks;
  bool doubling_bound_ok = false;
};

// Splits the sequence at the indices in S and factors each run through
// consecutive exact divisions. Indices k not in S must satisfy
// n_k | n_{k+1}; otherwise a ValidationError names the offending index.
FactorChain factor_chain(const IndexedSequence& seq,
                         const std::set<std::size_t>& S);

}  // namespace rieszprod::sequences
