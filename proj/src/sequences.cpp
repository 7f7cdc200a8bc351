#include "rieszprod/sequences.hpp"

#include <utility>

#include "rieszprod/errors.hpp"

namespace rieszprod::sequences {

IndexedSequence::IndexedSequence(std::string family, std::vector<BigInt> terms)
    : family_(std::move(family)), terms_(std::move(terms)) {
  if (terms_.empty()) throw ValidationError("sequence must not be empty");
  if (terms_.front().signum() <= 0)
    throw ValidationError("sequence terms must be positive");
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (terms_[i] <= terms_[i - 1])
      throw ValidationError("sequence not strictly increasing at index " +
                            std::to_string(i + 1));
  }
}

const BigInt& IndexedSequence::term(std::size_t k) const {
  if (k == 0 || k > terms_.size())
    throw ValidationError("sequence index " + std::to_string(k) +
                          " out of range 1.." + std::to_string(terms_.size()));
  return terms_[k - 1];
}

void IndexedSequence::set_blocks(std::vector<Block> blocks) {
  std::size_t expect = 1;
  for (const Block& b : blocks) {
    if (b.start != expect)
      throw ValidationError("blocks must tile the index range contiguously");
    if (b.end < b.start || b.end > terms_.size())
      throw ValidationError("block index range out of bounds");
    if (b.multipliers.empty() || b.multipliers.front() != BigInt(1))
      throw ValidationError("block multipliers must start at 1");
    for (std::size_t i = 1; i < b.multipliers.size(); ++i) {
      if (b.multipliers[i] <= b.multipliers[i - 1])
        throw ValidationError("block multipliers must increase strictly");
    }
    if (b.multipliers.size() != b.end - b.start + 1)
      throw ValidationError("block multiplier count does not match its span");
    expect = b.end + 1;
  }
  if (expect != terms_.size() + 1)
    throw ValidationError("blocks do not cover the whole sequence");
  blocks_ = std::move(blocks);
}

IndexedSequence erdos_taylor(std::size_t count) {
  if (count < 1) throw ValidationError("need at least one term");
  std::vector<BigInt> terms;
  terms.reserve(count);
  BigInt n(1);
  terms.push_back(n);
  for (std::size_t k = 1; k < count; ++k) {
    n = BigInt(static_cast<long long>(k)) * n + BigInt(1);
    terms.push_back(n);
  }
  IndexedSequence seq("erdos-taylor", std::move(terms));
  seq.set_param("count", std::to_string(count));
  return seq;
}

IndexedSequence complete_sumset_sequence(std::size_t block_count) {
  if (block_count < 2) throw ValidationError("need at least two blocks");
  std::vector<BigInt> bases;  // p_1 .. p_{L+1}
  bases.push_back(BigInt(1));
  for (std::size_t l = 1; l <= block_count; ++l) {
    long long l2 = static_cast<long long>(l) * static_cast<long long>(l);
    BigInt factor = BigInt(l2) * BigInt(l2 + 1) / BigInt(2);
    bases.push_back(factor * bases.back());
  }
  std::vector<BigInt> terms;
  std::vector<Block> blocks;
  std::vector<std::size_t> markers;
  markers.push_back(0);  // M_1
  for (std::size_t l = 2; l <= block_count; ++l) {
    Block block;
    block.base = bases[l - 1];
    block.start = terms.size() + 1;
    std::size_t l2 = l * l;
    for (std::size_t j = 1; j <= l2; ++j) {
      block.multipliers.push_back(BigInt(static_cast<long long>(j)));
      terms.push_back(BigInt(static_cast<long long>(j)) * bases[l - 1]);
    }
    block.end = terms.size();
    blocks.push_back(std::move(block));
    markers.push_back(terms.size());  // M_l
  }
  IndexedSequence seq("complete-sumset", std::move(terms));
  seq.set_param("blocks", std::to_string(block_count));
  seq.set_blocks(std::move(blocks));
  seq.set_markers(std::move(markers));
  seq.set_bases(std::move(bases));
  return seq;
}

IndexedSequence divergent_block_sequence(const std::vector<Rational>& gammas,
                                         const std::vector<BigInt>& rs) {
  if (gammas.size() != rs.size() || gammas.empty())
    throw ValidationError("need matching nonempty gamma and r tables");
  const std::size_t L = rs.size();
  for (std::size_t l = 1; l <= L; ++l) {
    const Rational& g = gammas[l - 1];
    if (g.signum() <= 0) throw ValidationError("gamma must be positive");
    if (l >= 2 && g >= Rational(1))
      throw ValidationError("gamma_" + std::to_string(l) +
                            " must lie in (0,1)");
    if (rs[l - 1] < BigInt(2))
      throw ValidationError("r_" + std::to_string(l) + " must be >= 2");
  }
  std::vector<BigInt> bases;
  bases.push_back(BigInt(1));
  std::vector<BigInt> terms;
  std::vector<Block> blocks;
  for (std::size_t l = 1; l <= L; ++l) {
    const BigInt& p = bases[l - 1];
    const BigInt& r = rs[l - 1];
    Block block;
    block.base = p;
    block.start = terms.size() + 1;
    for (BigInt j(1); j <= r; j += BigInt(1)) {
      block.multipliers.push_back(j);
      terms.push_back(j * p);
    }
    block.end = terms.size();
    blocks.push_back(std::move(block));
    // p_{l+1} = [r^2 / gamma] p + 1.
    Rational ratio = Rational(r * r) / gammas[l - 1];
    BigInt next = ratio.trunc() * p + BigInt(1);
    if (next <= r * p)
      throw InvariantViolation("block overlap: p_{l+1} <= r_l p_l at l = " +
                               std::to_string(l));
    bases.push_back(next);
  }
  IndexedSequence seq("divergent-blocks", std::move(terms));
  seq.set_param("blocks", std::to_string(L));
  seq.set_blocks(std::move(blocks));
  seq.set_bases(std::move(bases));
  return seq;
}

std::vector<Rational> default_gamma_table(std::size_t blocks) {
  std::vector<Rational> out;
  for (std::size_t l = 1; l <= blocks; ++l) {
    BigInt root = BigInt::isqrt(BigInt(static_cast<long long>(l)));
    if (root * root < BigInt(static_cast<long long>(l))) root += BigInt(1);
    if (root < BigInt(2)) root = BigInt(2);
    out.push_back(Rational(BigInt(1), root));
  }
  return out;
}

std::vector<BigInt> default_r_table(std::size_t blocks) {
  std::vector<BigInt> out;
  for (std::size_t l = 1; l <= blocks; ++l) {
    std::size_t log2l = 0;
    std::size_t v = l;
    while (v >>= 1) ++log2l;
    out.push_back(BigInt(static_cast<long long>(2 + log2l)));
  }
  return out;
}

IndexedSequence block_sequence(const std::vector<BigInt>& bases,
                               const std::vector<std::vector<BigInt>>& mults) {
  if (bases.size() != mults.size() || bases.empty())
    throw ValidationError("need matching nonempty base and multiplier lists");
  std::vector<BigInt> terms;
  std::vector<Block> blocks;
  for (std::size_t l = 0; l < bases.size(); ++l) {
    if (mults[l].empty() || mults[l].front() != BigInt(1))
      throw ValidationError("multiplier list " + std::to_string(l + 1) +
                            " must start at 1");
    Block block;
    block.base = bases[l];
    block.start = terms.size() + 1;
    for (const BigInt& q : mults[l]) {
      block.multipliers.push_back(q);
      terms.push_back(q * bases[l]);
    }
    block.end = terms.size();
    if (l + 1 < bases.size()) {
      const BigInt& top = terms.back();
      if (bases[l + 1] <= top)
        throw ValidationError(
            "block overlap at l = " + std::to_string(l + 1) +
            ": next base " + bases[l + 1].to_decimal() +
            " <= " + top.to_decimal());
    }
    blocks.push_back(std::move(block));
  }
  IndexedSequence seq("blocks", std::move(terms));
  seq.set_blocks(std::move(blocks));
  seq.set_bases(bases);
  return seq;
}

IndexedSequence geometric_sequence(const BigInt& ratio, std::size_t count) {
  if (ratio < BigInt(2)) throw ValidationError("ratio must be >= 2");
  std::vector<BigInt> terms;
  BigInt v(1);
  for (std::size_t k = 1; k <= count; ++k) {
    v *= ratio;
    terms.push_back(v);
  }
  IndexedSequence seq("geometric", std::move(terms));
  seq.set_param("ratio", ratio.to_decimal());
  seq.set_param("count", std::to_string(count));
  return seq;
}

IndexedSequence square_exponent_sequence(const BigInt& base,
                                         std::size_t count) {
  if (base < BigInt(2)) throw ValidationError("base must be >= 2");
  std::vector<BigInt> terms;
  for (std::size_t k = 1; k <= count; ++k) {
    terms.push_back(base.pow(static_cast<std::uint64_t>(k) * k));
  }
  IndexedSequence seq("pow2sq", std::move(terms));
  seq.set_param("base", base.to_decimal());
  seq.set_param("count", std::to_string(count));
  return seq;
}

IndexedSequence custom_sequence(std::vector<BigInt> terms) {
  return IndexedSequence("custom", std::move(terms));
}

std::vector<Rational> ratio_series(const IndexedSequence& seq, int exponent,
                                   std::size_t K,
                                   const std::set<std::size_t>* S) {
  if (exponent != 1 && exponent != 2)
    throw ValidationError("exponent must be 1 or 2");
  if (K >= seq.size())
    throw ValidationError("ratio_series horizon must leave a successor term");
  std::vector<Rational> sums;
  Rational acc(0);
  for (std::size_t k = 1; k <= K; ++k) {
    if (!S || S->count(k)) {
      Rational rho(seq.term(k), seq.term(k + 1));
      acc += exponent == 2 ? rho * rho : rho;
    }
    sums.push_back(acc);
  }
  return sums;
}

std::set<std::size_t> divisibility_profile(const IndexedSequence& seq) {
  std::set<std::size_t> S;
  for (std::size_t k = 1; k + 1 <= seq.size(); ++k) {
    if (!(seq.term(k + 1) % seq.term(k)).is_zero()) S.insert(k);
  }
  return S;
}

FactorChain factor_chain(const IndexedSequence& seq,
                         const std::set<std::size_t>& S) {
  FactorChain chain;
  chain.S = S;
  chain.doubling_bound_ok = true;
  std::size_t start = 1;
  auto close_block = [&](std::size_t end) {
    FactorBlock block;
    block.start = start;
    block.end = end;
    block.base = seq.term(start);
    block.s.push_back(BigInt(1));
    block.q.push_back(BigInt(1));
    for (std::size_t k = start + 1; k <= end; ++k) {
      BigInt quot, rem;
      BigInt::divmod(seq.term(k), seq.term(k - 1), quot, rem);
      if (!rem.is_zero())
        throw ValidationError("divisibility fails off S at index " +
                              std::to_string(k - 1));
      block.s.push_back(quot);
      block.q.push_back(block.q.back() * quot);
    }
    block.q_sum = BigInt(0);
    for (const BigInt& qv : block.q) block.q_sum += qv;
    block.doubling_bound_ok = block.q_sum <= block.q.back() + block.q.back();
    if (!block.doubling_bound_ok) chain.doubling_bound_ok = false;
    chain.blocks.push_back(std::move(block));
    start = end + 1;
  };
  for (std::size_t k = 1; k <= seq.size(); ++k) {
    if (S.count(k) || k == seq.size()) close_block(k);
  }
  return chain;
}

}  // namespace rieszprod::sequences
