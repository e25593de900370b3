#include "onset/sim/contingency.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "onset/util/rng.hpp"

namespace onset::sim {
namespace {

void check_k(const grid::GridCase& c, int k) {
  if (k < 2 || static_cast<std::size_t>(k) > c.branch_count()) {
    throw std::invalid_argument("contingency order k=" + std::to_string(k) +
                                " must satisfy 2 <= k <= branch count (" +
                                std::to_string(c.branch_count()) + ")");
  }
}

// Advances an ascending index combination; false once exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < m - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::uint64_t binomial(std::uint64_t m, std::uint64_t k) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (m - k + i) / i stays exact because r * (m-k+i) is divisible by i.
    std::uint64_t num = m - k + i;
    std::uint64_t g = std::gcd(r, i);
    std::uint64_t rr = r / g, ii = i / g;
    std::uint64_t nn = num / ii;
    if (rr != 0 && nn > std::numeric_limits<std::uint64_t>::max() / rr) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r = rr * nn;
  }
  return r;
}

std::vector<ContingencySpec> enumerate_contingencies(const grid::GridCase& c, int k) {
  check_k(c, k);
  const auto ids = c.sorted_branch_ids();
  const std::size_t m = ids.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);

  std::vector<ContingencySpec> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(binomial(m, k), 1u << 20)));
  do {
    ContingencySpec spec;
    for (auto i : idx) spec.removed_branch_ids.push_back(ids[i]);
    out.push_back(std::move(spec));
  } while (next_combination(idx, m));
  return out;
}

std::vector<ContingencySpec> sample_contingencies(const grid::GridCase& c, int k, std::size_t n,
                                                  std::uint64_t seed) {
  check_k(c, k);
  const auto ids = c.sorted_branch_ids();
  const std::uint64_t total = binomial(ids.size(), static_cast<std::uint64_t>(k));
  if (n > total) {
    throw std::invalid_argument("requested " + std::to_string(n) + " contingencies but only " +
                                std::to_string(total) + " exist for k=" + std::to_string(k));
  }

  Rng rng = make_rng(seed);
  std::vector<ContingencySpec> out;
  out.reserve(n);

  if (n * 2 > total) {
    // Dense request: shuffle the full enumeration and keep a prefix.
    auto all = enumerate_contingencies(c, k);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(n);
    return all;
  }

  std::set<std::vector<int>> seen;
  std::vector<std::size_t> pool(ids.size());
  while (out.size() < n) {
    std::iota(pool.begin(), pool.end(), 0);
    ContingencySpec spec;
    for (int j = 0; j < k; ++j) {
      std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(j), pool.size() - 1);
      std::swap(pool[static_cast<std::size_t>(j)], pool[pick(rng)]);
      spec.removed_branch_ids.push_back(ids[pool[static_cast<std::size_t>(j)]]);
    }
    std::sort(spec.removed_branch_ids.begin(), spec.removed_branch_ids.end());
    if (seen.insert(spec.removed_branch_ids).second) out.push_back(std::move(spec));
  }
  return out;
}

void validate(const ContingencySpec& spec, const grid::GridCase& c) {
  if (spec.k() < 2) throw std::invalid_argument("contingency must remove at least 2 branches");
  std::set<int> uniq(spec.removed_branch_ids.begin(), spec.removed_branch_ids.end());
  if (uniq.size() != spec.removed_branch_ids.size()) {
    throw std::invalid_argument("contingency lists a branch twice");
  }
  for (int id : spec.removed_branch_ids) c.branch_index(id);
}

}  // namespace onset::sim
