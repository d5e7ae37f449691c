#include "simap/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "simap/rng.hpp"

namespace simap {

IndexSample::IndexSample(std::vector<Index> indices, Index domain_size)
    : indices_(std::move(indices)), domain_size_(domain_size) {
    validate();
}

IndexSample::IndexSample(std::vector<Index> indices, std::shared_ptr<const IndexSample> parent)
    : indices_(std::move(indices)),
      domain_size_(parent ? parent->domain_size() : 0),
      parent_(std::move(parent)) {
    validate();
    if (parent_) {
        for (Index i : indices_) {
            if (!parent_->contains(i))
                throw ParameterError("IndexSample: index " + std::to_string(i) +
                                     " not contained in parent sample");
        }
    }
}

void IndexSample::validate() const {
    std::unordered_set<Index> seen;
    seen.reserve(indices_.size());
    for (Index i : indices_) {
        if (i < 0 || i >= domain_size_)
            throw ParameterError("IndexSample: index " + std::to_string(i) +
                                 " out of range [0, " + std::to_string(domain_size_) + ")");
        if (!seen.insert(i).second)
            throw ParameterError("IndexSample: duplicate index " + std::to_string(i));
    }
}

bool IndexSample::contains(Index i) const { return position_of(i) >= 0; }

Index IndexSample::position_of(Index i) const {
    auto it = std::find(indices_.begin(), indices_.end(), i);
    return it == indices_.end() ? -1 : static_cast<Index>(it - indices_.begin());
}

namespace {

// Partial Fisher-Yates: the k-th output depends only on (n, seed), never on
// how many more draws follow. This gives the prefix property documented in
// the header.
std::vector<Index> draw_without_replacement(Index n, Index s, std::uint64_t seed) {
    Random rng(seed, Stream::landmarks);
    std::vector<Index> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), Index{0});
    std::vector<Index> out(static_cast<std::size_t>(s));
    for (Index k = 0; k < s; ++k) {
        const Index j = k + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - k)));
        std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(j)]);
        out[static_cast<std::size_t>(k)] = pool[static_cast<std::size_t>(k)];
    }
    return out;
}

}  // namespace

IndexSample sample_uniform(Index n, Index s, std::uint64_t seed) {
    if (n < 1) throw ParameterError("sample_uniform: n must be positive");
    if (s < 1 || s > n)
        throw ParameterError("sample_uniform: need 1 <= s <= n, got s=" + std::to_string(s) +
                             ", n=" + std::to_string(n));
    return IndexSample(draw_without_replacement(n, s, seed), n);
}

std::pair<IndexSample, IndexSample> sample_nested(Index n, Index s1, Index s2,
                                                  std::uint64_t seed) {
    if (n < 1) throw ParameterError("sample_nested: n must be positive");
    if (s1 < 1 || s1 > s2 || s2 > n)
        throw ParameterError("sample_nested: need 1 <= s1 <= s2 <= n, got s1=" +
                             std::to_string(s1) + ", s2=" + std::to_string(s2) +
                             ", n=" + std::to_string(n));
    std::vector<Index> outer = draw_without_replacement(n, s2, seed);
    auto s2_sample = std::make_shared<IndexSample>(outer, n);
    std::vector<Index> inner(outer.begin(), outer.begin() + s1);
    IndexSample s1_sample(std::move(inner), s2_sample);
    return {std::move(s1_sample), IndexSample(*s2_sample)};
}

}  // namespace simap
