#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "simap/types.hpp"

namespace simap {

/// An ordered set of distinct landmark indices in [0, n). The order is the
/// draw order and is the column/row order of every factor built from the
/// sample. A sample may record the superset it was drawn from (nested pairs).
class IndexSample {
  public:
    IndexSample() = default;
    IndexSample(std::vector<Index> indices, Index domain_size);
    IndexSample(std::vector<Index> indices, std::shared_ptr<const IndexSample> parent);

    Index size() const { return static_cast<Index>(indices_.size()); }
    Index domain_size() const { return domain_size_; }
    const std::vector<Index>& indices() const { return indices_; }
    Index operator[](Index k) const { return indices_[static_cast<std::size_t>(k)]; }
    const IndexSample* parent() const { return parent_.get(); }

    bool contains(Index i) const;
    /// Position of index i within the sample, or -1.
    Index position_of(Index i) const;

  private:
    void validate() const;

    std::vector<Index> indices_;
    Index domain_size_ = 0;
    std::shared_ptr<const IndexSample> parent_;
};

/// s distinct indices drawn uniformly without replacement from [0, n),
/// deterministic in seed. The first k draws depend only on (n, seed), not
/// on s, so samples of increasing size with one seed are nested prefixes.
IndexSample sample_uniform(Index n, Index s, std::uint64_t seed);

/// Nested pair S1 within S2: S2 uniform from [n], S1 a uniform subset of S2.
/// S1 equals sample_uniform(n, s1, seed) by the prefix property above.
std::pair<IndexSample, IndexSample> sample_nested(Index n, Index s1, Index s2,
                                                  std::uint64_t seed);

}  // namespace simap
