#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "posr/host_poset.hpp"

namespace posr {

/// All k-chains of a host, lexicographically ordered by element index, with a
/// reverse lookup from an ascending element tuple to its canonical index.
/// For k = 1 the chain index coincides with the element index.
class ChainIndex {
public:
    ChainIndex(const HostPoset& host, int k);

    int k() const { return k_; }
    std::size_t size() const { return count_; }
    std::span<const ElementId> chain(std::size_t index) const {
        return {flat_.data() + index * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
    }
    /// `elements` must be ascending; returns nullopt if it is not a k-chain.
    std::optional<std::uint32_t> find(std::span<const ElementId> elements) const;

private:
    std::uint64_t pack(std::span<const ElementId> elements) const;

    int k_;
    std::size_t count_ = 0;
    unsigned bits_ = 1;
    std::vector<ElementId> flat_;
    std::unordered_map<std::uint64_t, std::uint32_t> lookup_;
};

std::vector<std::vector<ElementId>> enumerate_k_chains(const HostPoset& host, int k);

} // namespace posr
