#include "posr/chain_index.hpp"

#include <bit>

#include "posr/errors.hpp"

namespace posr {

namespace {

template <typename Visit>
void visit_chains(const HostPoset& host, int k, Visit&& visit) {
    std::vector<ElementId> stack;
    stack.reserve(static_cast<std::size_t>(k));
    const bool bitsets = host.has_relation_bitsets();
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(stack.size()) == k) {
            visit(std::span<const ElementId>(stack));
            return;
        }
        if (stack.empty()) {
            for (ElementId e = 0; e < host.size(); ++e) {
                stack.push_back(e);
                self(self);
                stack.pop_back();
            }
            return;
        }
        const auto last = stack.back();
        if (bitsets) {
            const auto& up = host.strict_up(last);
            for (auto e = up.find_first(); e != Bitset::npos; e = up.find_next(e)) {
                stack.push_back(static_cast<ElementId>(e));
                self(self);
                stack.pop_back();
            }
        } else {
            for (auto e = last + 1; e < host.size(); ++e) {
                if (!host.leq(last, e)) continue;
                stack.push_back(e);
                self(self);
                stack.pop_back();
            }
        }
    };
    extend(extend);
}

} // namespace

ChainIndex::ChainIndex(const HostPoset& host, int k) : k_(k) {
    if (k < 1) throw DomainError("k-chains need k >= 1");
    bits_ = std::max(1U, static_cast<unsigned>(std::bit_width(host.size())));
    if (bits_ * static_cast<unsigned>(k) > 64) {
        throw SizeLimitError("k-chain keys do not fit in 64 bits for this host and k");
    }
    visit_chains(host, k, [&](std::span<const ElementId> chain) {
        flat_.insert(flat_.end(), chain.begin(), chain.end());
        ++count_;
    });
    if (count_ > UINT32_MAX) throw SizeLimitError("too many k-chains to index");
    if (k > 1) {
        lookup_.reserve(count_);
        for (std::size_t i = 0; i < count_; ++i) lookup_.emplace(pack(chain(i)), static_cast<std::uint32_t>(i));
    }
}

std::uint64_t ChainIndex::pack(std::span<const ElementId> elements) const {
    std::uint64_t key = 0;
    for (auto e : elements) key = (key << bits_) | e;
    return key;
}

std::optional<std::uint32_t> ChainIndex::find(std::span<const ElementId> elements) const {
    if (elements.size() != static_cast<std::size_t>(k_)) return std::nullopt;
    if (k_ == 1) {
        if (elements[0] >= count_) return std::nullopt;
        return elements[0];
    }
    const auto it = lookup_.find(pack(elements));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::vector<ElementId>> enumerate_k_chains(const HostPoset& host, int k) {
    if (k < 1) throw DomainError("k-chains need k >= 1");
    std::vector<std::vector<ElementId>> out;
    visit_chains(host, k, [&](std::span<const ElementId> chain) { out.emplace_back(chain.begin(), chain.end()); });
    return out;
}

} // namespace posr
