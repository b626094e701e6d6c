#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "frtrust/error.hpp"

namespace frtrust::chord {

using RingId = std::uint64_t;

inline constexpr unsigned kDefaultBits = 16;

struct RingConfig {
    unsigned bits = kDefaultBits;
    std::vector<RingId> node_ids;
};

struct LookupResult {
    RingId owner;
    unsigned hops;

    friend bool operator==(const LookupResult&, const LookupResult&) = default;
};

// Static Chord ring. Finger i of node n is successor(n + 2^i mod 2^m).
class Ring {
public:
    explicit Ring(RingConfig config) : bits_(config.bits), ids_(std::move(config.node_ids)) {
        if (bits_ == 0 || bits_ > 62) throw ConfigError("ring bits must be in [1, 62]");
        if (ids_.empty()) throw ConfigError("ring needs at least one node");
        std::sort(ids_.begin(), ids_.end());
        if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) throw ConfigError("duplicate ring id");
        if (ids_.back() >= space()) throw ConfigError("ring id outside [0, 2^m)");

        fingers_.resize(ids_.size() * bits_);
        for (std::size_t n = 0; n < ids_.size(); ++n) {
            for (unsigned i = 0; i < bits_; ++i) {
                fingers_[n * bits_ + i] = successor_index((ids_[n] + (RingId{1} << i)) & mask());
            }
        }
    }

    unsigned bits() const noexcept { return bits_; }
    RingId space() const noexcept { return RingId{1} << bits_; }
    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<RingId>& nodes() const noexcept { return ids_; }

    RingId successor(RingId key) const { return ids_[successor_index(check_key(key))]; }

    RingId finger(RingId node, unsigned i) const {
        if (i >= bits_) throw DomainError("finger index out of range");
        return ids_[fingers_[position(node) * bits_ + i]];
    }

    // Iterative routing; every forward to another node is one message.
    LookupResult lookup(RingId start, RingId key) const {
        check_key(key);
        std::size_t cur = position(start);
        unsigned hops = 0;
        if (owns(cur, key)) return {ids_[cur], 0};
        while (true) {
            const std::size_t succ = fingers_[cur * bits_];
            if (in_half_open(key, ids_[cur], ids_[succ])) return {ids_[succ], hops + 1};
            cur = closest_preceding(cur, key);
            ++hops;
        }
    }

private:
    RingId mask() const noexcept { return space() - 1; }

    RingId check_key(RingId key) const {
        if (key >= space()) throw DomainError("key " + std::to_string(key) + " outside [0, 2^m)");
        return key;
    }

    std::size_t position(RingId node) const {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), node);
        if (it == ids_.end() || *it != node) throw DomainError("no ring node with id " + std::to_string(node));
        return static_cast<std::size_t>(it - ids_.begin());
    }

    std::size_t successor_index(RingId key) const noexcept {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), key);
        return it == ids_.end() ? 0 : static_cast<std::size_t>(it - ids_.begin());
    }

    // Clockwise distance from a to b.
    RingId distance(RingId a, RingId b) const noexcept { return (b - a) & mask(); }

    // key in (a, b] going clockwise; (a, a] is the whole ring.
    bool in_half_open(RingId key, RingId a, RingId b) const noexcept {
        const RingId span = distance(a, b);
        const RingId d = distance(a, key);
        return span == 0 ? true : (d != 0 && d <= span);
    }

    bool owns(std::size_t n, RingId key) const noexcept {
        const std::size_t pred = n == 0 ? ids_.size() - 1 : n - 1;
        return in_half_open(key, ids_[pred], ids_[n]);
    }

    // Farthest finger strictly between the current node and the key.
    std::size_t closest_preceding(std::size_t cur, RingId key) const noexcept {
        const RingId span = distance(ids_[cur], key);
        for (unsigned i = bits_; i-- > 0;) {
            const std::size_t f = fingers_[cur * bits_ + i];
            const RingId d = distance(ids_[cur], ids_[f]);
            if (d != 0 && d < span) return f;
        }
        return fingers_[cur * bits_];
    }

    unsigned bits_;
    std::vector<RingId> ids_;
    std::vector<std::size_t> fingers_;
};

// Owner by walking the sorted id list; independent of the finger tables.
inline RingId linear_successor(const std::vector<RingId>& sorted_ids, RingId key) {
    for (RingId id : sorted_ids) {
        if (id >= key) return id;
    }
    return sorted_ids.front();
}

enum class QueryModel { Coordinator, Dht };

inline constexpr unsigned kCoordinatorMessages = 2;

// Messages for one reputation query. Coordinator mode is a request and a reply.
inline unsigned trust_query_cost(QueryModel model, const Ring& ring, RingId start, RingId target) {
    if (model == QueryModel::Coordinator) return kCoordinatorMessages;
    return ring.lookup(start, target).hops + 1;
}

} // namespace frtrust::chord
