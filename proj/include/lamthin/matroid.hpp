#pragma once

// Rank-oracle matroids with minors, direct sums, and refinement. Concrete
// graphic and partition matroids keep their structure through minors (a minor
// of a graphic matroid is the graphic matroid of the graph minor; contracting
// inside a partition matroid just lowers block capacities), so the separation
// machinery can always dispatch on the concrete class instead of falling back
// to subset enumeration.

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "frac_point.hpp"
#include "graph.hpp"
#include "laminar.hpp"

namespace lamthin {

namespace detail {

struct MatroidImpl {
    IdSet ground;
    virtual ~MatroidImpl() = default;
    virtual int rank_of(const IdSet& f) const = 0;
};

struct GraphicImpl : MatroidImpl {
    Graph graph;
    explicit GraphicImpl(Graph g) : graph(std::move(g)) { ground = graph.edge_ids(); }
    // rank(F) = |V(F)| - #components of the subgraph spanned by F's endpoints
    int rank_of(const IdSet& f) const override {
        std::vector<int> parent(graph.vertex_count());
        std::iota(parent.begin(), parent.end(), 0);
        int rank = 0;
        for (const Edge& e : graph.edges())
            if (sorted_contains(f, e.id) && Graph::unite(parent, e.u, e.v)) ++rank;
        return rank;
    }
};

struct PartitionImpl : MatroidImpl {
    std::vector<std::pair<IdSet, int>> blocks;  // (elements, capacity)
    explicit PartitionImpl(std::vector<std::pair<IdSet, int>> bs) : blocks(std::move(bs)) {
        IdSet all;
        for (const auto& [b, cap] : blocks) {
            require_input(cap >= 0, "negative partition matroid capacity");
            IdSet merged = set_union_sorted(all, b);
            require_input(merged.size() == all.size() + b.size(),
                          "partition matroid blocks overlap");
            all = std::move(merged);
        }
        ground = all;
    }
    int rank_of(const IdSet& f) const override {
        int rank = 0;
        for (const auto& [b, cap] : blocks)
            rank += std::min<int>(static_cast<int>(set_intersection_sorted(f, b).size()), cap);
        return rank;
    }
};

struct DirectSumImpl : MatroidImpl {
    std::vector<std::shared_ptr<const MatroidImpl>> parts;
    explicit DirectSumImpl(std::vector<std::shared_ptr<const MatroidImpl>> ps)
        : parts(std::move(ps)) {
        IdSet all;
        for (const auto& p : parts) {
            IdSet merged = set_union_sorted(all, p->ground);
            require_input(merged.size() == all.size() + p->ground.size(),
                          "direct sum groundsets overlap");
            all = std::move(merged);
        }
        ground = all;
    }
    int rank_of(const IdSet& f) const override {
        int rank = 0;
        for (const auto& p : parts) rank += p->rank_of(set_intersection_sorted(f, p->ground));
        return rank;
    }
};

struct OracleImpl : MatroidImpl {
    std::function<int(const IdSet&)> fn;
    OracleImpl(IdSet g, std::function<int(const IdSet&)> f) : fn(std::move(f)) {
        ground = std::move(g);
    }
    int rank_of(const IdSet& f) const override { return fn(f); }
};

}  // namespace detail

class Matroid {
public:
    static Matroid graphic(Graph g) {
        return Matroid(std::make_shared<detail::GraphicImpl>(std::move(g)), "graphic");
    }

    static Matroid partition_matroid(std::vector<std::pair<IdSet, int>> blocks) {
        return Matroid(std::make_shared<detail::PartitionImpl>(std::move(blocks)), "partition");
    }

    static Matroid direct_sum(const std::vector<Matroid>& parts) {
        std::vector<std::shared_ptr<const detail::MatroidImpl>> impls;
        for (const Matroid& m : parts) {
            // flatten nested sums so separation sees the leaf structure
            if (auto ds = std::dynamic_pointer_cast<const detail::DirectSumImpl>(m.impl_))
                impls.insert(impls.end(), ds->parts.begin(), ds->parts.end());
            else
                impls.push_back(m.impl_);
        }
        return Matroid(std::make_shared<detail::DirectSumImpl>(std::move(impls)), "direct-sum");
    }

    static Matroid from_oracle(IdSet ground, std::function<int(const IdSet&)> fn) {
        return Matroid(std::make_shared<detail::OracleImpl>(make_sorted(std::move(ground)),
                                                            std::move(fn)),
                       "oracle");
    }

    const IdSet& groundset() const { return impl_->ground; }
    const std::string& kind() const { return tag_; }
    const detail::MatroidImpl& impl() const { return *impl_; }
    std::shared_ptr<const detail::MatroidImpl> impl_ptr() const { return impl_; }

    /// Matroid rank of F (memoized on the canonical sorted id set).
    int rank(const IdSet& f) const {
        require_input(is_subset_sorted(f, impl_->ground),
                      "rank query outside the matroid groundset");
        {
            std::lock_guard<std::mutex> lock(memo_->mutex);
            auto it = memo_->table.find(f);
            if (it != memo_->table.end()) return it->second;
        }
        int r = impl_->rank_of(f);
        std::lock_guard<std::mutex> lock(memo_->mutex);
        memo_->table.emplace(f, r);
        return r;
    }

    int full_rank() const { return rank(impl_->ground); }

    Matroid deleted(const IdSet& f) const {
        require_input(is_subset_sorted(f, impl_->ground), "deleting foreign elements");
        return restricted(set_difference_sorted(impl_->ground, f));
    }

    /// M restricted to F (= deletion of the complement).
    Matroid restricted(const IdSet& f) const {
        require_input(is_subset_sorted(f, impl_->ground), "restricting to foreign elements");
        return with_tag(restrict_impl(f), "minor");
    }

    /// M / F with rank_{M/F}(A) = rank_M(A ∪ F) − rank_M(F).
    Matroid contracted(const IdSet& f) const {
        require_input(is_subset_sorted(f, impl_->ground), "contracting foreign elements");
        return with_tag(contract_impl(f), "minor");
    }

    /// Refinement with respect to R: the direct sum of M|R and M/R. Every
    /// basis of the result is a basis of M.
    Matroid refined(const IdSet& r) const {
        require_input(!r.empty() && r != impl_->ground,
                      "refinement needs a nonempty proper subset");
        return with_tag(direct_sum({restrict_impl(r), contract_impl(r)}), "refined");
    }

private:
    Matroid(std::shared_ptr<const detail::MatroidImpl> impl, std::string tag)
        : impl_(std::move(impl)), tag_(std::move(tag)), memo_(std::make_shared<Memo>()) {}

    static Matroid with_tag(Matroid m, std::string tag) {
        m.tag_ = std::move(tag);
        return m;
    }

    static Matroid wrap(const std::shared_ptr<const detail::MatroidImpl>& impl) {
        return Matroid(impl, "part");
    }

    Matroid restrict_impl(const IdSet& f) const {
        if (auto g = dynamic_cast<const detail::GraphicImpl*>(impl_.get()))
            return graphic(g->graph.with_only_edges(f));
        if (auto p = dynamic_cast<const detail::PartitionImpl*>(impl_.get())) {
            std::vector<std::pair<IdSet, int>> blocks;
            for (const auto& [b, cap] : p->blocks) {
                IdSet kept = set_intersection_sorted(b, f);
                if (!kept.empty()) blocks.push_back({kept, cap});
            }
            return partition_matroid(std::move(blocks));
        }
        if (auto ds = dynamic_cast<const detail::DirectSumImpl*>(impl_.get())) {
            std::vector<Matroid> parts;
            for (const auto& part : ds->parts) {
                IdSet kept = set_intersection_sorted(part->ground, f);
                if (!kept.empty()) parts.push_back(wrap(part).restrict_impl(kept));
            }
            return direct_sum(parts);
        }
        auto self = impl_;
        return from_oracle(f, [self](const IdSet& a) { return self->rank_of(a); });
    }

    Matroid contract_impl(const IdSet& f) const {
        if (f.empty()) return *this;
        if (auto g = dynamic_cast<const detail::GraphicImpl*>(impl_.get())) {
            ContractedGraph minor = contract_edges(g->graph, f);
            IdSet keep = set_difference_sorted(g->graph.edge_ids(), f);
            // edges swallowed into a contracted block become loops: rank zero
            IdSet survivors = set_intersection_sorted(minor.graph.edge_ids(), keep);
            IdSet loops = set_difference_sorted(keep, survivors);
            Matroid base = graphic(minor.graph.with_only_edges(survivors));
            if (loops.empty()) return base;
            return direct_sum({base, partition_matroid({{loops, 0}})});
        }
        if (auto p = dynamic_cast<const detail::PartitionImpl*>(impl_.get())) {
            std::vector<std::pair<IdSet, int>> blocks;
            for (const auto& [b, cap] : p->blocks) {
                IdSet gone = set_intersection_sorted(b, f);
                IdSet kept = set_difference_sorted(b, f);
                int new_cap = std::max(0, cap - static_cast<int>(gone.size()));
                if (!kept.empty()) blocks.push_back({kept, new_cap});
            }
            return partition_matroid(std::move(blocks));
        }
        if (auto ds = dynamic_cast<const detail::DirectSumImpl*>(impl_.get())) {
            std::vector<Matroid> parts;
            for (const auto& part : ds->parts) {
                IdSet gone = set_intersection_sorted(part->ground, f);
                Matroid m = wrap(part).contract_impl(gone);
                if (!m.groundset().empty()) parts.push_back(m);
            }
            return direct_sum(parts);
        }
        auto self = impl_;
        int rf = impl_->rank_of(f);
        return from_oracle(set_difference_sorted(impl_->ground, f),
                           [self, f, rf](const IdSet& a) {
                               return self->rank_of(set_union_sorted(a, f)) - rf;
                           });
    }

    struct Memo {
        std::mutex mutex;
        std::map<IdSet, int> table;
    };

    std::shared_ptr<const detail::MatroidImpl> impl_;
    std::string tag_;
    std::shared_ptr<Memo> memo_;
};

/// Refine along every family member, children before parents, so each
/// refinement step splits off a still-intact nested piece. Afterwards every
/// basis B has |B ∩ E(S)| = rank(E(S)) for all S in the family.
inline Matroid refine_along_family(Matroid m, const Graph& g, const LaminarFamily& fam) {
    std::vector<const LaminarSet*> order;
    for (const LaminarSet& s : fam.sets()) order.push_back(&s);
    std::sort(order.begin(), order.end(), [](const LaminarSet* a, const LaminarSet* b) {
        if (a->members.size() != b->members.size())
            return a->members.size() < b->members.size();
        return a->members < b->members;
    });
    std::vector<IdSet> used;
    for (const LaminarSet* s : order) {
        IdSet r = set_intersection_sorted(induced_edges(g, s->members), m.groundset());
        if (r.empty() || r == m.groundset()) continue;
        if (std::find(used.begin(), used.end(), r) != used.end()) continue;
        used.push_back(r);
        m = m.refined(r);
    }
    return m;
}

/// First family member S with x(E(S)) != rank(E(S)), or nullopt when aligned.
inline std::optional<int> is_aligned_point(const Matroid& m, const Graph& g,
                                           const LaminarFamily& fam, const FracPoint& x) {
    for (const LaminarSet& s : fam.sets()) {
        IdSet es = set_intersection_sorted(induced_edges(g, s.members), m.groundset());
        if (x.sum(es) != Rat(m.rank(es))) return s.id;
    }
    return std::nullopt;
}

}  // namespace lamthin
