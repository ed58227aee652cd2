#ifndef CHERRYVINE_VERTEX_SET_HPP
#define CHERRYVINE_VERTEX_SET_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace cherryvine {

/**
 * Canonical sorted set of positive vertex ids.
 *
 * Every structure type stores its vertex content as a VertexSet, so set
 * equality is structural and sets order deterministically (lexicographic
 * on the sorted ids), which is the tie-break order used throughout.
 */
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<int> ids);
    explicit VertexSet(std::vector<int> ids);

    const std::vector<int>& ids() const { return ids_; }
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }

    bool contains(int v) const;
    bool contains_all(const VertexSet& other) const;
    bool is_proper_subset_of(const VertexSet& other) const {
        return size() < other.size() && other.contains_all(*this);
    }

    void insert(int v);
    void erase(int v);

    auto operator<=>(const VertexSet&) const = default;

    /// Renders as "{1,2,3}"; used in diagnostics and DOT labels.
    std::string str() const;

    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

private:
    void normalize();
    std::vector<int> ids_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_symmetric_difference(const VertexSet& a, const VertexSet& b);

} // namespace cherryvine

#endif
