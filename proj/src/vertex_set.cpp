#include "cherryvine/vertex_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace cherryvine {

VertexSet::VertexSet(std::initializer_list<int> ids) : ids_(ids) { normalize(); }
VertexSet::VertexSet(std::vector<int> ids) : ids_(std::move(ids)) { normalize(); }

void VertexSet::normalize() {
    for (int v : ids_) {
        if (v <= 0) throw std::invalid_argument("vertex ids must be positive");
    }
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool VertexSet::contains(int v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

bool VertexSet::contains_all(const VertexSet& other) const {
    return std::includes(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end());
}

void VertexSet::insert(int v) {
    if (v <= 0) throw std::invalid_argument("vertex ids must be positive");
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) ids_.insert(it, v);
}

void VertexSet::erase(int v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it != ids_.end() && *it == v) ids_.erase(it);
}

std::string VertexSet::str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(ids_[i]);
    }
    out += '}';
    return out;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VertexSet(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VertexSet(std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VertexSet(std::move(out));
}

VertexSet set_symmetric_difference(const VertexSet& a, const VertexSet& b) {
    std::vector<int> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return VertexSet(std::move(out));
}

} // namespace cherryvine
