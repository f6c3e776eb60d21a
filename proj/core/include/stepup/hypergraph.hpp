#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <vector>

namespace stepup {

// k-uniform hypergraph on [0, n); edges are sorted k-subsets, no duplicates.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(int n, int k) : n_(n), k_(k) {}

    int vertex_count() const { return n_; }
    int uniformity() const { return k_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::vector<int>>& edges() const { return edges_; }

    /// Adds a k-set (sorted internally); duplicate edges are ignored.
    bool add_edge(std::vector<int> edge);
    bool has_edge(std::vector<int> edge) const;

    std::vector<int> degrees() const;
    int max_degree() const;

    Hypergraph union_with(const Hypergraph& other) const;

    void save(std::ostream& os) const;
    static Hypergraph load(std::istream& is);

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<std::vector<int>> edges_;
    std::set<std::vector<int>> edge_set_;
};

}  // namespace stepup
