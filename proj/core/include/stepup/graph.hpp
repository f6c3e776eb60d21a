#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace stepup {

// Simple undirected graph on [0, n); no loops, no multi-edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {}

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    int max_degree() const;
    bool is_regular(int* degree_out = nullptr) const;
    bool is_connected() const;

    /// Normalizes edge order (u < v, lexicographic) and adjacency lists.
    void normalize();

    void save(std::ostream& os) const;
    static Graph load(std::istream& is);

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

}  // namespace stepup
