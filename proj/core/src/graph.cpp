#include "stepup/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stepup {

void Graph::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("Graph: loop rejected");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("Graph: vertex out of range");
    if (u > v) std::swap(u, v);
    if (has_edge(u, v)) throw std::invalid_argument("Graph: duplicate edge rejected");
    edges_.emplace_back(u, v);
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    const auto& a = adj_[static_cast<std::size_t>(u)];
    const auto& b = adj_[static_cast<std::size_t>(v)];
    const auto& shorter = a.size() <= b.size() ? a : b;
    int target = a.size() <= b.size() ? v : u;
    return std::find(shorter.begin(), shorter.end(), target) != shorter.end();
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

bool Graph::is_regular(int* degree_out) const {
    if (n_ == 0) return true;
    int d = degree(0);
    for (int v = 1; v < n_; ++v)
        if (degree(v) != d) return false;
    if (degree_out) *degree_out = d;
    return true;
}

bool Graph::is_connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj_[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++visited;
                stack.push_back(w);
            }
        }
    }
    return visited == n_;
}

void Graph::normalize() {
    for (auto& [u, v] : edges_)
        if (u > v) std::swap(u, v);
    std::sort(edges_.begin(), edges_.end());
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

void Graph::save(std::ostream& os) const {
    os << "graph n=" << n_ << " e=" << edges_.size() << "\n";
    auto sorted = edges_;
    for (auto& [u, v] : sorted)
        if (u > v) std::swap(u, v);
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [u, v] : sorted) os << u << " " << v << "\n";
}

Graph Graph::load(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("graph ", 0) != 0)
        throw std::invalid_argument("graph file: bad header");
    int n = -1;
    std::size_t e = 0;
    std::istringstream hs(header.substr(6));
    std::string tok;
    while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        if (tok.substr(0, eq) == "n") n = std::stoi(tok.substr(eq + 1));
        if (tok.substr(0, eq) == "e") e = static_cast<std::size_t>(std::stoull(tok.substr(eq + 1)));
    }
    if (n < 0) throw std::invalid_argument("graph file: missing n");
    Graph g(n);
    std::string line;
    std::size_t count = 0;
    std::size_t lineno = 1;
    while (count < e && std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v))
            throw std::invalid_argument("graph file: malformed edge at line " + std::to_string(lineno));
        g.add_edge(u, v);
        ++count;
    }
    if (count != e) throw std::invalid_argument("graph file: expected " + std::to_string(e) + " edges");
    g.normalize();
    return g;
}

}  // namespace stepup
