#include "stepup/hypergraph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stepup {

bool Hypergraph::add_edge(std::vector<int> edge) {
    if (static_cast<int>(edge.size()) != k_)
        throw std::invalid_argument("Hypergraph: edge arity != k");
    std::sort(edge.begin(), edge.end());
    for (std::size_t i = 0; i < edge.size(); ++i) {
        if (edge[i] < 0 || edge[i] >= n_) throw std::out_of_range("Hypergraph: vertex out of range");
        if (i > 0 && edge[i] == edge[i - 1])
            throw std::invalid_argument("Hypergraph: edge with repeated vertex");
    }
    if (!edge_set_.insert(edge).second) return false;
    edges_.push_back(std::move(edge));
    return true;
}

bool Hypergraph::has_edge(std::vector<int> edge) const {
    std::sort(edge.begin(), edge.end());
    return edge_set_.count(edge) > 0;
}

std::vector<int> Hypergraph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n_), 0);
    for (const auto& e : edges_)
        for (int v : e) ++deg[static_cast<std::size_t>(v)];
    return deg;
}

int Hypergraph::max_degree() const {
    int d = 0;
    for (int x : degrees()) d = std::max(d, x);
    return d;
}

Hypergraph Hypergraph::union_with(const Hypergraph& other) const {
    if (other.k_ != k_) throw std::invalid_argument("Hypergraph union: uniformity mismatch");
    Hypergraph out(std::max(n_, other.n_), k_);
    for (const auto& e : edges_) out.add_edge(e);
    for (const auto& e : other.edges_) out.add_edge(e);
    return out;
}

void Hypergraph::save(std::ostream& os) const {
    os << "hypergraph n=" << n_ << " k=" << k_ << " e=" << edges_.size() << "\n";
    auto sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& e : sorted) {
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
        os << "\n";
    }
}

Hypergraph Hypergraph::load(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("hypergraph ", 0) != 0)
        throw std::invalid_argument("hypergraph file: bad header");
    int n = -1, k = -1;
    std::size_t e = 0;
    std::istringstream hs(header.substr(11));
    std::string tok;
    while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        auto key = tok.substr(0, eq);
        auto val = tok.substr(eq + 1);
        if (key == "n") n = std::stoi(val);
        else if (key == "k") k = std::stoi(val);
        else if (key == "e") e = static_cast<std::size_t>(std::stoull(val));
    }
    if (n < 0 || k < 1) throw std::invalid_argument("hypergraph file: missing n or k");
    Hypergraph h(n, k);
    std::string line;
    std::size_t count = 0, lineno = 1;
    while (count < e && std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<int> edge(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            if (!(ls >> edge[static_cast<std::size_t>(i)]))
                throw std::invalid_argument("hypergraph file: malformed edge at line " +
                                            std::to_string(lineno));
        }
        h.add_edge(std::move(edge));
        ++count;
    }
    if (count != e)
        throw std::invalid_argument("hypergraph file: expected " + std::to_string(e) + " edges");
    return h;
}

}  // namespace stepup
