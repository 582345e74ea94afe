#include "nsi/resolution_graph.hpp"

#include <numeric>

namespace nsi {

void validate(const ResolutionGraph& g) {
    const std::size_t n = g.curves.size();
    if (g.adjacency.rows() != n || g.adjacency.cols() != n)
        throw DimensionMismatch("adjacency size does not match curve count");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g.adjacency.at(i, j) != g.adjacency.at(j, i))
                throw AsymmetricAdjacency("entries (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
    for (std::size_t i = 0; i < n; ++i) {
        if (g.adjacency.at(i, i) != Rat(g.curves[i].self_intersection))
            throw AsymmetricAdjacency("diagonal " + std::to_string(i) +
                                      " disagrees with curve record");
        if (g.curves[i].arithmetic_genus < 0)
            throw InvalidPair("negative genus at curve " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && g.adjacency.at(i, j).sign() < 0)
                throw AsymmetricAdjacency("negative off-diagonal entry (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
    }
    // Sylvester, reporting the first failing leading principal minor.
    for (std::size_t k = 1; k <= n; ++k) {
        QMatrix lead(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) lead.at(i, j) = g.adjacency.at(i, j);
        int expected = (k % 2 == 1) ? -1 : 1;
        if (det(lead).sign() != expected)
            throw NotNegativeDefinite("principal minor " + std::to_string(k));
    }
}

QVector canonical_degrees(const ResolutionGraph& g) {
    QVector deg(g.curves.size());
    for (std::size_t i = 0; i < g.curves.size(); ++i)
        deg[i] = Rat(2 * g.curves[i].arithmetic_genus - 2 -
                     g.curves[i].self_intersection);
    return deg;
}

QVector relative_c1(const ResolutionGraph& g, const std::vector<long long>& degrees) {
    validate(g);
    if (degrees.size() != g.curves.size())
        throw DimensionMismatch("degree vector length");
    if (g.curves.empty()) return {};
    QVector b(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) b[i] = Rat(degrees[i]);
    return solve_symmetric(g.adjacency, b);
}

QVector discrepancies(const ResolutionGraph& g) {
    validate(g);
    if (g.curves.empty()) return {};
    return solve_symmetric(g.adjacency, canonical_degrees(g));
}

std::vector<long long> hj_expand(long long n, long long q) {
    if (n <= 0 || q <= 0 || q >= n || std::gcd(n, q) != 1)
        throw InvalidPair(std::to_string(n) + "/" + std::to_string(q));
    std::vector<long long> bs;
    while (q > 0) {
        long long b = (n + q - 1) / q; // ceil(n/q)
        bs.push_back(b);
        long long next_n = q;
        long long next_q = b * q - n;
        n = next_n;
        q = next_q;
    }
    return bs;
}

ResolutionGraph graph_from_hj(long long n, long long q) {
    auto bs = hj_expand(n, q);
    ResolutionGraph g;
    const std::size_t k = bs.size();
    g.adjacency = QMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        g.curves.push_back({"E" + std::to_string(i + 1), -bs[i], 0});
        g.adjacency.at(i, i) = Rat(-bs[i]);
        if (i + 1 < k) {
            g.adjacency.at(i, i + 1) = 1;
            g.adjacency.at(i + 1, i) = 1;
        }
    }
    return g;
}

} // namespace nsi
