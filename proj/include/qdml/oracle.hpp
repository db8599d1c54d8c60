#pragma once

// Brute-force ground truth for small dimensions. Written against the
// definitions only (neighbor sums over the adjacency), sharing no code
// with the encoder, so agreement between the two is meaningful.

#include <numeric>
#include <stdexcept>
#include <vector>

#include "qdml/hypercube.hpp"

namespace qdml {

namespace detail {

inline void brute_force_rec(int n, long long target, std::vector<int>& labels,
                            std::vector<char>& used, int v, std::vector<Labeling>& out) {
    int size = 1 << n;
    if (v == size) {
        out.push_back({n, labels});
        return;
    }
    for (int cand = 0; cand < size; ++cand) {
        if (used[cand]) continue;
        used[cand] = 1;
        labels[v] = cand;
        // Prune: any vertex whose neighborhood is now fully assigned must
        // already meet the target sum.
        bool ok = true;
        for (int u = 0; u <= v && ok; ++u) {
            long long sum = 0;
            bool complete = true;
            for (int i = 0; i < n; ++i) {
                int w = u ^ (1 << i);
                if (w > v) {
                    complete = false;
                    break;
                }
                sum += labels[w];
            }
            if (complete && sum != target) ok = false;
        }
        if (ok) brute_force_rec(n, target, labels, used, v + 1, out);
        used[cand] = 0;
    }
    labels[v] = -1;
}

}  // namespace detail

// All distance magic labelings of Q_n, in lexicographic order of the label
// sequence. Empty when the magic constant is non-integer. Only n <= 3 is
// accepted; the search is over (2^n)! permutations with pruning.
inline std::vector<Labeling> brute_force_dmls(int n) {
    check_dimension(n);
    if (n > 3) throw std::invalid_argument("brute_force_dmls: n > 3 infeasible");
    if (n % 2 != 0) return {};
    long long target = magic_constant(n);
    int size = 1 << n;
    std::vector<int> labels(size, -1);
    std::vector<char> used(size, 0);
    std::vector<Labeling> out;
    detail::brute_force_rec(n, target, labels, used, 0, out);
    return out;
}

inline bool brute_force_sum_check(const std::vector<long long>& addends, long long target) {
    return std::accumulate(addends.begin(), addends.end(), 0LL) == target;
}

}  // namespace qdml
