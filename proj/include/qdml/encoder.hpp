#pragma once

// CNF encoding of the distance-magic search: label-bit variables, pairwise
// distinctness gadgets, per-vertex sum-equals-constant constraints built
// from a balanced ripple-carry adder tree, and the Q6 fixed-label prefix.
//
// Variable layout: the n*2^n label bits come first, variable 1 + v*n + i
// for vertex v and bit position i (lexicographic in (v, i)). Everything
// after that is auxiliary.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdml/cnf.hpp"
#include "qdml/hypercube.hpp"
#include "qdml/solver.hpp"

namespace qdml {

inline constexpr int kEncoderVersion = 1;

// Labels fixed on the zero vertex's neighbors: vertex 2^i gets kFixedNeighborLabels[i].
inline constexpr int kFixedNeighborLabels[6] = {4, 6, 36, 38, 52, 53};

struct BuildOptions {
    bool distinct = true;
    bool sums = true;
    bool fixed_prefix = false;
};

struct EncodingArtifacts {
    int n = 0;
    Cnf cnf;
    BuildOptions options;

    int label_var(int v, int i) const {
        check_vertex(n, v);
        if (i < 0 || i >= n) throw std::invalid_argument("bit position out of range");
        return 1 + v * n + i;
    }

    int num_primary_vars() const { return n * (1 << n); }

    std::vector<int> primary_vars() const {
        std::vector<int> out(num_primary_vars());
        for (int k = 0; k < num_primary_vars(); ++k) out[k] = k + 1;
        return out;
    }

    std::vector<Lit> label_bits(int v) const {
        std::vector<Lit> bits(n);
        for (int i = 0; i < n; ++i) bits[i] = label_var(v, i);
        return bits;
    }
};

// Difference gadget: fresh aux d_1..d_n with, per bit, (~d_i | x_i | y_i)
// and (~d_i | ~x_i | ~y_i), plus the clause (d_1 | ... | d_n). Exactly
// 2n+1 clauses; satisfiable over the aux variables iff the vectors differ.
// Only the direction d_i -> (x_i != y_i) is encoded.
inline std::vector<int> encode_pair_distinct(Cnf& cnf, std::span<const Lit> xbits,
                                             std::span<const Lit> ybits) {
    if (xbits.size() != ybits.size())
        throw std::invalid_argument("encode_pair_distinct: bit-vector length mismatch");
    int n = static_cast<int>(xbits.size());
    int first = cnf.fresh_vars(n);
    std::vector<int> aux(n);
    std::vector<Lit> big;
    big.reserve(n);
    for (int i = 0; i < n; ++i) {
        int d = first + i;
        aux[i] = d;
        cnf.add_clause({-d, xbits[i], ybits[i]});
        cnf.add_clause({-d, -xbits[i], -ybits[i]});
        big.push_back(d);
    }
    cnf.add_clause(std::move(big));
    return aux;
}

// One difference gadget per unordered vertex pair, disjoint aux sets.
inline void encode_all_distinct(EncodingArtifacts& art) {
    int size = vertex_count(art.n);
    for (int u = 0; u < size; ++u) {
        auto ubits = art.label_bits(u);
        for (int v = u + 1; v < size; ++v) {
            auto vbits = art.label_bits(v);
            encode_pair_distinct(art.cnf, ubits, vbits);
        }
    }
}

namespace detail {

// Numbers are vectors of literals, LSB first.
using BitVec = std::vector<Lit>;

inline int full_adder_sum(Cnf& cnf, Lit a, Lit b, Lit c) {
    int s = cnf.fresh_var();
    cnf.add_clause({a, b, c, -s});
    cnf.add_clause({a, -b, -c, -s});
    cnf.add_clause({-a, b, -c, -s});
    cnf.add_clause({-a, -b, c, -s});
    cnf.add_clause({-a, -b, -c, s});
    cnf.add_clause({-a, b, c, s});
    cnf.add_clause({a, -b, c, s});
    cnf.add_clause({a, b, -c, s});
    return s;
}

inline int full_adder_carry(Cnf& cnf, Lit a, Lit b, Lit c) {
    int co = cnf.fresh_var();
    cnf.add_clause({-a, -b, co});
    cnf.add_clause({-a, -c, co});
    cnf.add_clause({-b, -c, co});
    cnf.add_clause({a, b, -co});
    cnf.add_clause({a, c, -co});
    cnf.add_clause({b, c, -co});
    return co;
}

inline int half_adder_sum(Cnf& cnf, Lit a, Lit b) {
    int s = cnf.fresh_var();
    cnf.add_clause({a, b, -s});
    cnf.add_clause({-a, -b, -s});
    cnf.add_clause({-a, b, s});
    cnf.add_clause({a, -b, s});
    return s;
}

inline int half_adder_carry(Cnf& cnf, Lit a, Lit b) {
    int co = cnf.fresh_var();
    cnf.add_clause({-a, -b, co});
    cnf.add_clause({a, -co});
    cnf.add_clause({b, -co});
    return co;
}

// Ripple-carry addition of two numbers; half adders where only one input
// bit (or only the carry) is present at a position.
inline BitVec ripple_add(Cnf& cnf, const BitVec& a, const BitVec& b, std::vector<int>* aux) {
    std::size_t width = std::max(a.size(), b.size());
    BitVec out;
    out.reserve(width + 1);
    Lit carry = 0;  // 0 means no carry literal yet
    for (std::size_t i = 0; i < width; ++i) {
        bool ha = i < a.size(), hb = i < b.size();
        std::vector<Lit> ins;
        if (ha) ins.push_back(a[i]);
        if (hb) ins.push_back(b[i]);
        if (carry != 0) ins.push_back(carry);
        if (ins.size() == 3) {
            int s = full_adder_sum(cnf, ins[0], ins[1], ins[2]);
            int co = full_adder_carry(cnf, ins[0], ins[1], ins[2]);
            if (aux) {
                aux->push_back(s);
                aux->push_back(co);
            }
            out.push_back(s);
            carry = co;
        } else if (ins.size() == 2) {
            int s = half_adder_sum(cnf, ins[0], ins[1]);
            int co = half_adder_carry(cnf, ins[0], ins[1]);
            if (aux) {
                aux->push_back(s);
                aux->push_back(co);
            }
            out.push_back(s);
            carry = co;
        } else {
            out.push_back(ins[0]);
            carry = 0;
        }
    }
    if (carry != 0) out.push_back(carry);
    return out;
}

// Balanced binary tree over the addends, deterministic construction order.
inline BitVec adder_tree(Cnf& cnf, const std::vector<BitVec>& addends, std::size_t lo,
                         std::size_t hi, std::vector<int>* aux) {
    if (hi - lo == 1) return addends[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    BitVec left = adder_tree(cnf, addends, lo, mid, aux);
    BitVec right = adder_tree(cnf, addends, mid, hi, aux);
    return ripple_add(cnf, left, right, aux);
}

}  // namespace detail

// Constrains the arithmetic sum of the addend bit-vectors to equal target:
// builds the adder tree, then unit-fixes every output sum bit to the binary
// expansion of target. Returns the auxiliary variables introduced.
inline std::vector<int> encode_sum_equals(Cnf& cnf, const std::vector<std::vector<Lit>>& addends,
                                          long long target) {
    if (target < 0) throw std::invalid_argument("encode_sum_equals: negative target");
    long long max_sum = 0;
    for (const auto& a : addends) max_sum += (1LL << a.size()) - 1;
    if (target > max_sum)
        throw std::invalid_argument("encode_sum_equals: target " + std::to_string(target) +
                                    " exceeds maximum sum " + std::to_string(max_sum));
    if (addends.empty()) return {};  // empty sum; target must be 0 and already is
    std::vector<int> aux;
    detail::BitVec sum = detail::adder_tree(cnf, addends, 0, addends.size(), &aux);
    for (std::size_t i = 0; i < sum.size(); ++i) {
        bool bit = (i < 63) && ((target >> i) & 1);
        cnf.add_unit(bit ? sum[i] : -sum[i]);
    }
    return aux;
}

// Q6-specific symmetry reduction: 42 unit clauses forcing label(0) = 0 and
// label(2^i) = kFixedNeighborLabels[i].
inline void encode_fixed_prefix(EncodingArtifacts& art) {
    if (art.n != 6) throw std::invalid_argument("fixed prefix is specific to n = 6");
    auto fix_label = [&](int v, int value) {
        for (int i = 0; i < art.n; ++i) {
            int var = art.label_var(v, i);
            art.cnf.add_unit((value >> i) & 1 ? var : -var);
        }
    };
    fix_label(0, 0);
    for (int i = 0; i < 6; ++i) fix_label(1 << i, kFixedNeighborLabels[i]);
}

inline EncodingArtifacts build_instance(int n, BuildOptions options = {}) {
    check_dimension(n);
    if (options.sums && n % 2 != 0)
        throw std::invalid_argument("sum constraints need an integer magic constant (even n)");
    if (options.fixed_prefix && n != 6)
        throw std::invalid_argument("fixed prefix requires n = 6");
    EncodingArtifacts art;
    art.n = n;
    art.options = options;
    art.cnf.add_comment("qdml encoder v" + std::to_string(kEncoderVersion) + " n=" +
                        std::to_string(n) + " distinct=" + std::to_string(options.distinct) +
                        " sums=" + std::to_string(options.sums) +
                        " fixed_prefix=" + std::to_string(options.fixed_prefix));
    art.cnf.add_comment("layout: variable 1 + v*n + i is bit i of the label of vertex v");
    art.cnf.fresh_vars(art.num_primary_vars());
    if (options.distinct) encode_all_distinct(art);
    if (options.sums) {
        long long target = magic_constant(n);
        int size = vertex_count(n);
        for (int v = 0; v < size; ++v) {
            std::vector<std::vector<Lit>> addends;
            addends.reserve(n);
            for (int i = 0; i < n; ++i) addends.push_back(art.label_bits(v ^ (1 << i)));
            encode_sum_equals(art.cnf, addends, target);
        }
    }
    if (options.fixed_prefix) encode_fixed_prefix(art);
    return art;
}

// Reads the labeling off a total model. No validity check; feed the result
// to verify_dml.
inline Labeling decode_model(const EncodingArtifacts& art, const Model& model) {
    if (model.num_vars() < art.num_primary_vars())
        throw std::invalid_argument("model does not assign every primary variable");
    Labeling lab;
    lab.n = art.n;
    int size = vertex_count(art.n);
    lab.labels.resize(size);
    for (int v = 0; v < size; ++v) {
        int label = 0;
        for (int i = 0; i < art.n; ++i)
            if (model.value(art.label_var(v, i))) label |= 1 << i;
        lab.labels[v] = label;
    }
    return lab;
}

// Unit-fixes every primary variable to the bits of the given labeling;
// test helper and the inverse of decode_model.
inline void fix_labeling_as_units(EncodingArtifacts& art, const Labeling& lab) {
    if (lab.n != art.n || static_cast<int>(lab.labels.size()) != vertex_count(art.n))
        throw std::invalid_argument("labeling shape mismatch");
    for (int v = 0; v < vertex_count(art.n); ++v) {
        for (int i = 0; i < art.n; ++i) {
            int var = art.label_var(v, i);
            art.cnf.add_unit((lab.labels[v] >> i) & 1 ? var : -var);
        }
    }
}

}  // namespace qdml
