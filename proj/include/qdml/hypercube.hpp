#pragma once

// Hypercube model: adjacency, magic-sum condition, labeling verification,
// the neighbor-balance analysis, and the labeling text format.
//
// Bit conventions, binding everywhere: vertex index v is an n-bit integer,
// the neighbor of v in direction i is v XOR 2^i, and a label's digit at
// position i is bit i of weight 2^i (LSB = position 0).

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdml {

inline void check_dimension(int n) {
    if (n < 1 || n > 20)
        throw std::invalid_argument("dimension must satisfy 1 <= n <= 20, got " + std::to_string(n));
}

inline int vertex_count(int n) {
    check_dimension(n);
    return 1 << n;
}

struct Labeling {
    int n = 0;
    std::vector<int> labels;  // indexed by vertex, length 2^n

    bool operator==(const Labeling&) const = default;
};

// Magic constant n(2^n - 1)/2; defined only for even n.
inline long long magic_constant(int n) {
    check_dimension(n);
    if (n % 2 != 0) throw std::invalid_argument("magic constant undefined (non-integer) for odd n");
    return static_cast<long long>(n) * ((1LL << n) - 1) / 2;
}

// A distance magic labeling of Q_n exists iff n == 2 (mod 4).
inline bool dml_exists(int n) {
    check_dimension(n);
    return n % 4 == 2;
}

inline void check_vertex(int n, int v) {
    if (v < 0 || v >= vertex_count(n))
        throw std::invalid_argument("vertex " + std::to_string(v) + " out of range for n=" +
                                    std::to_string(n));
}

inline std::vector<int> neighbors(int n, int v) {
    check_vertex(n, v);
    std::vector<int> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(v ^ (1 << i));
    return out;
}

inline long long neighbor_sum(const Labeling& lab, int v) {
    check_vertex(lab.n, v);
    long long s = 0;
    for (int i = 0; i < lab.n; ++i) s += lab.labels[v ^ (1 << i)];
    return s;
}

struct Verdict {
    enum class Kind { Valid, NotPermutation, MagicSum };
    Kind kind = Kind::Valid;
    int witness = -1;       // offending vertex for invalid verdicts
    std::string detail;

    bool valid() const { return kind == Kind::Valid; }
};

// Valid iff the labels are a permutation of 0..2^n-1 and every neighbor
// sum equals the magic constant. Reports the first violation found.
inline Verdict verify_dml(const Labeling& lab) {
    int n = lab.n;
    check_dimension(n);
    int size = vertex_count(n);
    if (static_cast<int>(lab.labels.size()) != size)
        return {Verdict::Kind::NotPermutation, -1,
                "expected " + std::to_string(size) + " labels, got " +
                    std::to_string(lab.labels.size())};
    std::vector<char> seen(size, 0);
    for (int v = 0; v < size; ++v) {
        int l = lab.labels[v];
        if (l < 0 || l >= size)
            return {Verdict::Kind::NotPermutation, v,
                    "label " + std::to_string(l) + " out of range at vertex " + std::to_string(v)};
        if (seen[l])
            return {Verdict::Kind::NotPermutation, v,
                    "duplicate label " + std::to_string(l) + " at vertex " + std::to_string(v)};
        seen[l] = 1;
    }
    if (n % 2 != 0)
        return {Verdict::Kind::MagicSum, 0, "magic constant undefined for odd n"};
    long long target = magic_constant(n);
    for (int v = 0; v < size; ++v) {
        long long s = neighbor_sum(lab, v);
        if (s != target)
            return {Verdict::Kind::MagicSum, v,
                    "neighbor sum " + std::to_string(s) + " != " + std::to_string(target) +
                        " at vertex " + std::to_string(v)};
    }
    return {};
}

struct BalanceReport {
    int n = 0;
    std::vector<std::vector<int>> counts;          // counts[v][i], 2^n x n
    bool balanced = false;
    std::vector<std::pair<int, int>> witnesses;    // (vertex, bit position) deviations
};

// counts[v][i] = number of neighbors of v whose label has bit i set;
// balanced iff every entry equals n/2. Requires a permutation labeling
// and even n ("exactly half" is undefined otherwise).
inline BalanceReport balance_report(const Labeling& lab) {
    int n = lab.n;
    check_dimension(n);
    if (n % 2 != 0) throw std::invalid_argument("balance undefined for odd n");
    int size = vertex_count(n);
    if (static_cast<int>(lab.labels.size()) != size)
        throw std::invalid_argument("labeling has wrong length");
    {
        std::vector<char> seen(size, 0);
        for (int l : lab.labels) {
            if (l < 0 || l >= size || seen[l])
                throw std::invalid_argument("balance_report requires a permutation labeling");
            seen[l] = 1;
        }
    }
    BalanceReport rep;
    rep.n = n;
    rep.counts.assign(size, std::vector<int>(n, 0));
    int half = n / 2;
    rep.balanced = true;
    for (int v = 0; v < size; ++v) {
        for (int d = 0; d < n; ++d) {
            int label = lab.labels[v ^ (1 << d)];
            for (int i = 0; i < n; ++i)
                if (label & (1 << i)) ++rep.counts[v][i];
        }
        for (int i = 0; i < n; ++i) {
            if (rep.counts[v][i] != half) {
                rep.balanced = false;
                rep.witnesses.emplace_back(v, i);
            }
        }
    }
    return rep;
}

class LabelingParseError : public std::runtime_error {
  public:
    LabelingParseError(int line, int column, const std::string& what)
        : std::runtime_error("labeling parse error at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line(line),
          column(column) {}
    int line;
    int column;
};

// Format: header line "n <dimension>" followed by 2^n whitespace-separated
// integers in vertex-index order. Duplicate labels are left to verify_dml.
inline Labeling load_labeling(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };

    if (!next_line()) throw LabelingParseError(1, 1, "empty input, expected header 'n <dimension>'");
    std::istringstream hs(line);
    std::string key;
    int n;
    if (!(hs >> key >> n) || key != "n")
        throw LabelingParseError(lineno, 1, "expected header 'n <dimension>', got '" + line + "'");
    if (n < 1 || n > 20) throw LabelingParseError(lineno, 3, "dimension out of range");
    std::string extra;
    if (hs >> extra) throw LabelingParseError(lineno, 1, "trailing tokens after header");

    Labeling lab;
    lab.n = n;
    int expected = 1 << n;
    lab.labels.reserve(expected);
    while (static_cast<int>(lab.labels.size()) < expected) {
        if (!next_line())
            throw LabelingParseError(lineno + 1, 1,
                                     "expected " + std::to_string(expected) + " labels, got " +
                                         std::to_string(lab.labels.size()));
        size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            if (pos >= line.size()) break;
            size_t start = pos;
            while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            std::string tok = line.substr(start, pos - start);
            int value;
            try {
                size_t used = 0;
                value = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw LabelingParseError(lineno, static_cast<int>(start + 1),
                                         "non-integer token '" + tok + "'");
            }
            if (static_cast<int>(lab.labels.size()) >= expected)
                throw LabelingParseError(lineno, static_cast<int>(start + 1),
                                         "more than " + std::to_string(expected) + " labels");
            lab.labels.push_back(value);
        }
    }
    // Anything left over is an error.
    std::string tail;
    if (in >> tail)
        throw LabelingParseError(lineno + 1, 1, "trailing data after last label");
    return lab;
}

inline std::string store_labeling(const Labeling& lab) {
    check_dimension(lab.n);
    std::ostringstream out;
    out << "n " << lab.n << '\n';
    // 2^(n/2 rounded up) values per line keeps n=6 in the paper's 8x8 shape.
    int per_row = 1 << ((lab.n + 1) / 2);
    for (size_t i = 0; i < lab.labels.size(); ++i) {
        out << lab.labels[i];
        out << ((static_cast<int>(i) % per_row == per_row - 1) ? '\n' : ' ');
    }
    if (!lab.labels.empty() && static_cast<int>(lab.labels.size()) % per_row != 0) out << '\n';
    return out.str();
}

}  // namespace qdml
