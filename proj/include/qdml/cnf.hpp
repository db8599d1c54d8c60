#pragma once

// Clause database with a monotone variable allocator and bit-exact
// DIMACS serialization. Literals use the DIMACS convention: a nonzero
// int whose absolute value is the variable and whose sign is the polarity.

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdml {

using Lit = int;

inline int var_of(Lit l) { return std::abs(l); }

struct CnfStats {
    int num_vars = 0;
    long long num_clauses = 0;
};

class CnfParseError : public std::runtime_error {
  public:
    CnfParseError(int line, const std::string& what)
        : std::runtime_error("dimacs parse error at line " + std::to_string(line) + ": " + what),
          line(line) {}
    int line;
};

class Cnf {
  public:
    int num_vars() const { return num_vars_; }
    long long num_clauses() const { return static_cast<long long>(clauses_.size()); }
    const std::vector<std::vector<Lit>>& clauses() const { return clauses_; }

    int fresh_var() { return ++num_vars_; }

    // Returns the first of k consecutive fresh variables.
    int fresh_vars(int k) {
        if (k < 0) throw std::invalid_argument("fresh_vars: negative count");
        int first = num_vars_ + 1;
        num_vars_ += k;
        return first;
    }

    void add_clause(std::vector<Lit> lits) {
        if (lits.empty())
            throw std::invalid_argument("add_clause: empty clause (use two opposing units for falsity)");
        for (Lit l : lits) {
            if (l == 0 || var_of(l) > num_vars_)
                throw std::invalid_argument("add_clause: literal over unallocated variable " +
                                            std::to_string(l));
        }
        clauses_.push_back(std::move(lits));
    }

    void add_unit(Lit l) { add_clause({l}); }

    void add_comment(std::string text) { comments_.push_back(std::move(text)); }
    const std::vector<std::string>& comments() const { return comments_; }

    CnfStats stats() const { return {num_vars_, num_clauses()}; }

    // Canonical DIMACS: comments first, then the header, then clauses in
    // insertion order with unsorted literals. write -> read -> write is
    // byte-identical.
    std::string write_dimacs() const {
        std::ostringstream out;
        for (const auto& c : comments_) out << "c " << c << '\n';
        out << "p cnf " << num_vars_ << ' ' << clauses_.size() << '\n';
        for (const auto& cl : clauses_) {
            for (Lit l : cl) out << l << ' ';
            out << "0\n";
        }
        return out.str();
    }

    static Cnf read_dimacs(const std::string& text) {
        Cnf cnf;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        long long declared_clauses = -1;
        bool header_seen = false;
        std::vector<Lit> current;
        bool in_clause = false;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            if (line[0] == 'c') {
                std::string body = line.substr(1);
                if (!body.empty() && body[0] == ' ') body.erase(0, 1);
                cnf.comments_.push_back(body);
                continue;
            }
            if (line[0] == 'p') {
                if (header_seen) throw CnfParseError(lineno, "duplicate header");
                std::istringstream hs(line);
                std::string p, fmt;
                int nv;
                long long nc;
                if (!(hs >> p >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
                    throw CnfParseError(lineno, "malformed header: " + line);
                cnf.num_vars_ = nv;
                declared_clauses = nc;
                header_seen = true;
                continue;
            }
            if (!header_seen) throw CnfParseError(lineno, "clause before header");
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) {
                Lit l;
                try {
                    size_t pos = 0;
                    l = std::stoi(tok, &pos);
                    if (pos != tok.size()) throw std::invalid_argument(tok);
                } catch (const std::exception&) {
                    throw CnfParseError(lineno, "bad literal token '" + tok + "'");
                }
                if (l == 0) {
                    if (current.empty()) throw CnfParseError(lineno, "empty clause");
                    cnf.clauses_.push_back(current);
                    current.clear();
                    in_clause = false;
                } else {
                    if (var_of(l) > cnf.num_vars_)
                        throw CnfParseError(lineno, "literal " + std::to_string(l) +
                                                        " exceeds declared variable count");
                    current.push_back(l);
                    in_clause = true;
                }
            }
        }
        if (in_clause || !current.empty())
            throw CnfParseError(lineno, "missing clause terminator at end of input");
        if (!header_seen) throw CnfParseError(lineno, "missing header");
        if (declared_clauses != cnf.num_clauses())
            throw CnfParseError(lineno, "header declares " + std::to_string(declared_clauses) +
                                            " clauses, found " + std::to_string(cnf.num_clauses()));
        return cnf;
    }

  private:
    int num_vars_ = 0;
    std::vector<std::vector<Lit>> clauses_;
    std::vector<std::string> comments_;
};

}  // namespace qdml
