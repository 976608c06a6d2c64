#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "audit.hpp"

namespace emalg {

/// Raised by validate_table; row/col locate the offending cell (-1 when the
/// defect is not tied to a single cell, e.g. a short row).
class TableFormatError : public std::runtime_error {
  public:
    TableFormatError(int row, int col, const std::string& msg)
        : std::runtime_error(msg), row_(row), col_(col) {}
    int row() const { return row_; }
    int col() const { return col_; }

  private:
    int row_;
    int col_;
};

/// Square operation table over {0, ..., n-1}; at(x, y) = x * y.
struct OpTable {
    int n = 0;
    std::vector<int> entries;  // row-major, size n*n

    int at(int x, int y) const { return entries[static_cast<size_t>(x) * n + y]; }
    void set(int x, int y, int v) { entries[static_cast<size_t>(x) * n + y] = v; }

    friend bool operator==(const OpTable& a, const OpTable& b) = default;
    friend bool operator<(const OpTable& a, const OpTable& b) {
        if (a.n != b.n) return a.n < b.n;
        return a.entries < b.entries;
    }
};

/// Checks squareness and entry range, citing the defect position.
OpTable validate_table(const std::vector<std::vector<int>>& rows);

struct ClassificationFlags {
    bool right_quasigroup = false;  // every row y -> x*y is a permutation
    bool quasigroup = false;        // rows and columns are permutations
    bool idempotent = false;
    bool self_distributive = false;  // x*(y*z) = (x*y)*(x*z)
    bool involutory = false;         // x*(x*y) = y
    bool rack = false;               // right quasigroup + self-distributive
    bool quandle = false;            // rack + idempotent
    bool loos = false;               // see LoosReport
    std::map<std::string, std::vector<int>> witnesses;  // property -> first counterexample
};

ClassificationFlags classify(const OpTable& t);

/// Symmetric-space axioms for the discrete setting: L1 idempotent,
/// L2 self-distributive, L3 involutory, L4 rigid (x*y = y implies x = y).
struct LoosReport {
    bool idempotent = false;
    bool self_distributive = false;
    bool involutory = false;
    bool rigid = false;
    std::map<std::string, std::vector<int>> witnesses;

    bool all() const { return idempotent && self_distributive && involutory && rigid; }
};

LoosReport check_loos(const OpTable& t);

/// Map S : X^2 -> X^2, stored componentwise: S(x, y) = (a(x,y), b(x,y)).
struct FiniteBraidMap {
    int n = 0;
    std::vector<int> a;  // flat n*n
    std::vector<int> b;

    std::pair<int, int> apply(int x, int y) const {
        const size_t i = static_cast<size_t>(x) * n + y;
        return {a[i], b[i]};
    }

    /// S(x, y) = (x*y, x).
    static FiniteBraidMap from_table(const OpTable& t);
};

/// Exhaustive checks: pair_bijection, nondegenerate, braid_relation
/// (S12 S23 S12 = S23 S12 S23 on X^3), and informational involutive.
AuditReport braid_audit(const FiniteBraidMap& s);
AuditReport braid_audit(const OpTable& t);

struct FiniteGroup {
    OpTable table;
    int identity = 0;
    std::vector<int> inverse;

    int mul(int x, int y) const { return table.at(x, y); }
    int inv(int x) const { return inverse[static_cast<size_t>(x)]; }
};

/// Exhaustive group-axiom check; throws std::invalid_argument with a witness.
FiniteGroup validate_group(const OpTable& t);

FiniteGroup cyclic_group(int n);

/// x*y = x y^-1 x.
OpTable make_core_quandle(const FiniteGroup& g);

/// x*y = x alpha(x^-1 y); alpha must be an automorphism of g.
OpTable make_automorphism_quandle(const FiniteGroup& g, const std::vector<int>& alpha);

/// x*y = 2x - y mod n.
OpTable dihedral_table(int n);

/// x*y = y.
OpTable trivial_table(int n);

/// t'[p(x)][p(y)] = p(t[x][y]); p must be a permutation of {0, ..., n-1}.
OpTable relabel(const OpTable& t, const std::vector<int>& perm);

/// Lexicographically least relabeling; equal iff isomorphic.
OpTable canonical_form(const OpTable& t);

struct EnumerationResult {
    std::vector<OpTable> classes;  // canonical forms, sorted
    long labeled = 0;              // count before quotienting by relabeling
};

/// All finite quandles of order n (1 <= n <= 6), by row-wise backtracking
/// with incremental self-distributivity pruning.
EnumerationResult enumerate_quandles(int n);

}  // namespace emalg
