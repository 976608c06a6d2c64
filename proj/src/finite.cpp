#include "emalg/finite.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace emalg {

namespace {

bool is_permutation_of_range(const std::vector<int>& v, int n) {
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int x : v) {
        if (x < 0 || x >= n || seen[static_cast<size_t>(x)]) return false;
        seen[static_cast<size_t>(x)] = true;
    }
    return static_cast<int>(v.size()) == n;
}

std::string cell_str(int x, int y) {
    std::ostringstream os;
    os << "(" << x << ", " << y << ")";
    return os.str();
}

}  // namespace

OpTable validate_table(const std::vector<std::vector<int>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw TableFormatError(-1, -1, "table is empty");
    OpTable t{n, std::vector<int>(static_cast<size_t>(n) * n)};
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != n) {
            std::ostringstream os;
            os << "row " << i << ": expected " << n << " entries, got "
               << rows[static_cast<size_t>(i)].size();
            throw TableFormatError(i, -1, os.str());
        }
        for (int j = 0; j < n; ++j) {
            const int v = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (v < 0 || v >= n) {
                std::ostringstream os;
                os << "entry " << cell_str(i, j) << " out of range: " << v << " (order " << n
                   << ")";
                throw TableFormatError(i, j, os.str());
            }
            t.set(i, j, v);
        }
    }
    return t;
}

ClassificationFlags classify(const OpTable& t) {
    const int n = t.n;
    ClassificationFlags f;
    const auto note = [&](const std::string& prop, std::vector<int> w) {
        f.witnesses.emplace(prop, std::move(w));
    };

    f.right_quasigroup = true;
    for (int x = 0; x < n && f.right_quasigroup; ++x) {
        std::vector<int> row(t.entries.begin() + static_cast<long>(x) * n,
                             t.entries.begin() + static_cast<long>(x + 1) * n);
        if (!is_permutation_of_range(row, n)) {
            f.right_quasigroup = false;
            note("right_quasigroup", {x});
        }
    }

    f.quasigroup = f.right_quasigroup;
    for (int y = 0; y < n && f.quasigroup; ++y) {
        std::vector<int> col(static_cast<size_t>(n));
        for (int x = 0; x < n; ++x) col[static_cast<size_t>(x)] = t.at(x, y);
        if (!is_permutation_of_range(col, n)) {
            f.quasigroup = false;
            note("quasigroup", {y});
        }
    }

    f.idempotent = true;
    for (int x = 0; x < n && f.idempotent; ++x)
        if (t.at(x, x) != x) {
            f.idempotent = false;
            note("idempotent", {x});
        }

    f.self_distributive = true;
    for (int x = 0; x < n && f.self_distributive; ++x)
        for (int y = 0; y < n && f.self_distributive; ++y)
            for (int z = 0; z < n; ++z)
                if (t.at(x, t.at(y, z)) != t.at(t.at(x, y), t.at(x, z))) {
                    f.self_distributive = false;
                    note("self_distributive", {x, y, z});
                    break;
                }

    f.involutory = true;
    for (int x = 0; x < n && f.involutory; ++x)
        for (int y = 0; y < n; ++y)
            if (t.at(x, t.at(x, y)) != y) {
                f.involutory = false;
                note("involutory", {x, y});
                break;
            }

    f.rack = f.right_quasigroup && f.self_distributive;
    f.quandle = f.rack && f.idempotent;

    const LoosReport loos = check_loos(t);
    f.loos = loos.all();
    if (!loos.rigid) {
        const auto it = loos.witnesses.find("rigid");
        if (it != loos.witnesses.end()) note("rigid", it->second);
    }
    return f;
}

LoosReport check_loos(const OpTable& t) {
    const int n = t.n;
    LoosReport r;
    const auto note = [&](const std::string& prop, std::vector<int> w) {
        r.witnesses.emplace(prop, std::move(w));
    };

    r.idempotent = true;
    for (int x = 0; x < n && r.idempotent; ++x)
        if (t.at(x, x) != x) {
            r.idempotent = false;
            note("idempotent", {x});
        }

    r.self_distributive = true;
    for (int x = 0; x < n && r.self_distributive; ++x)
        for (int y = 0; y < n && r.self_distributive; ++y)
            for (int z = 0; z < n; ++z)
                if (t.at(x, t.at(y, z)) != t.at(t.at(x, y), t.at(x, z))) {
                    r.self_distributive = false;
                    note("self_distributive", {x, y, z});
                    break;
                }

    r.involutory = true;
    for (int x = 0; x < n && r.involutory; ++x)
        for (int y = 0; y < n; ++y)
            if (t.at(x, t.at(x, y)) != y) {
                r.involutory = false;
                note("involutory", {x, y});
                break;
            }

    r.rigid = true;
    for (int x = 0; x < n && r.rigid; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y && t.at(x, y) == y) {
                r.rigid = false;
                note("rigid", {x, y});
                break;
            }
    return r;
}

FiniteBraidMap FiniteBraidMap::from_table(const OpTable& t) {
    FiniteBraidMap s;
    s.n = t.n;
    s.a.resize(static_cast<size_t>(t.n) * t.n);
    s.b.resize(s.a.size());
    for (int x = 0; x < t.n; ++x)
        for (int y = 0; y < t.n; ++y) {
            const size_t i = static_cast<size_t>(x) * t.n + y;
            s.a[i] = t.at(x, y);
            s.b[i] = x;
        }
    return s;
}

AuditReport braid_audit(const FiniteBraidMap& s) {
    const int n = s.n;
    AuditReport report;
    report.subject = "braid:n=" + std::to_string(n);

    const auto witness2 = [](int x, int y) {
        return "x=" + std::to_string(x) + " y=" + std::to_string(y);
    };

    {
        CheckResult c{"pair_bijection", static_cast<long>(n) * n, true, true, ""};
        std::vector<bool> hit(static_cast<size_t>(n) * n, false);
        for (int x = 0; x < n && c.pass; ++x)
            for (int y = 0; y < n; ++y) {
                const auto [a, b] = s.apply(x, y);
                const size_t i = static_cast<size_t>(a) * n + b;
                if (hit[i]) {
                    c.pass = false;
                    c.witness = witness2(x, y) + " collides in the image";
                    break;
                }
                hit[i] = true;
            }
        report.checks.push_back(std::move(c));
    }

    {
        CheckResult c{"nondegenerate", 2L * n * n, true, true, ""};
        for (int x = 0; x < n && c.pass; ++x) {
            std::vector<int> img(static_cast<size_t>(n));
            for (int y = 0; y < n; ++y) img[static_cast<size_t>(y)] = s.apply(x, y).first;
            if (!is_permutation_of_range(img, n)) {
                c.pass = false;
                c.witness = "first component not bijective at x=" + std::to_string(x);
            }
        }
        for (int y = 0; y < n && c.pass; ++y) {
            std::vector<int> img(static_cast<size_t>(n));
            for (int x = 0; x < n; ++x) img[static_cast<size_t>(x)] = s.apply(x, y).second;
            if (!is_permutation_of_range(img, n)) {
                c.pass = false;
                c.witness = "second component not bijective at y=" + std::to_string(y);
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        CheckResult c{"braid_relation", static_cast<long>(n) * n * n, true, true, ""};
        const auto s12 = [&](std::array<int, 3> p) {
            const auto [a, b] = s.apply(p[0], p[1]);
            return std::array<int, 3>{a, b, p[2]};
        };
        const auto s23 = [&](std::array<int, 3> p) {
            const auto [a, b] = s.apply(p[1], p[2]);
            return std::array<int, 3>{p[0], a, b};
        };
        for (int x = 0; x < n && c.pass; ++x)
            for (int y = 0; y < n && c.pass; ++y)
                for (int z = 0; z < n; ++z) {
                    const std::array<int, 3> p{x, y, z};
                    if (s12(s23(s12(p))) != s23(s12(s23(p)))) {
                        c.pass = false;
                        c.witness = witness2(x, y) + " z=" + std::to_string(z);
                        break;
                    }
                }
        report.checks.push_back(std::move(c));
    }

    {
        CheckResult c{"involutive", static_cast<long>(n) * n, true, false, ""};
        for (int x = 0; x < n && c.pass; ++x)
            for (int y = 0; y < n; ++y) {
                const auto [a, b] = s.apply(x, y);
                if (s.apply(a, b) != std::pair<int, int>{x, y}) {
                    c.pass = false;
                    c.witness = witness2(x, y);
                    break;
                }
            }
        report.checks.push_back(std::move(c));
    }
    return report;
}

AuditReport braid_audit(const OpTable& t) { return braid_audit(FiniteBraidMap::from_table(t)); }

FiniteGroup validate_group(const OpTable& t) {
    const int n = t.n;
    const auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };

    int identity = -1;
    for (int e = 0; e < n && identity < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = t.at(e, x) == x && t.at(x, e) == x;
        if (ok) identity = e;
    }
    if (identity < 0) fail("group table has no identity element");

    std::vector<int> inverse(static_cast<size_t>(n), -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y)
            if (t.at(x, y) == identity && t.at(y, x) == identity) {
                inverse[static_cast<size_t>(x)] = y;
                break;
            }
        if (inverse[static_cast<size_t>(x)] < 0)
            fail("element " + std::to_string(x) + " has no inverse");
    }

    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (t.at(t.at(x, y), z) != t.at(x, t.at(y, z)))
                    fail("associativity fails at " + cell_str(x, y) + " z=" + std::to_string(z));

    return FiniteGroup{t, identity, std::move(inverse)};
}

FiniteGroup cyclic_group(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
    OpTable t{n, std::vector<int>(static_cast<size_t>(n) * n)};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t.set(a, b, (a + b) % n);
    return validate_group(t);
}

OpTable make_core_quandle(const FiniteGroup& g) {
    const int n = g.table.n;
    OpTable t{n, std::vector<int>(static_cast<size_t>(n) * n)};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t.set(x, y, g.mul(g.mul(x, g.inv(y)), x));
    return t;
}

OpTable make_automorphism_quandle(const FiniteGroup& g, const std::vector<int>& alpha) {
    const int n = g.table.n;
    if (!is_permutation_of_range(alpha, n))
        throw std::invalid_argument("alpha is not a permutation of the carrier");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const size_t sx = static_cast<size_t>(x), sy = static_cast<size_t>(y);
            if (alpha[static_cast<size_t>(g.mul(x, y))] != g.mul(alpha[sx], alpha[sy]))
                throw std::invalid_argument("alpha is not an automorphism: fails at " +
                                            cell_str(x, y));
        }
    OpTable t{n, std::vector<int>(static_cast<size_t>(n) * n)};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            t.set(x, y, g.mul(x, alpha[static_cast<size_t>(g.mul(g.inv(x), y))]));
    return t;
}

OpTable dihedral_table(int n) {
    if (n < 1) throw std::invalid_argument("dihedral quandle order must be positive");
    OpTable t{n, std::vector<int>(static_cast<size_t>(n) * n)};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t.set(x, y, ((2 * x - y) % n + n) % n);
    return t;
}

OpTable trivial_table(int n) {
    if (n < 1) throw std::invalid_argument("table order must be positive");
    OpTable t{n, std::vector<int>(static_cast<size_t>(n) * n)};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t.set(x, y, y);
    return t;
}

OpTable relabel(const OpTable& t, const std::vector<int>& perm) {
    const int n = t.n;
    if (!is_permutation_of_range(perm, n))
        throw std::invalid_argument("relabeling is not a permutation of the carrier");
    OpTable out{n, std::vector<int>(static_cast<size_t>(n) * n)};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            out.set(perm[static_cast<size_t>(x)], perm[static_cast<size_t>(y)],
                    perm[static_cast<size_t>(t.at(x, y))]);
    return out;
}

OpTable canonical_form(const OpTable& t) {
    const int n = t.n;
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> inv(static_cast<size_t>(n));
    std::vector<int> best;  // empty until the first candidate is complete
    std::vector<int> cand(static_cast<size_t>(n) * n);
    do {
        for (int i = 0; i < n; ++i) inv[static_cast<size_t>(perm[static_cast<size_t>(i)])] = i;
        bool worse = false, better = best.empty();
        for (int i = 0; i < n && !worse; ++i)
            for (int j = 0; j < n; ++j) {
                const size_t k = static_cast<size_t>(i) * n + j;
                const int v = perm[static_cast<size_t>(
                    t.at(inv[static_cast<size_t>(i)], inv[static_cast<size_t>(j)]))];
                cand[k] = v;
                if (!better) {
                    if (v > best[k]) {
                        worse = true;
                        break;
                    }
                    if (v < best[k]) better = true;
                }
            }
        if (better && !worse) best = cand;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return OpTable{n, std::move(best)};
}

namespace {

// Self-distributivity triples (x, y, z) become checkable once rows x, y and
// t[x][y] are all filled; after placing row r, exactly the triples whose
// maximum such index equals r are new.
bool sd_consistent_with_row(const OpTable& t, int r) {
    const int n = t.n;
    for (int x = 0; x <= r; ++x)
        for (int y = 0; y <= r; ++y) {
            const int txy = t.at(x, y);
            if (txy > r) continue;
            if (x != r && y != r && txy != r) continue;
            for (int z = 0; z < n; ++z)
                if (t.at(x, t.at(y, z)) != t.at(txy, t.at(x, z))) return false;
        }
    return true;
}

void enumerate_rows(OpTable& t, int r, const std::vector<std::vector<int>>& perms,
                    std::set<std::vector<int>>& classes, long& labeled) {
    const int n = t.n;
    if (r == n) {
        ++labeled;
        classes.insert(canonical_form(t).entries);
        return;
    }
    for (const auto& row : perms) {
        if (row[static_cast<size_t>(r)] != r) continue;
        for (int y = 0; y < n; ++y) t.set(r, y, row[static_cast<size_t>(y)]);
        if (sd_consistent_with_row(t, r)) enumerate_rows(t, r + 1, perms, classes, labeled);
    }
    for (int y = 0; y < n; ++y) t.set(r, y, -1);
}

}  // namespace

EnumerationResult enumerate_quandles(int n) {
    if (n < 1 || n > 6)
        throw std::out_of_range("quandle enumeration supports orders 1 through 6, got " +
                                std::to_string(n));
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    OpTable t{n, std::vector<int>(static_cast<size_t>(n) * n, -1)};
    std::set<std::vector<int>> classes;
    long labeled = 0;
    enumerate_rows(t, 0, perms, classes, labeled);

    EnumerationResult out;
    out.labeled = labeled;
    for (auto& e : classes) out.classes.push_back(OpTable{n, e});
    return out;
}

}  // namespace emalg
