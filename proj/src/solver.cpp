#include "dlal/solver.hpp"

#include <deque>
#include <limits>
#include <stdexcept>

namespace dlal {

// ---------------------------------------------------------------------------
// Boolean phase
// ---------------------------------------------------------------------------

BooleanResult solve_boolean_minimal(const std::vector<Constraint>& atoms) {
    struct Edge {
        BoolParam to;
        std::size_t atom;
    };
    std::map<BoolParam, std::vector<Edge>> edges;
    std::map<BoolParam, std::pair<std::size_t, std::optional<BoolParam>>> reason;  // atom, predecessor
    std::deque<BoolParam> queue;
    BoolAssignment all;

    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Atom& a = atoms[i].atom;
        switch (a.kind) {
            case Atom::Kind::BoolEq:
                edges[a.b1].push_back({a.b2, i});
                edges[a.b2].push_back({a.b1, i});
                all[a.b1] = all[a.b2] = false;
                break;
            case Atom::Kind::BoolImpl:
                edges[a.b1].push_back({a.b2, i});
                all[a.b1] = all[a.b2] = false;
                break;
            case Atom::Kind::BoolConst:
                all[a.b1] = false;
                if (a.value && reason.emplace(a.b1, std::make_pair(i, std::nullopt)).second) queue.push_back(a.b1);
                break;
            default: throw std::invalid_argument("not a boolean atom: " + to_string(a));
        }
    }

    while (!queue.empty()) {
        BoolParam b = queue.front();
        queue.pop_front();
        for (const Edge& e : edges[b])
            if (reason.emplace(e.to, std::make_pair(e.atom, b)).second) queue.push_back(e.to);
    }

    BooleanResult out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Atom& a = atoms[i].atom;
        if (a.kind != Atom::Kind::BoolConst || a.value || !reason.count(a.b1)) continue;
        out.conflict = a.b1;
        std::vector<Constraint> chain;
        for (std::optional<BoolParam> b = a.b1; b;) {
            const auto& [atom, pred] = reason.at(*b);
            chain.push_back(atoms[atom]);
            b = pred;
        }
        out.trace.assign(chain.rbegin(), chain.rend());
        out.trace.push_back(atoms[i]);
        return out;
    }
    for (auto& [b, v] : all) v = reason.count(b) > 0;
    out.assignment = std::move(all);
    return out;
}

std::vector<Constraint> apply_guards(const BoolAssignment& psi, const std::vector<Constraint>& mixed) {
    std::vector<Constraint> out;
    for (const auto& c : mixed) {
        auto it = psi.find(c.atom.b1);
        if (it != psi.end() && it->second) out.push_back(Constraint{Atom::lin_geq(c.atom.lhs, c.atom.k), c.rule, c.path});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Linear phase
// ---------------------------------------------------------------------------

LinearRow to_row(const Atom& a, const Constraint* origin) {
    LinearRow row;
    row.origin = origin;
    for (const auto& [p, k] : a.lhs.terms()) row.coeffs[p] += k;
    switch (a.kind) {
        case Atom::Kind::LinEq:
            for (const auto& [p, k] : a.rhs.terms()) row.coeffs[p] -= k;
            row.equality = true;
            break;
        case Atom::Kind::LinGeq: row.rhs = a.k; break;
        case Atom::Kind::LinEq0:
            row.rhs = a.k;
            row.equality = true;
            break;
        default: throw std::invalid_argument("not a linear atom: " + to_string(a));
    }
    for (auto it = row.coeffs.begin(); it != row.coeffs.end();)
        it = it->second == 0 ? row.coeffs.erase(it) : std::next(it);
    return row;
}

namespace {

class Tableau {
public:
    Tableau(const std::vector<LinearRow>& rows, std::map<IntParam, std::size_t>& index, std::vector<IntParam>& vars) {
        for (const auto& r : rows)
            for (const auto& [p, a] : r.coeffs)
                if (index.emplace(p, vars.size()).second) vars.push_back(p);
        std::size_t slacks = 0;
        for (const auto& r : rows) slacks += !r.equality;
        m_ = rows.size();
        first_slack_ = 2 * vars.size();
        first_art_ = first_slack_ + slacks;
        n_ = first_art_ + m_;
        t_.assign(m_, std::vector<Rational>(n_));
        b_.resize(m_);
        basis_.resize(m_);
        std::size_t s = first_slack_;
        for (std::size_t i = 0; i < m_; ++i) {
            const LinearRow& r = rows[i];
            for (const auto& [p, a] : r.coeffs) {
                t_[i][2 * index[p]] = a;
                t_[i][2 * index[p] + 1] = -a;
            }
            if (!r.equality) t_[i][s++] = -1;
            b_[i] = r.rhs;
            if (b_[i] < 0) {
                for (auto& x : t_[i]) x = -x;
                b_[i] = -b_[i];
            }
            t_[i][first_art_ + i] = 1;
            basis_[i] = first_art_ + i;
        }
    }

    // Minimizes the sum of artificials.
    void phase1() {
        d_.assign(n_, 0);
        z_ = 0;
        for (std::size_t j = first_art_; j < n_; ++j) d_[j] = 1;
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j)
                if (sgn(t_[i][j]) != 0) d_[j] -= t_[i][j];
            z_ += b_[i];
        }
        run(n_);
    }

    // Minimizes sum(x+ - x-) over the given variable columns; artificials
    // never re-enter.
    void phase2(const std::vector<std::size_t>& cols) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < first_art_) continue;
            for (std::size_t j = 0; j < first_art_; ++j)
                if (sgn(t_[i][j]) != 0) {
                    pivot(i, j);
                    break;
                }
        }
        std::vector<Rational> c(n_);
        for (std::size_t v : cols) {
            c[2 * v] = 1;
            c[2 * v + 1] = -1;
        }
        d_ = c;
        z_ = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational& cb = c[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (sgn(t_[i][j]) != 0) d_[j] -= cb * t_[i][j];
            z_ += cb * b_[i];
        }
        run(first_art_);
    }

    const Rational& objective() const { return z_; }
    std::size_t pivots() const { return pivots_; }

    Rational value(std::size_t col) const {
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] == col) return b_[i];
        return 0;
    }

    // Phase-1 dual multiplier of row i.
    Rational dual(std::size_t i) const { return 1 - d_[first_art_ + i]; }

private:
    // Bland's rule: lowest-index improving column, lowest-index leaving basis.
    void run(std::size_t enterable) {
        for (;;) {
            std::size_t j = 0;
            while (j < enterable && sgn(d_[j]) >= 0) ++j;
            if (j == enterable) return;
            std::size_t r = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (sgn(t_[i][j]) <= 0) continue;
                Rational ratio = b_[i] / t_[i][j];
                if (r == m_ || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
                    r = i;
                    best = ratio;
                }
            }
            if (r == m_) return;  // unbounded direction
            pivot(r, j);
        }
    }

    void pivot(std::size_t r, std::size_t j) {
        ++pivots_;
        std::vector<Rational>& row = t_[r];
        Rational p = row[j];
        std::vector<std::size_t> nz;
        for (std::size_t k = 0; k < n_; ++k)
            if (sgn(row[k]) != 0) {
                row[k] /= p;
                nz.push_back(k);
            }
        b_[r] /= p;
        Rational f;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || sgn(t_[i][j]) == 0) continue;
            f = t_[i][j];
            for (std::size_t k : nz) t_[i][k] -= f * row[k];
            b_[i] -= f * b_[r];
        }
        if (sgn(d_[j]) != 0) {
            f = d_[j];
            for (std::size_t k : nz) d_[k] -= f * row[k];
            z_ += f * b_[r];
        }
        basis_[r] = j;
    }

    std::size_t m_ = 0, n_ = 0, first_slack_ = 0, first_art_ = 0, pivots_ = 0;
    std::vector<std::vector<Rational>> t_;
    std::vector<Rational> b_, d_;
    std::vector<std::size_t> basis_;
    Rational z_;
};

}  // namespace

LpResult lp_feasible(const std::vector<LinearRow>& rows, const std::vector<IntParam>& minimize) {
    std::map<IntParam, std::size_t> index;
    std::vector<IntParam> vars;
    Tableau tab(rows, index, vars);
    tab.phase1();

    LpResult out;
    out.infeasibility = tab.objective();
    out.feasible = sgn(out.infeasibility) == 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (sgn(tab.dual(i)) != 0) out.certificate.push_back(i);
    if (out.feasible) {
        if (!minimize.empty()) {
            std::vector<std::size_t> cols;
            for (IntParam p : minimize) {
                auto it = index.find(p);
                if (it != index.end()) cols.push_back(it->second);
            }
            tab.phase2(cols);
        }
        for (std::size_t v = 0; v < vars.size(); ++v) out.values[vars[v]] = tab.value(2 * v) - tab.value(2 * v + 1);
    }
    out.pivots = tab.pivots();
    return out;
}

std::map<IntParam, std::int64_t> scale_to_integers(const std::map<IntParam, Rational>& values) {
    mpz_class l = 1;
    for (const auto& [p, v] : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    std::map<IntParam, std::int64_t> out;
    for (const auto& [p, v] : values) {
        mpz_class s = v.get_num() * (l / v.get_den());
        if (!s.fits_slong_p()) throw std::overflow_error("scaled value out of range for " + to_string(p));
        out[p] = s.get_si();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

const char* to_string(Solution::Status s) {
    switch (s) {
        case Solution::Status::Solved: return "solved";
        case Solution::Status::BooleanUnsat: return "boolean";
        case Solution::Status::LinearUnsat: return "linear";
    }
    return "?";
}

Solution solve_all(const ConstraintStore& store, const SolveOptions& options) {
    using clock = std::chrono::steady_clock;
    auto since = [](clock::time_point t0) {
        return std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0);
    };
    Solution sol;

    auto t0 = clock::now();
    BooleanResult br = solve_boolean_minimal(store.boolean());
    sol.boolean_time = since(t0);
    if (!br.assignment) {
        sol.status = Solution::Status::BooleanUnsat;
        sol.conflict = br.conflict;
        sol.certificate = std::move(br.trace);
        return sol;
    }
    BoolAssignment psi = *br.assignment;
    for (BoolParam b : store.bool_params()) psi.try_emplace(b, false);

    t0 = clock::now();
    std::vector<Constraint> guarded = apply_guards(psi, store.mixed());
    sol.guarded = guarded.size();
    std::vector<LinearRow> rows;
    for (const auto& c : store.linear()) rows.push_back(to_row(c.atom, &c));
    for (const auto& c : guarded) rows.push_back(to_row(c.atom, &c));
    sol.lp_rows = rows.size();

    std::vector<IntParam> objective;
    if (options.minimize)
        for (IntParam p : store.int_params())
            if (!p.door) objective.push_back(p);
    LpResult lp = lp_feasible(rows, objective);
    sol.pivots = lp.pivots;
    sol.linear_time = since(t0);
    if (!lp.feasible) {
        sol.status = Solution::Status::LinearUnsat;
        sol.infeasibility = lp.infeasibility;
        for (std::size_t i : lp.certificate) sol.certificate.push_back(*rows[i].origin);
        return sol;
    }

    t0 = clock::now();
    sol.phi.booleans = std::move(psi);
    sol.phi.integers = scale_to_integers(lp.values);
    sol.scaling_time = since(t0);
    // Scaling preserves homogeneous atoms only; goal atoms c = k are not.
    if (auto bad = store.first_violation(sol.phi))
        throw std::runtime_error("scaled solution violates " + to_string(bad->atom) + " (" + bad->rule + ")");
    return sol;
}

}  // namespace dlal
