#include "msw/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

namespace msw::lp {

namespace {
constexpr double kFeasTol = 1e-7;  // primal feasibility
constexpr double kOptTol = 1e-7;   // reduced-cost optimality
constexpr double kPivTol = 1e-9;   // smallest acceptable pivot
constexpr int kRefactorEvery = 100;
}  // namespace

int LpModel::add_variable(std::string name, double lb, double ub, double obj, bool integer) {
    vars_.push_back(Variable{std::move(name), lb, ub, obj, integer});
    return static_cast<int>(vars_.size()) - 1;
}

int LpModel::add_row(Row row) {
    for (const auto& [j, v] : row.coeffs) {
        if (j < 0 || j >= num_variables())
            throw std::invalid_argument("row '" + row.name + "' references unknown variable index " +
                                        std::to_string(j));
        if (!std::isfinite(v)) throw std::invalid_argument("row '" + row.name + "' has a non-finite coefficient");
    }
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("row '" + row.name + "' has a non-finite rhs");
    rows_.push_back(std::move(row));
    return static_cast<int>(rows_.size()) - 1;
}

int LpModel::add_row(std::string name, std::vector<std::pair<int, double>> coeffs, Sense sense, double rhs) {
    return add_row(Row{std::move(name), std::move(coeffs), sense, rhs});
}

void LpModel::validate() const {
    std::set<std::string> names;
    for (const Variable& v : vars_) {
        if (v.lb > v.ub)
            throw std::invalid_argument("variable '" + v.name + "' has inconsistent bounds");
        if (std::isnan(v.lb) || std::isnan(v.ub) || !std::isfinite(v.obj))
            throw std::invalid_argument("variable '" + v.name + "' has invalid bounds or objective");
        if (!names.insert(v.name).second)
            throw std::invalid_argument("duplicate variable name '" + v.name + "'");
    }
}

// ---------------------------------------------------------------------------
// Simplex implementation
//
// Columns 0..n-1 are structural, n..n+m-1 the slack of each row; every row
// is held as an equality A x + s = b with the sense folded into the slack
// bounds. Primal bounded-variable simplex; infeasible starts are repaired
// by a composite phase 1 that prices the sum of bound violations, so any
// basis (in particular a parent node's basis after bound changes or cut
// rows) is a valid warm start. The basis inverse is kept dense and
// refactorized periodically.
// ---------------------------------------------------------------------------

struct Simplex::Impl {
    enum : signed char { AtLower = 0, AtUpper = 1, Basic = 2, FreeZero = 3 };

    int n = 0;  // structural count
    int m = 0;  // row count
    std::vector<std::vector<std::pair<int, double>>> cols;  // structural columns: (row, coef)
    std::vector<double> rhs;
    std::vector<Sense> senses;
    std::vector<double> lb, ub;              // current structural bounds
    std::vector<double> model_lb, model_ub;  // bounds at construction
    std::vector<double> obj;

    std::vector<int> basic;         // per row: global column
    std::vector<signed char> stat;  // per global column
    std::vector<double> x;          // per global column
    std::vector<double> binv;       // m*m row-major
    bool basis_ready = false;

    long solves = 0;
    long iterations = 0;
    long degenerate_pivots = 0;
    bool bland = false;
    int pivots_since_refactor = 0;

    // --- column helpers -----------------------------------------------------

    int cols_total() const { return n + m; }
    bool is_slack(int j) const { return j >= n; }

    double glb(int j) const {
        if (j < n) return lb[j];
        switch (senses[j - n]) {
            case Sense::le: return 0;
            case Sense::eq: return 0;
            case Sense::ge: return -kInf;
        }
        return 0;
    }
    double gub(int j) const {
        if (j < n) return ub[j];
        switch (senses[j - n]) {
            case Sense::le: return kInf;
            case Sense::eq: return 0;
            case Sense::ge: return 0;
        }
        return 0;
    }
    double gobj(int j) const { return j < n ? obj[j] : 0.0; }

    template <class F>
    void for_col(int j, F&& f) const {
        if (j < n)
            for (const auto& [r, v] : cols[j]) f(r, v);
        else
            f(j - n, 1.0);
    }

    // --- setup ---------------------------------------------------------------

    void load(const LpModel& model) {
        model.validate();
        n = model.num_variables();
        m = model.num_rows();
        cols.assign(n, {});
        lb.resize(n);
        ub.resize(n);
        obj.resize(n);
        for (int j = 0; j < n; ++j) {
            lb[j] = model.variable(j).lb;
            ub[j] = model.variable(j).ub;
            obj[j] = model.variable(j).obj;
        }
        model_lb = lb;
        model_ub = ub;
        rhs.resize(m);
        senses.resize(m);
        for (int r = 0; r < m; ++r) {
            rhs[r] = model.row(r).rhs;
            senses[r] = model.row(r).sense;
            for (const auto& [j, v] : model.row(r).coeffs)
                if (v != 0.0) cols[j].push_back({r, v});
        }
        basis_ready = false;
    }

    void slack_basis() {
        basic.resize(m);
        stat.assign(cols_total(), AtLower);
        for (int j = 0; j < n; ++j) {
            if (lb[j] > -kInf)
                stat[j] = AtLower;
            else if (ub[j] < kInf)
                stat[j] = AtUpper;
            else
                stat[j] = FreeZero;
        }
        for (int r = 0; r < m; ++r) {
            basic[r] = n + r;
            stat[n + r] = Basic;
        }
        binv.assign(static_cast<std::size_t>(m) * m, 0.0);
        for (int r = 0; r < m; ++r) binv[static_cast<std::size_t>(r) * m + r] = 1.0;
        basis_ready = true;
        pivots_since_refactor = 0;
    }

    bool factorize() {
        // dense Gauss-Jordan inverse of the basis matrix
        std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
        for (int k = 0; k < m; ++k)
            for_col(basic[k], [&](int r, double v) { a[static_cast<std::size_t>(r) * m + k] = v; });
        std::vector<double> inv(static_cast<std::size_t>(m) * m, 0.0);
        for (int r = 0; r < m; ++r) inv[static_cast<std::size_t>(r) * m + r] = 1.0;
        for (int c = 0; c < m; ++c) {
            int p = -1;
            double best = 1e-11;
            for (int r = c; r < m; ++r) {
                double v = std::fabs(a[static_cast<std::size_t>(r) * m + c]);
                if (v > best) {
                    best = v;
                    p = r;
                }
            }
            if (p < 0) return false;
            if (p != c) {
                for (int k = 0; k < m; ++k) {
                    std::swap(a[static_cast<std::size_t>(p) * m + k], a[static_cast<std::size_t>(c) * m + k]);
                    std::swap(inv[static_cast<std::size_t>(p) * m + k], inv[static_cast<std::size_t>(c) * m + k]);
                }
            }
            double piv = a[static_cast<std::size_t>(c) * m + c];
            double s = 1.0 / piv;
            for (int k = 0; k < m; ++k) {
                a[static_cast<std::size_t>(c) * m + k] *= s;
                inv[static_cast<std::size_t>(c) * m + k] *= s;
            }
            for (int r = 0; r < m; ++r) {
                if (r == c) continue;
                double f = a[static_cast<std::size_t>(r) * m + c];
                if (f == 0.0) continue;
                for (int k = 0; k < m; ++k) {
                    a[static_cast<std::size_t>(r) * m + k] -= f * a[static_cast<std::size_t>(c) * m + k];
                    inv[static_cast<std::size_t>(r) * m + k] -= f * inv[static_cast<std::size_t>(c) * m + k];
                }
            }
        }
        binv = std::move(inv);
        pivots_since_refactor = 0;
        return true;
    }

    void place_nonbasics() {
        x.assign(cols_total(), 0.0);
        for (int j = 0; j < cols_total(); ++j) {
            if (stat[j] == Basic) continue;
            double l = glb(j), u = gub(j);
            if (stat[j] == AtLower && l == -kInf) stat[j] = (u < kInf) ? AtUpper : FreeZero;
            if (stat[j] == AtUpper && u == kInf) stat[j] = (l > -kInf) ? AtLower : FreeZero;
            if (stat[j] == AtLower)
                x[j] = l;
            else if (stat[j] == AtUpper)
                x[j] = u;
            else
                x[j] = 0;
        }
    }

    void compute_basics() {
        std::vector<double> r = rhs;
        for (int j = 0; j < n; ++j) {
            if (stat[j] == Basic || x[j] == 0.0) continue;
            for (const auto& [row, v] : cols[j]) r[row] -= v * x[j];
        }
        // nonbasic slacks always sit at zero
        for (int k = 0; k < m; ++k) {
            double acc = 0;
            const double* row = &binv[static_cast<std::size_t>(k) * m];
            for (int i = 0; i < m; ++i) acc += row[i] * r[i];
            x[basic[k]] = acc;
        }
    }

    // --- pricing -------------------------------------------------------------

    // y = cB' * Binv for the given per-column cost function
    template <class Cost>
    void price(Cost&& cost, std::vector<double>& y) const {
        y.assign(m, 0.0);
        for (int k = 0; k < m; ++k) {
            double c = cost(basic[k]);
            if (c == 0.0) continue;
            const double* row = &binv[static_cast<std::size_t>(k) * m];
            for (int i = 0; i < m; ++i) y[i] += c * row[i];
        }
    }

    double reduced_cost(int j, const std::vector<double>& y, double cj) const {
        double acc = cj;
        for_col(j, [&](int r, double v) { acc -= y[r] * v; });
        return acc;
    }

    double phase1_cost(int j) const {
        if (stat[j] != Basic) return 0.0;
        if (x[j] < glb(j) - kFeasTol) return -1.0;
        if (x[j] > gub(j) + kFeasTol) return 1.0;
        return 0.0;
    }

    double infeasibility() const {
        double total = 0;
        for (int k = 0; k < m; ++k) {
            int j = basic[k];
            if (x[j] < glb(j)) total += glb(j) - x[j];
            if (x[j] > gub(j)) total += x[j] - gub(j);
        }
        return total;
    }

    // --- pivoting ------------------------------------------------------------

    void compute_alpha(int enter, std::vector<double>& alpha) const {
        alpha.assign(m, 0.0);
        for_col(enter, [&](int r, double v) {
            for (int i = 0; i < m; ++i) alpha[i] += binv[static_cast<std::size_t>(i) * m + r] * v;
        });
    }

    void update_binv(int row, const std::vector<double>& alpha) {
        double piv = alpha[row];
        double* prow = &binv[static_cast<std::size_t>(row) * m];
        for (int k = 0; k < m; ++k) prow[k] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            double f = alpha[i];
            if (f == 0.0) continue;
            double* irow = &binv[static_cast<std::size_t>(i) * m];
            for (int k = 0; k < m; ++k) irow[k] -= f * prow[k];
        }
    }

    struct RatioResult {
        double t = kInf;
        int leave_pos = -1;      // basis position; -1 = entering bound flip
        signed char leave_to = AtLower;
        bool unbounded = false;
    };

    RatioResult ratio_test(int enter, int sigma, const std::vector<double>& alpha, bool phase1) const {
        RatioResult res;
        double own = gub(enter) - glb(enter);  // inf for one-sided/free columns
        double best_t = kInf;
        for (int k = 0; k < m; ++k) {
            double a = alpha[k];
            if (std::fabs(a) <= kPivTol) continue;
            int j = basic[k];
            double d = -sigma * a;  // change of x_j per unit step
            double l = glb(j), u = gub(j);
            double t;
            if (phase1 && x[j] < l - kFeasTol) {
                if (d <= 0) continue;
                t = (l - x[j]) / d;
            } else if (phase1 && x[j] > u + kFeasTol) {
                if (d >= 0) continue;
                t = (u - x[j]) / d;
            } else if (d < 0) {
                if (l == -kInf) continue;
                t = (l - x[j]) / d;
            } else {
                if (u == kInf) continue;
                t = (u - x[j]) / d;
            }
            if (t < 0) t = 0;
            if (t < best_t) best_t = t;
        }
        if (own <= best_t) {
            if (own == kInf) {
                res.unbounded = true;
                return res;
            }
            res.t = own;
            res.leave_pos = -1;
            return res;
        }
        if (best_t == kInf) {
            res.unbounded = true;
            return res;
        }
        // among blockers near the minimum ratio pick the most stable pivot a
        // (Bland mode: lowest column id, for finite termination)
        double window = best_t + (bland ? 1e-12 : 1e-9);
        int pick = -1;
        double pick_mag = 0;
        for (int k = 0; k < m; ++k) {
            double a = alpha[k];
            if (std::fabs(a) <= kPivTol) continue;
            int j = basic[k];
            double d = -sigma * a;
            double l = glb(j), u = gub(j);
            double t;
            signed char to;
            if (phase1 && x[j] < l - kFeasTol) {
                if (d <= 0) continue;
                t = (l - x[j]) / d;
                to = AtLower;
            } else if (phase1 && x[j] > u + kFeasTol) {
                if (d >= 0) continue;
                t = (u - x[j]) / d;
                to = AtUpper;
            } else if (d < 0) {
                if (l == -kInf) continue;
                t = (l - x[j]) / d;
                to = AtLower;
            } else {
                if (u == kInf) continue;
                t = (u - x[j]) / d;
                to = AtUpper;
            }
            if (t < 0) t = 0;
            if (t > window) continue;
            if (bland) {
                if (pick == -1 || j < basic[pick]) {
                    pick = k;
                    res.leave_to = to;
                }
            } else {
                double mag = std::fabs(a);
                if (pick == -1 || mag > pick_mag + 1e-12 ||
                    (std::fabs(mag - pick_mag) <= 1e-12 && j < basic[pick])) {
                    pick = k;
                    pick_mag = mag;
                    res.leave_to = to;
                }
            }
        }
        res.t = best_t;
        res.leave_pos = pick;
        return res;
    }

    // One simplex phase; returns true when it reached its optimum (phase 1:
    // possibly still infeasible; phase 2: optimal), false on unbounded.
    bool run_phase(bool phase1, std::vector<double>& y) {
        long iter_cap = 200L * (m + cols_total()) + 20000;
        std::vector<double> alpha;
        for (;;) {
            if (++iterations > iter_cap)
                throw NumericalError("simplex iteration limit exceeded (possible numerical breakdown)");
            if (pivots_since_refactor >= kRefactorEvery) {
                if (!factorize()) throw NumericalError("singular basis during refactorization");
                compute_basics();
            }
            if (phase1) {
                price([&](int j) { return phase1_cost(j); }, y);
            } else {
                price([&](int j) { return gobj(j); }, y);
            }

            int enter = -1;
            int sigma = 0;
            double best_score = kOptTol;
            for (int j = 0; j < cols_total(); ++j) {
                if (stat[j] == Basic) continue;
                double l = glb(j), u = gub(j);
                if (l == u) continue;  // fixed, can never improve
                double d = reduced_cost(j, y, phase1 ? 0.0 : gobj(j));
                int s = 0;
                double score = 0;
                if (stat[j] == AtLower) {
                    if (d < -best_score) {
                        s = 1;
                        score = -d;
                    }
                } else if (stat[j] == AtUpper) {
                    if (d > best_score) {
                        s = -1;
                        score = d;
                    }
                } else {  // free at zero
                    if (d < -best_score) {
                        s = 1;
                        score = -d;
                    } else if (d > best_score) {
                        s = -1;
                        score = d;
                    }
                }
                if (s != 0) {
                    enter = j;
                    sigma = s;
                    best_score = score;
                    if (bland) break;  // lowest improving index
                }
            }
            if (enter < 0) return true;

            compute_alpha(enter, alpha);
            RatioResult rr = ratio_test(enter, sigma, alpha, phase1);
            if (rr.unbounded) {
                if (phase1) throw NumericalError("phase 1 claims an unbounded direction");
                return false;
            }
            if (rr.t < 1e-10) {
                if (++degenerate_pivots > 3L * (m + cols_total())) bland = true;
            }
            if (rr.leave_pos < 0) {
                // bound flip: entering moves to its opposite bound
                double t = rr.t;
                for (int k = 0; k < m; ++k)
                    if (alpha[k] != 0.0) x[basic[k]] -= sigma * t * alpha[k];
                x[enter] = (sigma > 0) ? gub(enter) : glb(enter);
                stat[enter] = (sigma > 0) ? AtUpper : AtLower;
                continue;
            }
            int pos = rr.leave_pos;
            int leave = basic[pos];
            if (std::fabs(alpha[pos]) < kPivTol) {
                if (!factorize()) throw NumericalError("singular basis");
                compute_basics();
                continue;  // retry with a fresh inverse
            }
            double t = rr.t;
            x[enter] += sigma * t;
            for (int k = 0; k < m; ++k)
                if (alpha[k] != 0.0) x[basic[k]] -= sigma * t * alpha[k];
            x[leave] = (rr.leave_to == AtLower) ? glb(leave) : gub(leave);  // snap, avoids drift
            stat[leave] = rr.leave_to;
            stat[enter] = Basic;
            basic[pos] = enter;
            update_binv(pos, alpha);
            ++pivots_since_refactor;
        }
    }

    LpSolution finish_optimal(std::vector<double>& y) {
        LpSolution sol;
        sol.status = Status::optimal;
        price([&](int j) { return gobj(j); }, y);
        sol.duals = y;
        sol.x.resize(n);
        double objective = 0;
        for (int j = 0; j < n; ++j) {
            sol.x[j] = x[j];
            objective += obj[j] * x[j];
        }
        sol.objective = objective;
        sol.reduced_costs.resize(n);
        for (int j = 0; j < n; ++j) sol.reduced_costs[j] = reduced_cost(j, y, obj[j]);
        sol.basis = snapshot();
        return sol;
    }

    Basis snapshot() const {
        Basis b;
        b.basic.resize(m);
        for (int k = 0; k < m; ++k) b.basic[k] = basic[k] < n ? basic[k] : -(basic[k] - n + 1);
        b.var_stat.assign(stat.begin(), stat.begin() + n);
        b.slack_stat.resize(m);
        for (int r = 0; r < m; ++r) b.slack_stat[r] = stat[n + r];
        return b;
    }

    bool install(const Basis& b) {
        if (static_cast<int>(b.var_stat.size()) != n) return false;
        if (b.basic.size() > static_cast<std::size_t>(m)) return false;
        if (b.basic.size() != b.slack_stat.size()) return false;
        basic.clear();
        stat.assign(cols_total(), AtLower);
        for (int j = 0; j < n; ++j) stat[j] = b.var_stat[j];
        int old_m = static_cast<int>(b.basic.size());
        for (int r = 0; r < old_m; ++r) {
            int col = b.basic[r] >= 0 ? b.basic[r] : n + (-b.basic[r] - 1);
            basic.push_back(col);
        }
        for (int r = 0; r < old_m; ++r) stat[n + r] = b.slack_stat[r];
        // rows appended after the snapshot enter with their slack basic
        for (int r = old_m; r < m; ++r) {
            basic.push_back(n + r);
            stat[n + r] = Basic;
        }
        for (int k = 0; k < m; ++k)
            if (basic[k] < 0 || basic[k] >= cols_total()) return false;
        return factorize();
    }

    LpSolution run() {
        ++solves;
        degenerate_pivots = 0;
        iterations = 0;
        bland = false;
        if (!basis_ready) slack_basis();
        place_nonbasics();
        compute_basics();
        std::vector<double> y;
        if (infeasibility() > kFeasTol) {
            run_phase(true, y);
            if (infeasibility() > kFeasTol * (1 + std::fabs(rhs_norm()))) {
                // converged with residual violation: infeasible, y certifies it
                price([&](int j) { return phase1_cost(j); }, y);
                LpSolution sol;
                sol.status = Status::infeasible;
                sol.objective = kInf;
                sol.farkas = y;
                sol.basis = snapshot();
                sol.iterations = iterations;
                if (!check_ray(y)) {
                    if (!factorize()) throw NumericalError("singular basis at infeasibility proof");
                    compute_basics();
                    price([&](int j) { return phase1_cost(j); }, y);
                    sol.farkas = y;
                    if (!check_ray(y)) throw NumericalError("phase 1 ended without a valid infeasibility ray");
                }
                return sol;
            }
        }
        if (!run_phase(false, y)) {
            LpSolution sol;
            sol.status = Status::unbounded;
            sol.objective = -kInf;
            sol.basis = snapshot();
            sol.iterations = iterations;
            return sol;
        }
        LpSolution sol = finish_optimal(y);
        sol.iterations = iterations;
        return sol;
    }

    double rhs_norm() const {
        double v = 0;
        for (double r : rhs) v = std::max(v, std::fabs(r));
        return v;
    }

    // Internal ray check mirroring check_farkas (on current bounds).
    bool check_ray(const std::vector<double>& y) const {
        double lhs = 0;
        for (int r = 0; r < m; ++r) {
            if (senses[r] == Sense::le && y[r] > kFeasTol) return false;
            if (senses[r] == Sense::ge && y[r] < -kFeasTol) return false;
            lhs += y[r] * rhs[r];
        }
        double sup = 0;
        for (int j = 0; j < n; ++j) {
            double a = 0;
            for (const auto& [r, v] : cols[j]) a += y[r] * v;
            if (std::fabs(a) <= 1e-12) continue;
            double bound = a > 0 ? ub[j] : lb[j];
            if (bound == kInf || bound == -kInf) return false;
            sup += a * bound;
        }
        return lhs > sup + 1e-9;
    }
};

Simplex::Simplex(const LpModel& model) : impl_(std::make_unique<Impl>()) { impl_->load(model); }
Simplex::~Simplex() = default;
Simplex::Simplex(Simplex&&) noexcept = default;
Simplex& Simplex::operator=(Simplex&&) noexcept = default;

void Simplex::set_bounds(int var, double lb, double ub) {
    if (var < 0 || var >= impl_->n) throw std::invalid_argument("set_bounds: unknown variable");
    if (lb > ub) throw std::invalid_argument("set_bounds: lb > ub");
    impl_->lb[var] = lb;
    impl_->ub[var] = ub;
}

void Simplex::set_objective(int var, double obj) {
    if (var < 0 || var >= impl_->n) throw std::invalid_argument("set_objective: unknown variable");
    impl_->obj[var] = obj;
}

void Simplex::reset_bounds() {
    impl_->lb = impl_->model_lb;
    impl_->ub = impl_->model_ub;
}

int Simplex::add_row(const Row& row) {
    Impl& im = *impl_;
    for (const auto& [j, v] : row.coeffs) {
        if (j < 0 || j >= im.n) throw std::invalid_argument("add_row: unknown variable index");
        if (!std::isfinite(v)) throw std::invalid_argument("add_row: non-finite coefficient");
    }
    int r = im.m;
    im.rhs.push_back(row.rhs);
    im.senses.push_back(row.sense);
    for (const auto& [j, v] : row.coeffs)
        if (v != 0.0) im.cols[j].push_back({r, v});
    if (im.basis_ready) {
        // grow Binv: new basis column is the new slack, whose inverse row is
        // [-a_B' Binv, 1] where a_B are the new row's entries on basic columns
        int old_m = im.m;
        std::vector<double> arow(old_m, 0.0);
        for (const auto& [j, v] : row.coeffs) {
            for (int k = 0; k < old_m; ++k)
                if (im.basic[k] == j) arow[k] += v;
        }
        std::vector<double> grown(static_cast<std::size_t>(old_m + 1) * (old_m + 1), 0.0);
        for (int i = 0; i < old_m; ++i)
            for (int k = 0; k < old_m; ++k)
                grown[static_cast<std::size_t>(i) * (old_m + 1) + k] =
                    im.binv[static_cast<std::size_t>(i) * old_m + k];
        for (int k = 0; k < old_m; ++k) {
            double acc = 0;
            for (int i = 0; i < old_m; ++i)
                acc += arow[i] * im.binv[static_cast<std::size_t>(i) * old_m + k];
            grown[static_cast<std::size_t>(old_m) * (old_m + 1) + k] = -acc;
        }
        grown[static_cast<std::size_t>(old_m) * (old_m + 1) + old_m] = 1.0;
        im.binv = std::move(grown);
        im.m += 1;
        im.basic.push_back(im.n + r);
        im.stat.insert(im.stat.begin() + im.n + r, Impl::Basic);
    } else {
        im.m += 1;
    }
    return r;
}

int Simplex::num_rows() const { return impl_->m; }
int Simplex::num_variables() const { return impl_->n; }
long Simplex::solve_count() const { return impl_->solves; }

LpSolution Simplex::solve() { return impl_->run(); }

LpSolution Simplex::solve_from(const Basis& basis) {
    if (basis.empty() || !impl_->install(basis)) {
        impl_->basis_ready = false;
        return impl_->run();
    }
    impl_->basis_ready = true;
    return impl_->run();
}

LpSolution solve_lp(const LpModel& model) {
    Simplex s(model);
    return s.solve();
}

double dual_objective(const LpModel& model, const LpSolution& sol) {
    double v = 0;
    for (int r = 0; r < model.num_rows(); ++r) v += sol.duals[r] * model.row(r).rhs;
    for (int j = 0; j < model.num_variables(); ++j) {
        double rc = sol.reduced_costs[j];
        const Variable& var = model.variable(j);
        if (rc > kOptTol)
            v += rc * var.lb;
        else if (rc < -kOptTol)
            v += rc * var.ub;
    }
    return v;
}

bool check_farkas(const LpModel& model, const std::vector<double>& ray, double tol) {
    if (static_cast<int>(ray.size()) != model.num_rows()) return false;
    double lhs = 0;
    std::vector<double> acc(model.num_variables(), 0.0);
    for (int r = 0; r < model.num_rows(); ++r) {
        const Row& row = model.row(r);
        if (row.sense == Sense::le && ray[r] > tol) return false;
        if (row.sense == Sense::ge && ray[r] < -tol) return false;
        lhs += ray[r] * row.rhs;
        for (const auto& [j, v] : row.coeffs) acc[j] += ray[r] * v;
    }
    double sup = 0;
    for (int j = 0; j < model.num_variables(); ++j) {
        double a = acc[j];
        if (std::fabs(a) <= tol) continue;
        double bound = a > 0 ? model.variable(j).ub : model.variable(j).lb;
        if (bound == kInf || bound == -kInf) return false;
        sup += a * bound;
    }
    return lhs > sup + tol;
}

void write_lp_text(const LpModel& model, std::ostream& out) {
    out << "minimize\n ";
    bool first = true;
    for (int j = 0; j < model.num_variables(); ++j) {
        const Variable& v = model.variable(j);
        if (v.obj == 0) continue;
        out << (first ? " " : " + ") << v.obj << " " << v.name;
        first = false;
    }
    if (first) out << " 0";
    out << "\nsubject to\n";
    for (const Row& row : model.rows()) {
        out << " " << (row.name.empty() ? "r" : row.name) << ":";
        for (const auto& [j, c] : row.coeffs) out << " + " << c << " " << model.variable(j).name;
        out << (row.sense == Sense::le ? " <= " : row.sense == Sense::ge ? " >= " : " = ") << row.rhs << "\n";
    }
    out << "bounds\n";
    for (const Variable& v : model.variables()) out << " " << v.lb << " <= " << v.name << " <= " << v.ub << "\n";
    out << "integers\n";
    for (const Variable& v : model.variables())
        if (v.integer) out << " " << v.name;
    out << "\nend\n";
}

}  // namespace msw::lp
