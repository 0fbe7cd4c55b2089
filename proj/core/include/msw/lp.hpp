#ifndef MSW_LP_HPP
#define MSW_LP_HPP

#include <iosfwd>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace msw::lp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense : char { le = 'L', eq = 'E', ge = 'G' };
enum class Status { optimal, infeasible, unbounded };

/// Raised when the solver cannot certify a result (singular basis that
/// cannot be repaired, iteration runaway). Never silently returns a wrong
/// "optimal".
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Variable {
    std::string name;
    double lb = 0;
    double ub = kInf;
    double obj = 0;
    bool integer = false;
};

struct Row {
    std::string name;
    std::vector<std::pair<int, double>> coeffs;  // (variable index, value)
    Sense sense = Sense::le;
    double rhs = 0;
};

class LpModel {
public:
    int add_variable(std::string name, double lb, double ub, double obj, bool integer = false);
    int add_row(Row row);
    int add_row(std::string name, std::vector<std::pair<int, double>> coeffs, Sense sense, double rhs);

    int num_variables() const { return static_cast<int>(vars_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    const Variable& variable(int j) const { return vars_[j]; }
    Variable& variable(int j) { return vars_[j]; }
    const Row& row(int i) const { return rows_[i]; }
    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Row>& rows() const { return rows_; }

    /// Bounds consistent, coefficients finite, names unique.
    void validate() const;

private:
    std::vector<Variable> vars_;
    std::vector<Row> rows_;
};

/// Simplex basis snapshot; reusable across bound changes and row appends
/// (appended rows enter with their slack basic).
struct Basis {
    std::vector<int> basic;               // per row: structural j >= 0, slack of row r = -(r+1)
    std::vector<signed char> var_stat;    // per structural: 0 lower, 1 upper, 2 basic, 3 free-at-zero
    std::vector<signed char> slack_stat;  // per row, same coding
    bool empty() const { return basic.empty(); }
};

struct LpSolution {
    Status status = Status::optimal;
    double objective = 0;
    std::vector<double> x;              // structural values
    std::vector<double> duals;          // per row (empty unless optimal)
    std::vector<double> reduced_costs;  // per structural (empty unless optimal)
    std::vector<double> farkas;         // per row (empty unless infeasible)
    Basis basis;
    long iterations = 0;
};

/// One-shot solve of the LP relaxation; integrality flags are ignored.
LpSolution solve_lp(const LpModel& model);

/// Reusable solver context: change bounds, append rows, re-solve warm from
/// the previous basis. Not thread-safe; use one context per thread.
class Simplex {
public:
    explicit Simplex(const LpModel& model);
    ~Simplex();
    Simplex(Simplex&&) noexcept;
    Simplex& operator=(Simplex&&) noexcept;
    Simplex(const Simplex&) = delete;
    Simplex& operator=(const Simplex&) = delete;

    void set_bounds(int var, double lb, double ub);
    void set_objective(int var, double obj);
    /// Restore every variable to the bounds of the model given at
    /// construction (appended rows are kept).
    void reset_bounds();
    int add_row(const Row& row);

    int num_rows() const;
    int num_variables() const;

    LpSolution solve();
    LpSolution solve_from(const Basis& basis);
    long solve_count() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Evaluates the bounded-dual objective y'b plus reduced-cost bound terms;
/// equals the primal objective at an optimum.
double dual_objective(const LpModel& model, const LpSolution& sol);

/// True iff `ray` certifies infeasibility: correctly signed per row sense
/// and sup over the variable box of ray'Ax falls short of ray'b.
bool check_farkas(const LpModel& model, const std::vector<double>& ray, double tol = 1e-7);

/// Plain-text listing of the model (objective, rows, bounds), for debugging.
void write_lp_text(const LpModel& model, std::ostream& out);

}  // namespace msw::lp

#endif
