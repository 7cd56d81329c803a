#ifndef QBCH_ERRORS_HPP
#define QBCH_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace qbch {

/// A series handed to the Lie projection is not a Lie polynomial.
class NotALieElementError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A closed-form estimate was evaluated outside the region where it holds.
/// Carries the violated inequality `lhs_expr = lhs >= rhs_expr = rhs`.
class DomainError : public std::domain_error {
public:
    DomainError(std::string lhs_expr, double lhs, std::string rhs_expr, double rhs, std::string relation = "<")
        : std::domain_error(format(lhs_expr, lhs, rhs_expr, rhs, relation)),
          lhs_expr_(std::move(lhs_expr)),
          rhs_expr_(std::move(rhs_expr)),
          relation_(std::move(relation)),
          lhs_(lhs),
          rhs_(rhs) {}

    const std::string& lhs_expr() const { return lhs_expr_; }
    const std::string& rhs_expr() const { return rhs_expr_; }
    /// The relation that was required but fails, e.g. "<".
    const std::string& relation() const { return relation_; }
    double lhs() const { return lhs_; }
    double rhs() const { return rhs_; }

private:
    static std::string format(const std::string& l, double lv, const std::string& r, double rv,
                              const std::string& rel) {
        char buf[160];
        std::snprintf(buf, sizeof buf, " = %.6g, %s = %.6g", lv, r.c_str(), rv);
        return "required " + l + " " + rel + " " + r + " but " + l + buf;
    }

    std::string lhs_expr_;
    std::string rhs_expr_;
    std::string relation_;
    double lhs_;
    double rhs_;
};

/// An iterative method ran out of iterations.
class IterationLimitError : public std::runtime_error {
public:
    IterationLimitError(const std::string& what, int iterations, double last_residual)
        : std::runtime_error(what), iterations_(iterations), last_residual_(last_residual) {}

    int iterations() const { return iterations_; }
    double last_residual() const { return last_residual_; }

private:
    int iterations_;
    double last_residual_;
};

}  // namespace qbch

#endif  // QBCH_ERRORS_HPP
