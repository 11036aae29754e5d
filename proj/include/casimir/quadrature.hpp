#ifndef CASIMIR_QUADRATURE_HPP
#define CASIMIR_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <vector>

namespace casimir {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
};

/// Raised when the node budget is exhausted; carries the partial estimate.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& msg, QuadResult partial)
        : std::runtime_error(msg), partial_(partial) {}
    const QuadResult& partial() const { return partial_; }

  private:
    QuadResult partial_;
};

/// Evaluates the integrand at a batch of points. Implementations may run
/// the batch in parallel; element i of the result must correspond to
/// point i, so the caller's fixed-order reduction is bit-reproducible.
using BatchFn = std::function<void(const std::vector<double>& points,
                                   std::vector<double>& values)>;

/// Adaptive Gauss-Kronrod 7-15 on [a, b]. Optional interior seed points
/// force an initial partition (needed when the integrand's support is a
/// small fraction of the interval). Deterministic: segment selection and
/// summation order depend only on computed values, never on thread timing.
QuadResult integrate_gk(const BatchFn& f, double a, double b,
                        double rel_tol, double abs_tol, long max_evals,
                        const std::vector<double>& seeds = {});

/// Serial convenience wrapper.
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, double abs_tol, long max_evals,
                        const std::vector<double>& seeds = {});

}  // namespace casimir

#endif
