#ifndef SHAC_OBJECTIVE_HPP
#define SHAC_OBJECTIVE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "shac/search_space.hpp"

namespace shac {

enum class Direction { kMaximize, kMinimize };

std::string direction_name(Direction d);
Direction direction_from_name(std::string_view name);

/// A black-box objective together with its search space and goal direction.
///
/// Evaluation is pure for the built-in benchmarks and safe to call from any
/// number of concurrent workers. The optimizer itself always maximizes;
/// minimization objectives are adapted at the boundary with as_maximization().
struct Objective {
    std::string name;
    Direction direction = Direction::kMaximize;
    SearchSpace space;
    std::function<double(const Point&)> evaluate;
};

/// Branin function on [-5, 10] x [0, 15]. Three global minima of value
/// ~0.397887, e.g. at (pi, 2.275). To be minimized.
double branin(double x1, double x2);

/// Hartmann 6-D function on the unit hypercube, range roughly (-3.33, 0).
/// Global minimum ~-3.32237. To be minimized.
double hartmann6(std::span<const double> x);

/// Benchmark objectives with domain-checked evaluators.
Objective branin_objective();
Objective hartmann6_objective();

/// Lookup by name ("branin", "hartmann6"); throws ConfigError for unknown names.
Objective objective_by_name(std::string_view name);

/// Negates a minimization objective so the optimizer can maximize it;
/// maximization objectives pass through unchanged.
Objective as_maximization(Objective f);

/// Evaluation budget: N total points evaluated in batches by W parallel workers.
struct BudgetConfig {
    std::int64_t total_budget = 0; // N
    int workers = 0;               // W

    /// Throws ConfigError unless N > 0, W > 0 and W divides N.
    void validate() const;

    /// Number of batches m = N / W.
    std::int64_t batches() const;
};

} // namespace shac

#endif // SHAC_OBJECTIVE_HPP
