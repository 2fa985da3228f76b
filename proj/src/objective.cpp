#include "shac/objective.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "shac/errors.hpp"

namespace shac {

std::string direction_name(Direction d) {
    return d == Direction::kMaximize ? "maximize" : "minimize";
}

Direction direction_from_name(std::string_view name) {
    if (name == "maximize") {
        return Direction::kMaximize;
    }
    if (name == "minimize") {
        return Direction::kMinimize;
    }
    throw ConfigError("unknown direction: " + std::string(name));
}

double branin(double x1, double x2) {
    constexpr double pi = std::numbers::pi;
    constexpr double a = 1.0;
    const double b = 5.1 / (4.0 * pi * pi);
    const double c = 5.0 / pi;
    constexpr double r = 6.0;
    constexpr double s = 10.0;
    const double t = 1.0 / (8.0 * pi);

    const double u = x2 - b * x1 * x1 + c * x1 - r;
    return a * u * u + s * (1.0 - t) * std::cos(x1) + s;
}

double hartmann6(std::span<const double> x) {
    static constexpr std::array<double, 4> alpha = {1.0, 1.2, 3.0, 3.2};
    static constexpr std::array<std::array<double, 6>, 4> a = {{
        {10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
        {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
        {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
        {17.0, 8.0, 0.05, 10.0, 0.1, 14.0},
    }};
    static constexpr std::array<std::array<double, 6>, 4> p = {{
        {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
        {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
        {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
        {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381},
    }};

    if (x.size() != 6) {
        throw DomainError("hartmann6 expects a 6-D point");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        double inner = 0.0;
        for (std::size_t j = 0; j < 6; ++j) {
            const double d = x[j] - p[i][j];
            inner += a[i][j] * d * d;
        }
        sum += alpha[i] * std::exp(-inner);
    }
    return -sum;
}

Objective branin_objective() {
    SearchSpace space({ContinuousUniform{-5.0, 10.0}, ContinuousUniform{0.0, 15.0}});
    Objective obj;
    obj.name = "branin";
    obj.direction = Direction::kMinimize;
    obj.space = space;
    obj.evaluate = [space](const Point& p) {
        if (!space.contains(p)) {
            throw DomainError("branin: point outside [-5,10] x [0,15]");
        }
        return branin(p.coords[0], p.coords[1]);
    };
    return obj;
}

Objective hartmann6_objective() {
    SearchSpace space(std::vector<ParamDomain>(6, ContinuousUniform{0.0, 1.0}));
    Objective obj;
    obj.name = "hartmann6";
    obj.direction = Direction::kMinimize;
    obj.space = space;
    obj.evaluate = [space](const Point& p) {
        if (!space.contains(p)) {
            throw DomainError("hartmann6: point outside the unit hypercube");
        }
        return hartmann6(p.coords);
    };
    return obj;
}

Objective objective_by_name(std::string_view name) {
    if (name == "branin") {
        return branin_objective();
    }
    if (name == "hartmann6") {
        return hartmann6_objective();
    }
    throw ConfigError("unknown objective: " + std::string(name));
}

Objective as_maximization(Objective f) {
    if (f.direction == Direction::kMaximize) {
        return f;
    }
    f.direction = Direction::kMaximize;
    f.evaluate = [inner = std::move(f.evaluate)](const Point& p) { return -inner(p); };
    return f;
}

void BudgetConfig::validate() const {
    if (total_budget <= 0) {
        throw ConfigError("total budget must be positive");
    }
    if (workers <= 0) {
        throw ConfigError("worker count must be positive");
    }
    if (total_budget % workers != 0) {
        throw ConfigError("worker count must divide the total budget");
    }
}

std::int64_t BudgetConfig::batches() const {
    validate();
    return total_budget / workers;
}

} // namespace shac
