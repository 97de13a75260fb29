#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relfuse {

enum class Optimizer { sgd, adam };

std::string to_string(Optimizer opt);
Optimizer optimizer_from_string(std::string_view name);

/// Full-vector gradient step. `adam` keeps per-parameter first/second
/// moments (beta1 0.9, beta2 0.999, eps 1e-8) with bias correction.
class OptimizerState {
public:
    OptimizerState(Optimizer kind, std::size_t num_params, double learning_rate);

    void step(std::span<double> params, std::span<const double> grad);

private:
    Optimizer kind_;
    double learning_rate_;
    long step_count_ = 0;
    std::vector<double> first_moment_;
    std::vector<double> second_moment_;
};

}  // namespace relfuse
