#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "relfuse/dense_tensor.hpp"
#include "relfuse/optim.hpp"
#include "relfuse/semantic_model.hpp"
#include "relfuse/vocab.hpp"

namespace relfuse {

enum class Enumeration {
    full,     ///< every |E|^2 |R| cell per epoch, zeros implicit
    sampled,  ///< all positives plus k random zero-count cells per positive
};

/// Hyperparameters for fitting the Poisson prior. The paper specifies the
/// objective but none of these values; defaults are desk-scale choices.
struct PriorTrainConfig {
    ModelVariant variant = ModelVariant::complex;
    int rank = 10;
    int hidden = 20;
    int epochs = 200;
    double learning_rate = 0.01;
    Optimizer optimizer = Optimizer::adam;
    Enumeration enumeration = Enumeration::full;
    int negatives_per_positive = 5;  ///< sampled mode only, >= 1
    std::uint64_t seed = 0;
};

/// Unnormalized negative Poisson log-likelihood exp(theta) - y*theta (the
/// constant log y! is dropped). theta is clamped to <= 30 inside the exp to
/// guard overflow; clamp events are counted by the training loop.
double poisson_loss(double theta, std::int64_t y);

/// d/d(theta) of poisson_loss, with the same clamp applied inside the exp so
/// an overflowing theta is pushed back instead of diverging.
double poisson_loss_gradient(double theta, std::int64_t y);

struct EpochStats {
    int epoch;
    double loss;          ///< mean poisson_loss over the epoch's cell set,
                          ///< evaluated at the pre-step parameters
    std::int64_t clamps;  ///< number of cells with theta > 30
};

struct PriorTrainResult {
    SemanticModel model;
    std::vector<EpochStats> log;
};

/// Fits exp(theta(s,p,o)) to the triple counts by full-batch gradient
/// descent (one optimizer step per epoch). Full enumeration visits all
/// |E|^2 |R| cells in (s,p,o) order; sampled mode visits every positive plus
/// k freshly drawn zero-count cells per positive per epoch. Deterministic
/// for a fixed seed. Throws DataError if full enumeration exceeds `cap`,
/// NumericError if the loss goes non-finite.
PriorTrainResult train_prior(const TripleCounts& counts, const Vocabulary& vocab,
                             const PriorTrainConfig& cfg, std::size_t cap = kScoreAllCap);

/// exp(theta) for every cell; strictly positive. The exponent is capped at
/// 700 so the result stays finite even for runaway scores.
Tensor3 prior_tensor(const SemanticModel& model, std::size_t cap = kScoreAllCap);

/// One `epoch,loss,clamps` line per epoch, with a header row.
void write_training_log_csv(std::ostream& out, const std::vector<EpochStats>& log);

}  // namespace relfuse
