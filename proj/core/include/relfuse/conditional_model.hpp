#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "relfuse/optim.hpp"

namespace relfuse {

/// Index of the largest entry; ties break to the lowest index.
int argmax_lowest_id(std::span<const double> values);

/// p(subject) * p(object) * p(predicate), the triple confidence of the
/// conditional pipeline.
double triple_confidence(double p_subject, double p_object, double p_predicate);

/// One training row: subject/object class ids, the precomputed feature of
/// the union region, and the true predicate id.
struct CondExample {
    int subject;
    int object;
    std::vector<double> feature;
    int predicate;
};

/// Feedforward predictor of p(p | s, o, i_p):
///   softmax(W2 tanh(W1 [a_s, a_o, M h] + b1) + b2)
/// with entity lookup A, feature projection r = M h, and an MLP over the
/// concatenated [a_s, a_o, r].
///
/// Flat parameter layout: A[|E| x d], M[d x f], W1[z x 3d], b1[z],
/// W2[|R| x z], b2[|R|].
class ConditionalModel {
public:
    ConditionalModel(int num_entities, int num_relations, int rank, int hidden, int feature_dim);

    static ConditionalModel random_init(int num_entities, int num_relations, int rank, int hidden,
                                        int feature_dim, std::uint64_t seed);

    /// Probability vector over |R|; entries >= 0 and sum to 1.
    std::vector<double> predicate_distribution(int s, int o, std::span<const double> feature) const;

    /// Cross-entropy -log p(true predicate) for one example; adds
    /// scale * d(loss)/d(param) into `grad` when grad is nonempty.
    double example_loss(const CondExample& example, std::span<double> grad, double scale) const;

    int num_entities() const { return num_entities_; }
    int num_relations() const { return num_relations_; }
    int rank() const { return rank_; }
    int hidden() const { return hidden_; }
    int feature_dim() const { return feature_dim_; }

    std::span<double> parameters() { return params_; }
    std::span<const double> parameters() const { return params_; }
    bool parameters_finite() const;

    std::span<double> entity_row(int id);
    std::span<const double> entity_row(int id) const;
    std::span<double> projection();      ///< M, d rows of f
    std::span<double> hidden_weights();  ///< W1, z rows of 3d
    std::span<double> hidden_bias();     ///< b1
    std::span<double> output_weights();  ///< W2, |R| rows of z
    std::span<double> output_bias();     ///< b2

private:
    struct Forward;
    Forward forward(int s, int o, std::span<const double> feature) const;
    void check_example(int s, int o, std::span<const double> feature) const;

    std::size_t projection_offset() const;
    std::size_t hidden_weights_offset() const;
    std::size_t hidden_bias_offset() const;
    std::size_t output_weights_offset() const;
    std::size_t output_bias_offset() const;

    int num_entities_;
    int num_relations_;
    int rank_;
    int hidden_;
    int feature_dim_;
    std::vector<double> params_;
};

struct CondTrainConfig {
    int rank = 10;
    int hidden = 20;
    int epochs = 200;
    double learning_rate = 0.01;
    Optimizer optimizer = Optimizer::adam;
    std::uint64_t seed = 0;
};

struct CondEpochStats {
    int epoch;
    double loss;  ///< mean cross-entropy at the pre-step parameters
};

struct CondTrainResult {
    ConditionalModel model;
    std::vector<CondEpochStats> log;
};

/// Minimizes mean cross-entropy by full-batch gradient descent, one
/// optimizer step per epoch. The feature dimension is read from the first
/// example. Throws NumericError on divergence.
CondTrainResult train_conditional(std::span<const CondExample> examples, int num_entities,
                                  int num_relations, const CondTrainConfig& cfg);

struct PairPrediction {
    int subject;
    int predicate;
    int object;
    double confidence;
};

/// Picks argmax subject/object from the detector vectors (ties to lowest
/// id), then the argmax predicate from the conditional model, with Eq.-9
/// product confidence. Detector vectors must sum to 1 within 1e-6.
PairPrediction predict_pair(const ConditionalModel& model, std::span<const double> subject_scores,
                            std::span<const double> object_scores,
                            std::span<const double> feature);

}  // namespace relfuse
