#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relfuse/dense_tensor.hpp"

namespace relfuse {

enum class ModelVariant : std::uint8_t {
    distmult = 0,
    complex = 1,
    multiway_nn = 2,
    rescal = 3,
};

std::string to_string(ModelVariant variant);
ModelVariant model_variant_from_string(std::string_view name);

struct ModelShape {
    ModelVariant variant = ModelVariant::distmult;
    int num_entities = 0;
    int num_relations = 0;
    int rank = 0;
    int hidden = 0;  ///< multiway_nn only
};

/// Default cap on |E|*|R|*|E| for full-tensor enumeration.
inline constexpr std::size_t kScoreAllCap = 10'000'000;

/// One of the four triple score functions theta(s,p,o), with its parameters
/// held in a single flat vector so optimizers and checkpoints stay generic.
///
/// Flat layout (row-major within each block):
///   distmult:    E[|E| x d], R[|R| x d]
///   complex:     E_re[|E| x d], E_im[|E| x d], R_re[|R| x d], R_im[|R| x d]
///   multiway_nn: E[|E| x d], R[|R| x d], W[z x 3d], b1[z], beta[z], b2[1]
///   rescal:      E[|E| x d], R[|R| x d x d]
class SemanticModel {
public:
    explicit SemanticModel(const ModelShape& shape);

    /// Entries uniform in [-1/sqrt(d), 1/sqrt(d)]; the multiway hidden layer
    /// (W, b1) uses [-1/sqrt(3d), 1/sqrt(3d)]. Draw order is flat-vector
    /// order, so a fixed seed fixes every parameter.
    static SemanticModel random_init(const ModelShape& shape, std::uint64_t seed);

    double score(int s, int p, int o) const;

    /// Adds upstream * d(theta)/d(param) into `grad` (same length as
    /// parameters()). Only parameters touched by (s,p,o) are updated;
    /// repeated rows (s == o) accumulate both contributions.
    void accumulate_score_gradient(int s, int p, int o, double upstream,
                                   std::span<double> grad) const;

    /// Dense gradient vector with zeros at untouched parameters.
    std::vector<double> score_gradient(int s, int p, int o, double upstream) const;

    /// theta for every (s,p,o). Throws DataError if |E|^2 |R| exceeds `cap`.
    Tensor3 score_all(std::size_t cap = kScoreAllCap) const;

    const ModelShape& shape() const { return shape_; }
    ModelVariant variant() const { return shape_.variant; }
    int num_entities() const { return shape_.num_entities; }
    int num_relations() const { return shape_.num_relations; }
    int rank() const { return shape_.rank; }
    int hidden() const { return shape_.hidden; }

    std::span<double> parameters() { return params_; }
    std::span<const double> parameters() const { return params_; }
    bool parameters_finite() const;

    // Typed views into the flat vector. Calling an accessor that does not
    // exist for the variant throws std::logic_error.
    std::span<double> entity_vector(int id);
    std::span<const double> entity_vector(int id) const;
    std::span<double> entity_real(int id);
    std::span<double> entity_imag(int id);
    std::span<const double> entity_real(int id) const;
    std::span<const double> entity_imag(int id) const;
    std::span<double> relation_vector(int id);
    std::span<const double> relation_vector(int id) const;
    std::span<double> relation_real(int id);
    std::span<double> relation_imag(int id);
    std::span<const double> relation_real(int id) const;
    std::span<const double> relation_imag(int id) const;
    std::span<double> relation_matrix(int id);
    std::span<const double> relation_matrix(int id) const;
    std::span<double> hidden_weights();  ///< W, z rows of 3d
    std::span<double> hidden_bias();     ///< b1
    std::span<double> output_weights();  ///< beta
    double& output_bias();               ///< b2

    static std::size_t parameter_count(const ModelShape& shape);

private:
    void check_ids(int s, int p, int o) const;

    std::size_t entity_offset(int id) const;       // real part for complex
    std::size_t entity_imag_offset(int id) const;  // complex only
    std::size_t relation_offset(int id) const;     // real part for complex
    std::size_t relation_imag_offset(int id) const;
    std::size_t hidden_weights_offset() const;
    std::size_t hidden_bias_offset() const;
    std::size_t output_weights_offset() const;
    std::size_t output_bias_offset() const;

    ModelShape shape_;
    std::vector<double> params_;
};

}  // namespace relfuse
