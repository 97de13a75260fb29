#include "relfuse/semantic_model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "relfuse/errors.hpp"

namespace relfuse {

std::string to_string(ModelVariant variant) {
    switch (variant) {
        case ModelVariant::distmult: return "distmult";
        case ModelVariant::complex: return "complex";
        case ModelVariant::multiway_nn: return "multiwaynn";
        case ModelVariant::rescal: return "rescal";
    }
    throw std::logic_error("unknown model variant");
}

ModelVariant model_variant_from_string(std::string_view name) {
    if (name == "distmult") return ModelVariant::distmult;
    if (name == "complex") return ModelVariant::complex;
    if (name == "multiwaynn") return ModelVariant::multiway_nn;
    if (name == "rescal") return ModelVariant::rescal;
    throw DataError("unknown model variant '" + std::string(name) +
                    "' (expected distmult|complex|multiwaynn|rescal)");
}

std::size_t SemanticModel::parameter_count(const ModelShape& shape) {
    const auto ne = static_cast<std::size_t>(shape.num_entities);
    const auto nr = static_cast<std::size_t>(shape.num_relations);
    const auto d = static_cast<std::size_t>(shape.rank);
    const auto z = static_cast<std::size_t>(shape.hidden);
    switch (shape.variant) {
        case ModelVariant::distmult: return ne * d + nr * d;
        case ModelVariant::complex: return 2 * ne * d + 2 * nr * d;
        case ModelVariant::multiway_nn: return ne * d + nr * d + z * 3 * d + z + z + 1;
        case ModelVariant::rescal: return ne * d + nr * d * d;
    }
    throw std::logic_error("unknown model variant");
}

SemanticModel::SemanticModel(const ModelShape& shape) : shape_(shape) {
    if (shape.num_entities <= 0 || shape.num_relations <= 0)
        throw std::invalid_argument("model requires a nonempty vocabulary");
    if (shape.rank <= 0) throw std::invalid_argument("rank must be positive");
    if (shape.variant == ModelVariant::multiway_nn && shape.hidden <= 0)
        throw std::invalid_argument("multiwaynn requires positive hidden width");
    if (shape.variant != ModelVariant::multiway_nn) shape_.hidden = 0;
    params_.assign(parameter_count(shape_), 0.0);
}

SemanticModel SemanticModel::random_init(const ModelShape& shape, std::uint64_t seed) {
    SemanticModel model(shape);
    std::mt19937_64 rng(seed);
    const double bound = 1.0 / std::sqrt(static_cast<double>(shape.rank));
    std::uniform_real_distribution<double> unif(-bound, bound);
    const double hidden_bound = 1.0 / std::sqrt(3.0 * static_cast<double>(shape.rank));
    std::uniform_real_distribution<double> hidden_unif(-hidden_bound, hidden_bound);

    const std::size_t hidden_begin =
        (shape.variant == ModelVariant::multiway_nn) ? model.hidden_weights_offset() : 0;
    const std::size_t hidden_end =
        (shape.variant == ModelVariant::multiway_nn)
            ? model.output_weights_offset()  // W and b1
            : 0;
    for (std::size_t i = 0; i < model.params_.size(); ++i) {
        const bool hidden_layer =
            shape.variant == ModelVariant::multiway_nn && i >= hidden_begin && i < hidden_end;
        model.params_[i] = hidden_layer ? hidden_unif(rng) : unif(rng);
    }
    return model;
}

void SemanticModel::check_ids(int s, int p, int o) const {
    if (s < 0 || s >= shape_.num_entities || o < 0 || o >= shape_.num_entities)
        throw std::out_of_range("entity id out of range for model");
    if (p < 0 || p >= shape_.num_relations)
        throw std::out_of_range("relation id out of range for model");
}

std::size_t SemanticModel::entity_offset(int id) const {
    return static_cast<std::size_t>(id) * static_cast<std::size_t>(shape_.rank);
}

std::size_t SemanticModel::entity_imag_offset(int id) const {
    return (static_cast<std::size_t>(shape_.num_entities) + static_cast<std::size_t>(id)) *
           static_cast<std::size_t>(shape_.rank);
}

std::size_t SemanticModel::relation_offset(int id) const {
    const auto ne = static_cast<std::size_t>(shape_.num_entities);
    const auto d = static_cast<std::size_t>(shape_.rank);
    switch (shape_.variant) {
        case ModelVariant::distmult:
        case ModelVariant::multiway_nn:
            return ne * d + static_cast<std::size_t>(id) * d;
        case ModelVariant::complex:
            return 2 * ne * d + static_cast<std::size_t>(id) * d;
        case ModelVariant::rescal:
            return ne * d + static_cast<std::size_t>(id) * d * d;
    }
    throw std::logic_error("unknown model variant");
}

std::size_t SemanticModel::relation_imag_offset(int id) const {
    const auto ne = static_cast<std::size_t>(shape_.num_entities);
    const auto nr = static_cast<std::size_t>(shape_.num_relations);
    const auto d = static_cast<std::size_t>(shape_.rank);
    return 2 * ne * d + nr * d + static_cast<std::size_t>(id) * d;
}

std::size_t SemanticModel::hidden_weights_offset() const {
    const auto ne = static_cast<std::size_t>(shape_.num_entities);
    const auto nr = static_cast<std::size_t>(shape_.num_relations);
    const auto d = static_cast<std::size_t>(shape_.rank);
    return ne * d + nr * d;
}

std::size_t SemanticModel::hidden_bias_offset() const {
    const auto z = static_cast<std::size_t>(shape_.hidden);
    const auto d = static_cast<std::size_t>(shape_.rank);
    return hidden_weights_offset() + z * 3 * d;
}

std::size_t SemanticModel::output_weights_offset() const {
    return hidden_bias_offset() + static_cast<std::size_t>(shape_.hidden);
}

std::size_t SemanticModel::output_bias_offset() const {
    return output_weights_offset() + static_cast<std::size_t>(shape_.hidden);
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::logic_error(what);
}

}  // namespace

std::span<double> SemanticModel::entity_vector(int id) {
    require(shape_.variant != ModelVariant::complex, "entity_vector: complex stores re/im parts");
    check_ids(id, 0, id);
    return std::span<double>(params_).subspan(entity_offset(id),
                                              static_cast<std::size_t>(shape_.rank));
}

std::span<const double> SemanticModel::entity_vector(int id) const {
    return const_cast<SemanticModel*>(this)->entity_vector(id);
}

std::span<double> SemanticModel::entity_real(int id) {
    require(shape_.variant == ModelVariant::complex, "entity_real: complex only");
    check_ids(id, 0, id);
    return std::span<double>(params_).subspan(entity_offset(id),
                                              static_cast<std::size_t>(shape_.rank));
}

std::span<double> SemanticModel::entity_imag(int id) {
    require(shape_.variant == ModelVariant::complex, "entity_imag: complex only");
    check_ids(id, 0, id);
    return std::span<double>(params_).subspan(entity_imag_offset(id),
                                              static_cast<std::size_t>(shape_.rank));
}

std::span<const double> SemanticModel::entity_real(int id) const {
    return const_cast<SemanticModel*>(this)->entity_real(id);
}

std::span<const double> SemanticModel::entity_imag(int id) const {
    return const_cast<SemanticModel*>(this)->entity_imag(id);
}

std::span<double> SemanticModel::relation_vector(int id) {
    require(shape_.variant == ModelVariant::distmult || shape_.variant == ModelVariant::multiway_nn,
            "relation_vector: distmult/multiwaynn only");
    check_ids(0, id, 0);
    return std::span<double>(params_).subspan(relation_offset(id),
                                              static_cast<std::size_t>(shape_.rank));
}

std::span<const double> SemanticModel::relation_vector(int id) const {
    return const_cast<SemanticModel*>(this)->relation_vector(id);
}

std::span<double> SemanticModel::relation_real(int id) {
    require(shape_.variant == ModelVariant::complex, "relation_real: complex only");
    check_ids(0, id, 0);
    return std::span<double>(params_).subspan(relation_offset(id),
                                              static_cast<std::size_t>(shape_.rank));
}

std::span<double> SemanticModel::relation_imag(int id) {
    require(shape_.variant == ModelVariant::complex, "relation_imag: complex only");
    check_ids(0, id, 0);
    return std::span<double>(params_).subspan(relation_imag_offset(id),
                                              static_cast<std::size_t>(shape_.rank));
}

std::span<const double> SemanticModel::relation_real(int id) const {
    return const_cast<SemanticModel*>(this)->relation_real(id);
}

std::span<const double> SemanticModel::relation_imag(int id) const {
    return const_cast<SemanticModel*>(this)->relation_imag(id);
}

std::span<double> SemanticModel::relation_matrix(int id) {
    require(shape_.variant == ModelVariant::rescal, "relation_matrix: rescal only");
    check_ids(0, id, 0);
    const auto d = static_cast<std::size_t>(shape_.rank);
    return std::span<double>(params_).subspan(relation_offset(id), d * d);
}

std::span<const double> SemanticModel::relation_matrix(int id) const {
    return const_cast<SemanticModel*>(this)->relation_matrix(id);
}

std::span<double> SemanticModel::hidden_weights() {
    require(shape_.variant == ModelVariant::multiway_nn, "hidden_weights: multiwaynn only");
    const auto z = static_cast<std::size_t>(shape_.hidden);
    const auto d = static_cast<std::size_t>(shape_.rank);
    return std::span<double>(params_).subspan(hidden_weights_offset(), z * 3 * d);
}

std::span<double> SemanticModel::hidden_bias() {
    require(shape_.variant == ModelVariant::multiway_nn, "hidden_bias: multiwaynn only");
    return std::span<double>(params_).subspan(hidden_bias_offset(),
                                              static_cast<std::size_t>(shape_.hidden));
}

std::span<double> SemanticModel::output_weights() {
    require(shape_.variant == ModelVariant::multiway_nn, "output_weights: multiwaynn only");
    return std::span<double>(params_).subspan(output_weights_offset(),
                                              static_cast<std::size_t>(shape_.hidden));
}

double& SemanticModel::output_bias() {
    require(shape_.variant == ModelVariant::multiway_nn, "output_bias: multiwaynn only");
    return params_[output_bias_offset()];
}

double SemanticModel::score(int s, int p, int o) const {
    check_ids(s, p, o);
    const int d = shape_.rank;
    switch (shape_.variant) {
        case ModelVariant::distmult: {
            const double* as = params_.data() + entity_offset(s);
            const double* rp = params_.data() + relation_offset(p);
            const double* ao = params_.data() + entity_offset(o);
            // (a_s * a_o) * r keeps the score bit-identical under s<->o swap.
            double acc = 0.0;
            for (int i = 0; i < d; ++i) acc += (as[i] * ao[i]) * rp[i];
            return acc;
        }
        case ModelVariant::complex: {
            const double* sr = params_.data() + entity_offset(s);
            const double* si = params_.data() + entity_imag_offset(s);
            const double* rr = params_.data() + relation_offset(p);
            const double* ri = params_.data() + relation_imag_offset(p);
            const double* orr = params_.data() + entity_offset(o);
            const double* oi = params_.data() + entity_imag_offset(o);
            // Re(<a_s, r_p, conj(a_o)>)
            double acc = 0.0;
            for (int i = 0; i < d; ++i) {
                acc += sr[i] * rr[i] * orr[i];
                acc += si[i] * rr[i] * oi[i];
                acc += sr[i] * ri[i] * oi[i];
                acc -= si[i] * ri[i] * orr[i];
            }
            return acc;
        }
        case ModelVariant::multiway_nn: {
            const double* as = params_.data() + entity_offset(s);
            const double* rp = params_.data() + relation_offset(p);
            const double* ao = params_.data() + entity_offset(o);
            const double* w = params_.data() + hidden_weights_offset();
            const double* b1 = params_.data() + hidden_bias_offset();
            const double* beta = params_.data() + output_weights_offset();
            const int z = shape_.hidden;
            double acc = params_[output_bias_offset()];
            for (int k = 0; k < z; ++k) {
                const double* row = w + static_cast<std::size_t>(k) * 3 * d;
                double u = b1[k];
                for (int i = 0; i < d; ++i) u += row[i] * as[i];
                for (int i = 0; i < d; ++i) u += row[d + i] * rp[i];
                for (int i = 0; i < d; ++i) u += row[2 * d + i] * ao[i];
                acc += beta[k] * std::tanh(u);
            }
            return acc;
        }
        case ModelVariant::rescal: {
            const double* as = params_.data() + entity_offset(s);
            const double* rp = params_.data() + relation_offset(p);
            const double* ao = params_.data() + entity_offset(o);
            double acc = 0.0;
            for (int i = 0; i < d; ++i) {
                double row = 0.0;
                for (int j = 0; j < d; ++j) row += rp[static_cast<std::size_t>(i) * d + j] * ao[j];
                acc += as[i] * row;
            }
            return acc;
        }
    }
    throw std::logic_error("unknown model variant");
}

void SemanticModel::accumulate_score_gradient(int s, int p, int o, double upstream,
                                              std::span<double> grad) const {
    check_ids(s, p, o);
    if (grad.size() != params_.size())
        throw std::invalid_argument("gradient buffer size mismatch");
    const int d = shape_.rank;
    switch (shape_.variant) {
        case ModelVariant::distmult: {
            const double* as = params_.data() + entity_offset(s);
            const double* rp = params_.data() + relation_offset(p);
            const double* ao = params_.data() + entity_offset(o);
            double* gs = grad.data() + entity_offset(s);
            double* gr = grad.data() + relation_offset(p);
            double* go = grad.data() + entity_offset(o);
            for (int i = 0; i < d; ++i) {
                gs[i] += upstream * rp[i] * ao[i];
                gr[i] += upstream * as[i] * ao[i];
                go[i] += upstream * as[i] * rp[i];
            }
            return;
        }
        case ModelVariant::complex: {
            const double* sr = params_.data() + entity_offset(s);
            const double* si = params_.data() + entity_imag_offset(s);
            const double* rr = params_.data() + relation_offset(p);
            const double* ri = params_.data() + relation_imag_offset(p);
            const double* orr = params_.data() + entity_offset(o);
            const double* oi = params_.data() + entity_imag_offset(o);
            double* gsr = grad.data() + entity_offset(s);
            double* gsi = grad.data() + entity_imag_offset(s);
            double* grr = grad.data() + relation_offset(p);
            double* gri = grad.data() + relation_imag_offset(p);
            double* gor = grad.data() + entity_offset(o);
            double* goi = grad.data() + entity_imag_offset(o);
            for (int i = 0; i < d; ++i) {
                gsr[i] += upstream * (rr[i] * orr[i] + ri[i] * oi[i]);
                gsi[i] += upstream * (rr[i] * oi[i] - ri[i] * orr[i]);
                grr[i] += upstream * (sr[i] * orr[i] + si[i] * oi[i]);
                gri[i] += upstream * (sr[i] * oi[i] - si[i] * orr[i]);
                gor[i] += upstream * (sr[i] * rr[i] - si[i] * ri[i]);
                goi[i] += upstream * (si[i] * rr[i] + sr[i] * ri[i]);
            }
            return;
        }
        case ModelVariant::multiway_nn: {
            const double* as = params_.data() + entity_offset(s);
            const double* rp = params_.data() + relation_offset(p);
            const double* ao = params_.data() + entity_offset(o);
            const double* w = params_.data() + hidden_weights_offset();
            const double* b1 = params_.data() + hidden_bias_offset();
            const double* beta = params_.data() + output_weights_offset();
            const int z = shape_.hidden;

            double* gs = grad.data() + entity_offset(s);
            double* gr = grad.data() + relation_offset(p);
            double* go = grad.data() + entity_offset(o);
            double* gw = grad.data() + hidden_weights_offset();
            double* gb1 = grad.data() + hidden_bias_offset();
            double* gbeta = grad.data() + output_weights_offset();

            for (int k = 0; k < z; ++k) {
                const double* row = w + static_cast<std::size_t>(k) * 3 * d;
                double u = b1[k];
                for (int i = 0; i < d; ++i) u += row[i] * as[i];
                for (int i = 0; i < d; ++i) u += row[d + i] * rp[i];
                for (int i = 0; i < d; ++i) u += row[2 * d + i] * ao[i];
                const double h = std::tanh(u);
                gbeta[k] += upstream * h;
                const double g = upstream * beta[k] * (1.0 - h * h);
                gb1[k] += g;
                double* grow = gw + static_cast<std::size_t>(k) * 3 * d;
                for (int i = 0; i < d; ++i) {
                    grow[i] += g * as[i];
                    grow[d + i] += g * rp[i];
                    grow[2 * d + i] += g * ao[i];
                    gs[i] += g * row[i];
                    gr[i] += g * row[d + i];
                    go[i] += g * row[2 * d + i];
                }
            }
            grad[output_bias_offset()] += upstream;
            return;
        }
        case ModelVariant::rescal: {
            const double* as = params_.data() + entity_offset(s);
            const double* rp = params_.data() + relation_offset(p);
            const double* ao = params_.data() + entity_offset(o);
            double* gs = grad.data() + entity_offset(s);
            double* gr = grad.data() + relation_offset(p);
            double* go = grad.data() + entity_offset(o);
            for (int i = 0; i < d; ++i) {
                const double asi = as[i];
                double row_dot = 0.0;
                for (int j = 0; j < d; ++j) {
                    const double rij = rp[static_cast<std::size_t>(i) * d + j];
                    row_dot += rij * ao[j];
                    gr[static_cast<std::size_t>(i) * d + j] += upstream * asi * ao[j];
                    go[j] += upstream * asi * rij;
                }
                gs[i] += upstream * row_dot;
            }
            return;
        }
    }
    throw std::logic_error("unknown model variant");
}

std::vector<double> SemanticModel::score_gradient(int s, int p, int o, double upstream) const {
    std::vector<double> grad(params_.size(), 0.0);
    accumulate_score_gradient(s, p, o, upstream, grad);
    return grad;
}

Tensor3 SemanticModel::score_all(std::size_t cap) const {
    const auto ne = static_cast<std::size_t>(shape_.num_entities);
    const auto nr = static_cast<std::size_t>(shape_.num_relations);
    if (ne * nr * ne > cap)
        throw DataError("score_all: |E|^2 |R| = " + std::to_string(ne * nr * ne) +
                        " exceeds cap " + std::to_string(cap));
    Tensor3 out(shape_.num_entities, shape_.num_relations);
    for (int s = 0; s < shape_.num_entities; ++s)
        for (int p = 0; p < shape_.num_relations; ++p)
            for (int o = 0; o < shape_.num_entities; ++o) out.at(s, p, o) = score(s, p, o);
    return out;
}

bool SemanticModel::parameters_finite() const {
    for (double v : params_)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace relfuse
