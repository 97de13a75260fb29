#include "relfuse/prior_training.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "relfuse/errors.hpp"
#include "relfuse/log.hpp"

namespace relfuse {

std::string to_string(Optimizer opt) {
    return opt == Optimizer::sgd ? "sgd" : "adam";
}

Optimizer optimizer_from_string(std::string_view name) {
    if (name == "sgd") return Optimizer::sgd;
    if (name == "adam") return Optimizer::adam;
    throw DataError("unknown optimizer '" + std::string(name) + "' (expected sgd|adam)");
}

OptimizerState::OptimizerState(Optimizer kind, std::size_t num_params, double learning_rate)
    : kind_(kind), learning_rate_(learning_rate) {
    if (learning_rate <= 0) throw std::invalid_argument("learning rate must be positive");
    if (kind_ == Optimizer::adam) {
        first_moment_.assign(num_params, 0.0);
        second_moment_.assign(num_params, 0.0);
    }
}

void OptimizerState::step(std::span<double> params, std::span<const double> grad) {
    if (params.size() != grad.size()) throw std::invalid_argument("param/grad size mismatch");
    if (kind_ == Optimizer::sgd) {
        for (std::size_t i = 0; i < params.size(); ++i)
            params[i] -= learning_rate_ * grad[i];
        return;
    }
    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;
    ++step_count_;
    const double correction1 = 1.0 - std::pow(beta1, static_cast<double>(step_count_));
    const double correction2 = 1.0 - std::pow(beta2, static_cast<double>(step_count_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        first_moment_[i] = beta1 * first_moment_[i] + (1.0 - beta1) * grad[i];
        second_moment_[i] = beta2 * second_moment_[i] + (1.0 - beta2) * grad[i] * grad[i];
        const double m_hat = first_moment_[i] / correction1;
        const double v_hat = second_moment_[i] / correction2;
        params[i] -= learning_rate_ * m_hat / (std::sqrt(v_hat) + eps);
    }
}

namespace {
constexpr double kThetaClamp = 30.0;
}

double poisson_loss(double theta, std::int64_t y) {
    const double clamped = std::min(theta, kThetaClamp);
    return std::exp(clamped) - static_cast<double>(y) * theta;
}

double poisson_loss_gradient(double theta, std::int64_t y) {
    const double clamped = std::min(theta, kThetaClamp);
    return std::exp(clamped) - static_cast<double>(y);
}

PriorTrainResult train_prior(const TripleCounts& counts, const Vocabulary& vocab,
                             const PriorTrainConfig& cfg, std::size_t cap) {
    if (vocab.num_entities() == 0 || vocab.num_relations() == 0)
        throw DataError("train_prior: empty vocabulary");
    if (counts.num_entities() != vocab.num_entities() ||
        counts.num_relations() != vocab.num_relations())
        throw DataError("train_prior: counts and vocabulary disagree on sizes");
    if (cfg.epochs < 0) throw std::invalid_argument("epochs must be >= 0");
    if (cfg.enumeration == Enumeration::sampled && cfg.negatives_per_positive < 1)
        throw std::invalid_argument("sampled mode requires k >= 1 negatives per positive");

    const int ne = vocab.num_entities();
    const int nr = vocab.num_relations();
    const std::size_t num_cells = static_cast<std::size_t>(ne) * static_cast<std::size_t>(nr) *
                                  static_cast<std::size_t>(ne);
    if (cfg.enumeration == Enumeration::full && num_cells > cap)
        throw DataError("train_prior: full enumeration over " + std::to_string(num_cells) +
                        " cells exceeds cap " + std::to_string(cap));

    ModelShape shape{cfg.variant, ne, nr, cfg.rank, cfg.hidden};
    SemanticModel model = SemanticModel::random_init(shape, cfg.seed);

    OptimizerState opt(cfg.optimizer, model.parameters().size(), cfg.learning_rate);
    std::vector<double> grad(model.parameters().size(), 0.0);
    std::vector<EpochStats> epoch_log;
    epoch_log.reserve(static_cast<std::size_t>(cfg.epochs));

    const std::vector<TripleEntry> positives = counts.entries();
    std::mt19937_64 sampler(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> entity_dist(0, ne - 1);
    std::uniform_int_distribution<int> relation_dist(0, nr - 1);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double loss_sum = 0.0;
        std::int64_t clamps = 0;
        std::size_t visited = 0;

        auto visit = [&](int s, int p, int o, std::int64_t y) {
            const double theta = model.score(s, p, o);
            if (theta > kThetaClamp) ++clamps;
            loss_sum += poisson_loss(theta, y);
            model.accumulate_score_gradient(s, p, o, poisson_loss_gradient(theta, y), grad);
            ++visited;
        };

        if (cfg.enumeration == Enumeration::full) {
            for (int s = 0; s < ne; ++s)
                for (int p = 0; p < nr; ++p)
                    for (int o = 0; o < ne; ++o) visit(s, p, o, counts.count(s, p, o));
        } else {
            for (const TripleEntry& e : positives) {
                visit(e.subject, e.predicate, e.object, e.count);
                for (int k = 0; k < cfg.negatives_per_positive; ++k) {
                    int s, p, o;
                    do {
                        s = entity_dist(sampler);
                        p = relation_dist(sampler);
                        o = entity_dist(sampler);
                    } while (counts.count(s, p, o) != 0);
                    visit(s, p, o, 0);
                }
            }
            if (visited == 0)
                throw DataError("train_prior: sampled mode needs at least one observed triple");
        }

        const double mean_loss = loss_sum / static_cast<double>(visited);
        if (!std::isfinite(mean_loss))
            throw NumericError("train_prior: non-finite loss at epoch " + std::to_string(epoch));
        const double scale = 1.0 / static_cast<double>(visited);
        for (double& g : grad) g *= scale;
        opt.step(model.parameters(), grad);
        if (!model.parameters_finite())
            throw NumericError("train_prior: non-finite parameters at epoch " +
                               std::to_string(epoch));
        epoch_log.push_back(EpochStats{epoch, mean_loss, clamps});
    }

    if (!epoch_log.empty())
        log::debug("train_prior: final mean loss " + std::to_string(epoch_log.back().loss));
    return PriorTrainResult{std::move(model), std::move(epoch_log)};
}

Tensor3 prior_tensor(const SemanticModel& model, std::size_t cap) {
    Tensor3 scores = model.score_all(cap);
    for (double& v : scores.data()) v = std::exp(std::min(v, 700.0));
    return scores;
}

void write_training_log_csv(std::ostream& out, const std::vector<EpochStats>& log) {
    out << "epoch,loss,clamps\n";
    char buf[64];
    for (const EpochStats& e : log) {
        std::snprintf(buf, sizeof(buf), "%.6f", e.loss);
        out << e.epoch << ',' << buf << ',' << e.clamps << '\n';
    }
}

}  // namespace relfuse
