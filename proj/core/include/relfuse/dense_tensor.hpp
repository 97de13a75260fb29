#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace relfuse {

/// Dense |E| x |R| x |E| tensor of doubles, row-major (s, p, o).
class Tensor3 {
public:
    Tensor3(int num_entities, int num_relations, double fill = 0.0)
        : num_entities_(num_entities),
          num_relations_(num_relations),
          data_(static_cast<std::size_t>(num_entities) * static_cast<std::size_t>(num_relations) *
                    static_cast<std::size_t>(num_entities),
                fill) {}

    double& at(int s, int p, int o) { return data_[index(s, p, o)]; }
    double at(int s, int p, int o) const { return data_[index(s, p, o)]; }

    int num_entities() const { return num_entities_; }
    int num_relations() const { return num_relations_; }
    std::size_t size() const { return data_.size(); }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

private:
    std::size_t index(int s, int p, int o) const {
        return (static_cast<std::size_t>(s) * static_cast<std::size_t>(num_relations_) +
                static_cast<std::size_t>(p)) *
                   static_cast<std::size_t>(num_entities_) +
               static_cast<std::size_t>(o);
    }

    int num_entities_;
    int num_relations_;
    std::vector<double> data_;
};

}  // namespace relfuse
