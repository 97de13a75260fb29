#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace relfuse {

/// Bidirectional name <-> id maps for entity classes and relation types.
/// Ids are dense, 0..|E|-1 and 0..|R|-1, assigned in first-appearance order.
/// Immutable once built; safe to share across threads.
class Vocabulary {
public:
    /// Returns the id of `name`, inserting it if new.
    int add_entity(const std::string& name);
    int add_relation(const std::string& name);

    std::optional<int> entity_id(std::string_view name) const;
    std::optional<int> relation_id(std::string_view name) const;

    /// Throws std::out_of_range for invalid ids.
    const std::string& entity_name(int id) const;
    const std::string& relation_name(int id) const;

    int num_entities() const { return static_cast<int>(entities_.size()); }
    int num_relations() const { return static_cast<int>(relations_.size()); }

    const std::vector<std::string>& entities() const { return entities_; }
    const std::vector<std::string>& relations() const { return relations_; }

    /// Two newline-separated sections (entities, then relations) split by a
    /// line containing only "---". Round-trips id assignments exactly.
    void save(std::ostream& out) const;
    void save_file(const std::filesystem::path& path) const;
    static Vocabulary load(std::istream& in);
    static Vocabulary load_file(const std::filesystem::path& path);

    bool operator==(const Vocabulary&) const = default;

private:
    std::vector<std::string> entities_;
    std::vector<std::string> relations_;
    std::unordered_map<std::string, int> entity_ids_;
    std::unordered_map<std::string, int> relation_ids_;
};

enum class Axis { subject, predicate, object };

struct TripleEntry {
    int subject;
    int predicate;
    int object;
    std::int64_t count;
};

/// Sparse (s,p,o) -> count map with cached per-axis marginal totals.
/// Stored counts are always >= 1; absent cells are implicit zeros.
class TripleCounts {
public:
    TripleCounts(int num_entities, int num_relations);

    /// Aggregates by summation; count <= 0 is ignored. Ids must be in range.
    void add(int s, int p, int o, std::int64_t count = 1);

    /// 0 for absent cells.
    std::int64_t count(int s, int p, int o) const;
    bool contains(int s, int p, int o) const { return count(s, p, o) > 0; }

    /// Sum of counts along the two other axes, plus the Laplace constant
    /// `alpha`. Strictly positive for every id when alpha > 0.
    double marginal(Axis axis, int id, double alpha) const;

    /// marginal() for every id of the axis.
    std::vector<double> marginals(Axis axis, double alpha) const;

    /// Entries sorted by (s,p,o) for deterministic iteration.
    std::vector<TripleEntry> entries() const;

    std::size_t distinct_triples() const { return counts_.size(); }
    std::int64_t total() const { return total_; }
    int num_entities() const { return num_entities_; }
    int num_relations() const { return num_relations_; }

    void save(std::ostream& out, const Vocabulary& vocab) const;

private:
    static std::uint64_t key(int s, int p, int o);
    void check_ids(int s, int p, int o) const;

    int num_entities_;
    int num_relations_;
    std::unordered_map<std::uint64_t, std::int64_t> counts_;
    std::vector<std::int64_t> subject_totals_;
    std::vector<std::int64_t> predicate_totals_;
    std::vector<std::int64_t> object_totals_;
    std::int64_t total_ = 0;
};

enum class VocabMode {
    build,   ///< grow the vocabulary from encountered names
    strict,  ///< every name must already exist in `existing`
};

struct LoadedTriples {
    Vocabulary vocab;
    TripleCounts counts;
};

/// Parses a triples file: one triple per line, `subject predicate object`
/// with an optional fourth nonnegative integer count (default 1). Lines
/// starting with '#' and blank lines are skipped. Duplicate triples
/// aggregate by summation. Throws DataError with the offending line number
/// on parse failures and on unknown names in strict mode.
LoadedTriples load_triples(const std::filesystem::path& path, VocabMode mode,
                           const Vocabulary* existing = nullptr);
LoadedTriples load_triples(std::istream& in, VocabMode mode,
                           const Vocabulary* existing = nullptr,
                           std::string_view source_name = "<stream>");

/// Element i is true iff test triple i has count 0 in `train`.
std::vector<bool> zero_shot_mask(
    const TripleCounts& train,
    const std::vector<std::array<int, 3>>& test_triples);

}  // namespace relfuse
