#include "relfuse/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "relfuse/errors.hpp"

namespace relfuse {

int Vocabulary::add_entity(const std::string& name) {
    auto it = entity_ids_.find(name);
    if (it != entity_ids_.end()) return it->second;
    const int id = static_cast<int>(entities_.size());
    entities_.push_back(name);
    entity_ids_.emplace(name, id);
    return id;
}

int Vocabulary::add_relation(const std::string& name) {
    auto it = relation_ids_.find(name);
    if (it != relation_ids_.end()) return it->second;
    const int id = static_cast<int>(relations_.size());
    relations_.push_back(name);
    relation_ids_.emplace(name, id);
    return id;
}

std::optional<int> Vocabulary::entity_id(std::string_view name) const {
    auto it = entity_ids_.find(std::string(name));
    if (it == entity_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Vocabulary::relation_id(std::string_view name) const {
    auto it = relation_ids_.find(std::string(name));
    if (it == relation_ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& Vocabulary::entity_name(int id) const {
    if (id < 0 || id >= num_entities())
        throw std::out_of_range("entity id " + std::to_string(id) + " out of range");
    return entities_[static_cast<std::size_t>(id)];
}

const std::string& Vocabulary::relation_name(int id) const {
    if (id < 0 || id >= num_relations())
        throw std::out_of_range("relation id " + std::to_string(id) + " out of range");
    return relations_[static_cast<std::size_t>(id)];
}

void Vocabulary::save(std::ostream& out) const {
    for (const auto& name : entities_) out << name << '\n';
    out << "---\n";
    for (const auto& name : relations_) out << name << '\n';
}

void Vocabulary::save_file(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open vocabulary file for writing: " + path.string());
    save(out);
}

Vocabulary Vocabulary::load(std::istream& in) {
    Vocabulary vocab;
    std::string line;
    bool in_relations = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line == "---") {
            if (in_relations)
                throw DataError("vocabulary file: second section separator at line " +
                                std::to_string(line_no));
            in_relations = true;
            continue;
        }
        if (line.empty()) continue;
        if (in_relations) {
            if (vocab.relation_id(line))
                throw DataError("duplicate relation name '" + line + "' at line " +
                                std::to_string(line_no));
            vocab.add_relation(line);
        } else {
            if (vocab.entity_id(line))
                throw DataError("duplicate entity name '" + line + "' at line " +
                                std::to_string(line_no));
            vocab.add_entity(line);
        }
    }
    if (!in_relations)
        throw DataError("vocabulary file: missing '---' section separator");
    return vocab;
}

Vocabulary Vocabulary::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open vocabulary file: " + path.string());
    return load(in);
}

TripleCounts::TripleCounts(int num_entities, int num_relations)
    : num_entities_(num_entities),
      num_relations_(num_relations),
      subject_totals_(static_cast<std::size_t>(std::max(num_entities, 0)), 0),
      predicate_totals_(static_cast<std::size_t>(std::max(num_relations, 0)), 0),
      object_totals_(static_cast<std::size_t>(std::max(num_entities, 0)), 0) {
    if (num_entities < 0 || num_relations < 0)
        throw std::invalid_argument("negative vocabulary size");
}

std::uint64_t TripleCounts::key(int s, int p, int o) {
    return (static_cast<std::uint64_t>(s) << 42) |
           (static_cast<std::uint64_t>(p) << 21) |
           static_cast<std::uint64_t>(o);
}

void TripleCounts::check_ids(int s, int p, int o) const {
    if (s < 0 || s >= num_entities_ || o < 0 || o >= num_entities_)
        throw std::out_of_range("entity id out of range in triple (" + std::to_string(s) +
                                "," + std::to_string(p) + "," + std::to_string(o) + ")");
    if (p < 0 || p >= num_relations_)
        throw std::out_of_range("relation id out of range in triple (" + std::to_string(s) +
                                "," + std::to_string(p) + "," + std::to_string(o) + ")");
}

void TripleCounts::add(int s, int p, int o, std::int64_t count) {
    check_ids(s, p, o);
    if (count <= 0) return;
    counts_[key(s, p, o)] += count;
    subject_totals_[static_cast<std::size_t>(s)] += count;
    predicate_totals_[static_cast<std::size_t>(p)] += count;
    object_totals_[static_cast<std::size_t>(o)] += count;
    total_ += count;
}

std::int64_t TripleCounts::count(int s, int p, int o) const {
    check_ids(s, p, o);
    auto it = counts_.find(key(s, p, o));
    return it == counts_.end() ? 0 : it->second;
}

double TripleCounts::marginal(Axis axis, int id, double alpha) const {
    const std::vector<std::int64_t>* totals = nullptr;
    switch (axis) {
        case Axis::subject: totals = &subject_totals_; break;
        case Axis::predicate: totals = &predicate_totals_; break;
        case Axis::object: totals = &object_totals_; break;
    }
    if (id < 0 || id >= static_cast<int>(totals->size()))
        throw std::out_of_range("marginal id " + std::to_string(id) + " out of range");
    return static_cast<double>((*totals)[static_cast<std::size_t>(id)]) + alpha;
}

std::vector<double> TripleCounts::marginals(Axis axis, double alpha) const {
    const int n = (axis == Axis::predicate) ? num_relations_ : num_entities_;
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int id = 0; id < n; ++id) out[static_cast<std::size_t>(id)] = marginal(axis, id, alpha);
    return out;
}

std::vector<TripleEntry> TripleCounts::entries() const {
    std::vector<TripleEntry> out;
    out.reserve(counts_.size());
    for (const auto& [k, c] : counts_) {
        out.push_back(TripleEntry{static_cast<int>(k >> 42),
                                  static_cast<int>((k >> 21) & 0x1FFFFF),
                                  static_cast<int>(k & 0x1FFFFF), c});
    }
    std::sort(out.begin(), out.end(), [](const TripleEntry& a, const TripleEntry& b) {
        return std::tie(a.subject, a.predicate, a.object) <
               std::tie(b.subject, b.predicate, b.object);
    });
    return out;
}

void TripleCounts::save(std::ostream& out, const Vocabulary& vocab) const {
    for (const TripleEntry& e : entries()) {
        out << vocab.entity_name(e.subject) << ' ' << vocab.relation_name(e.predicate) << ' '
            << vocab.entity_name(e.object) << ' ' << e.count << '\n';
    }
}

namespace {

struct ParsedLine {
    std::string subject, predicate, object;
    std::int64_t count;
};

std::optional<ParsedLine> parse_triple_line(const std::string& line, int line_no,
                                            std::string_view source) {
    std::istringstream ss(line);
    ParsedLine parsed;
    parsed.count = 1;
    if (!(ss >> parsed.subject)) return std::nullopt;  // blank line
    if (parsed.subject[0] == '#') return std::nullopt;
    if (!(ss >> parsed.predicate >> parsed.object))
        throw DataError(std::string(source) + ":" + std::to_string(line_no) +
                        ": expected 'subject predicate object [count]', got '" + line + "'");
    std::string count_token;
    if (ss >> count_token) {
        std::size_t pos = 0;
        try {
            parsed.count = std::stoll(count_token, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != count_token.size() || parsed.count < 0)
            throw DataError(std::string(source) + ":" + std::to_string(line_no) +
                            ": bad count token '" + count_token + "'");
        std::string extra;
        if (ss >> extra)
            throw DataError(std::string(source) + ":" + std::to_string(line_no) +
                            ": trailing token '" + extra + "'");
    }
    return parsed;
}

}  // namespace

LoadedTriples load_triples(std::istream& in, VocabMode mode, const Vocabulary* existing,
                           std::string_view source_name) {
    if (mode == VocabMode::strict && existing == nullptr)
        throw std::invalid_argument("strict mode requires an existing vocabulary");

    Vocabulary vocab = (existing != nullptr) ? *existing : Vocabulary{};

    struct RawTriple {
        int s, p, o;
        std::int64_t count;
    };
    std::vector<RawTriple> raw;

    auto resolve_entity = [&](const std::string& name, int line_no) {
        if (mode == VocabMode::build) return vocab.add_entity(name);
        auto id = vocab.entity_id(name);
        if (!id)
            throw DataError(std::string(source_name) + ":" + std::to_string(line_no) +
                            ": unknown entity '" + name + "'");
        return *id;
    };
    auto resolve_relation = [&](const std::string& name, int line_no) {
        if (mode == VocabMode::build) return vocab.add_relation(name);
        auto id = vocab.relation_id(name);
        if (!id)
            throw DataError(std::string(source_name) + ":" + std::to_string(line_no) +
                            ": unknown relation '" + name + "'");
        return *id;
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto parsed = parse_triple_line(line, line_no, source_name);
        if (!parsed) continue;
        RawTriple t;
        t.s = resolve_entity(parsed->subject, line_no);
        t.p = resolve_relation(parsed->predicate, line_no);
        t.o = resolve_entity(parsed->object, line_no);
        t.count = parsed->count;
        raw.push_back(t);
    }

    TripleCounts counts(vocab.num_entities(), vocab.num_relations());
    for (const RawTriple& t : raw) counts.add(t.s, t.p, t.o, t.count);
    return LoadedTriples{std::move(vocab), std::move(counts)};
}

LoadedTriples load_triples(const std::filesystem::path& path, VocabMode mode,
                           const Vocabulary* existing) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open triples file: " + path.string());
    return load_triples(in, mode, existing, path.string());
}

std::vector<bool> zero_shot_mask(const TripleCounts& train,
                                 const std::vector<std::array<int, 3>>& test_triples) {
    std::vector<bool> mask;
    mask.reserve(test_triples.size());
    for (const auto& t : test_triples) mask.push_back(train.count(t[0], t[1], t[2]) == 0);
    return mask;
}

}  // namespace relfuse
