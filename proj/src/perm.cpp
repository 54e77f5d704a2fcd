#include "permweyl/perm.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

namespace permweyl {

PathPerm::PathPerm(std::shared_ptr<const PathTable> paths) : paths_(std::move(paths)) {
    class_maps_.resize(paths_->num_classes());
    for (int c = 0; c < paths_->num_classes(); ++c) {
        class_maps_[c].resize(paths_->class_members(c).size());
        std::iota(class_maps_[c].begin(), class_maps_[c].end(), 0);
    }
    build_global();
}

PathPerm::PathPerm(std::shared_ptr<const PathTable> paths, std::vector<std::vector<int>> class_maps)
    : paths_(std::move(paths)), class_maps_(std::move(class_maps)) {
    if (static_cast<int>(class_maps_.size()) != paths_->num_classes())
        throw std::invalid_argument("class map count mismatch");
    for (int c = 0; c < paths_->num_classes(); ++c) {
        const auto& m = class_maps_[c];
        if (m.size() != paths_->class_members(c).size())
            throw std::invalid_argument("class map size mismatch");
        std::vector<bool> seen(m.size(), false);
        for (int i : m) {
            if (i < 0 || i >= static_cast<int>(m.size()) || seen[i])
                throw std::invalid_argument("class map is not a bijection");
            seen[i] = true;
        }
    }
    build_global();
}

void PathPerm::build_global() {
    map_.resize(paths_->size());
    inv_.resize(paths_->size());
    for (int c = 0; c < paths_->num_classes(); ++c) {
        const auto& members = paths_->class_members(c);
        for (size_t i = 0; i < members.size(); ++i) map_[members[i]] = members[class_maps_[c][i]];
    }
    for (int p = 0; p < paths_->size(); ++p) inv_[map_[p]] = p;
}

PathPerm PathPerm::inverse() const {
    std::vector<std::vector<int>> inv_maps(class_maps_.size());
    for (size_t c = 0; c < class_maps_.size(); ++c) {
        inv_maps[c].resize(class_maps_[c].size());
        for (size_t i = 0; i < class_maps_[c].size(); ++i) inv_maps[c][class_maps_[c][i]] = static_cast<int>(i);
    }
    return PathPerm(paths_, std::move(inv_maps));
}

bool PathPerm::is_identity() const {
    for (int p = 0; p < static_cast<int>(map_.size()); ++p)
        if (map_[p] != p) return false;
    return true;
}

PathPerm PathPerm::from_global_map(std::shared_ptr<const PathTable> paths,
                                   const std::vector<int>& image) {
    if (static_cast<int>(image.size()) != paths->size())
        throw std::invalid_argument("image size mismatch");
    std::vector<std::vector<int>> class_maps(paths->num_classes());
    for (int c = 0; c < paths->num_classes(); ++c)
        class_maps[c].assign(paths->class_members(c).size(), -1);
    for (int p = 0; p < paths->size(); ++p) {
        int q = image[p];
        if (q < 0 || q >= paths->size() || paths->class_of(q) != paths->class_of(p))
            throw std::invalid_argument("image is not endpoint-fixing at path " + paths->name(p));
        class_maps[paths->class_of(p)][paths->index_in_class(p)] = paths->index_in_class(q);
    }
    return PathPerm(paths, std::move(class_maps));
}

BigInt count_endpoint_fixing(const Graph& g, int k) {
    if (k == 0) return 1;  // the vertex classes are singletons
    auto counts = count_paths_by_endpoints(g, k);
    BigInt total = 1;
    for (auto c : counts) {
        BigInt f = 1;
        for (std::uint64_t i = 2; i <= c; ++i) f *= i;
        total *= f;
    }
    return total;
}

void enumerate_endpoint_fixing(std::shared_ptr<const PathTable> paths,
                               const std::function<bool(const PathPerm&)>& visit,
                               const BigInt& cap) {
    BigInt total = count_endpoint_fixing(paths->graph(), paths->level());
    if (total > cap)
        throw std::runtime_error("endpoint-fixing permutation count " + total.str() +
                                 " exceeds cap " + cap.str());
    std::vector<std::vector<int>> maps(paths->num_classes());
    for (int c = 0; c < paths->num_classes(); ++c) {
        maps[c].resize(paths->class_members(c).size());
        std::iota(maps[c].begin(), maps[c].end(), 0);
    }
    // Odometer over per-class arrays: the last nonempty class advances
    // fastest, so the concatenated arrays are visited lexicographically.
    for (;;) {
        if (!visit(PathPerm(paths, maps))) return;
        int c = paths->num_classes() - 1;
        while (c >= 0 && !std::next_permutation(maps[c].begin(), maps[c].end())) --c;
        if (c < 0) return;
    }
}

namespace {

std::vector<std::vector<std::string>> tokenize_cycles(const std::string& text) {
    std::vector<std::vector<std::string>> cycles;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') throw CycleParseError("expected '(' at position " + std::to_string(i));
        ++i;
        std::vector<std::string> cycle;
        std::string cur;
        for (;;) {
            if (i >= text.size()) throw CycleParseError("unterminated cycle");
            char ch = text[i];
            if (ch == ',' || ch == ')') {
                if (cur.empty()) throw CycleParseError("empty path name in cycle");
                cycle.push_back(cur);
                cur.clear();
                ++i;
                if (ch == ')') break;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++i;
            } else {
                cur += ch;
                ++i;
            }
        }
        if (cycle.size() < 2) throw CycleParseError("cycle with fewer than two paths");
        cycles.push_back(std::move(cycle));
        skip_ws();
    }
    return cycles;
}

PathPerm perm_from_cycle_names(std::shared_ptr<const PathTable> paths,
                               const std::vector<std::vector<std::string>>& cycles) {
    std::vector<int> image(paths->size());
    std::iota(image.begin(), image.end(), 0);
    std::vector<bool> used(paths->size(), false);
    for (const auto& cyc : cycles) {
        std::vector<int> ids;
        for (const auto& name : cyc) {
            auto p = paths->parse_name(name);
            if (!p) throw CycleParseError("unknown path '" + name + "'");
            if (used[*p]) throw CycleParseError("path '" + name + "' appears in more than one cycle");
            used[*p] = true;
            if (!ids.empty() && paths->class_of(*p) != paths->class_of(ids.front()))
                throw CycleParseError("path '" + name +
                                      "' breaks endpoint fixing: its (source, range) differs from '" +
                                      paths->name(ids.front()) + "'");
            ids.push_back(*p);
        }
        for (size_t j = 0; j < ids.size(); ++j) image[ids[j]] = ids[(j + 1) % ids.size()];
    }
    return PathPerm::from_global_map(std::move(paths), image);
}

}  // namespace

PathPerm parse_cycles(std::shared_ptr<const PathTable> paths, const std::string& text) {
    std::string trimmed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed == "Id" || trimmed == "id") return PathPerm(std::move(paths));
    return perm_from_cycle_names(std::move(paths), tokenize_cycles(text));
}

std::string format_cycles(const PathPerm& perm) {
    const PathTable& pt = perm.paths();
    std::vector<bool> seen(pt.size(), false);
    std::vector<std::vector<int>> cycles;
    for (int p = 0; p < pt.size(); ++p) {
        if (seen[p] || perm.apply(p) == p) continue;
        std::vector<int> cyc;
        int q = p;
        do {
            seen[q] = true;
            cyc.push_back(q);
            q = perm.apply(q);
        } while (q != p);
        cycles.push_back(std::move(cyc));  // starts at its least path id
    }
    if (cycles.empty()) return "Id";
    std::string out;
    for (const auto& cyc : cycles) {
        out += '(';
        for (size_t j = 0; j < cyc.size(); ++j) {
            if (j) out += ',';
            out += pt.name(cyc[j]);
        }
        out += ')';
    }
    return out;
}

PathPerm perm_from_json(std::shared_ptr<const PathTable> paths, const std::string& json) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
        throw CycleParseError(std::string("bad JSON: ") + e.what());
    }
    if (j.contains("level") && j["level"].get<int>() != paths->level())
        throw CycleParseError("level mismatch");
    std::vector<std::vector<std::string>> cycles;
    for (const auto& c : j.at("cycles")) cycles.push_back(c.get<std::vector<std::string>>());
    if (cycles.empty()) return PathPerm(std::move(paths));
    return perm_from_cycle_names(std::move(paths), cycles);
}

std::string perm_to_json(const PathPerm& perm) {
    const PathTable& pt = perm.paths();
    nlohmann::json cycles = nlohmann::json::array();
    std::vector<bool> seen(pt.size(), false);
    for (int p = 0; p < pt.size(); ++p) {
        if (seen[p] || perm.apply(p) == p) continue;
        nlohmann::json cyc = nlohmann::json::array();
        int q = p;
        do {
            seen[q] = true;
            cyc.push_back(pt.name(q));
            q = perm.apply(q);
        } while (q != p);
        cycles.push_back(cyc);
    }
    nlohmann::json j;
    j["level"] = perm.level();
    j["cycles"] = cycles;
    return j.dump();
}

}  // namespace permweyl
