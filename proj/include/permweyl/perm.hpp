#ifndef PERMWEYL_PERM_HPP
#define PERMWEYL_PERM_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "permweyl/graph.hpp"

namespace permweyl {

using BigInt = boost::multiprecision::cpp_int;

/// Bijection of the length-k paths preserving every (source, range) class.
/// Stored as one index array per class over the path-rank order.
class PathPerm {
public:
    /// Identity at the given level.
    PathPerm(std::shared_ptr<const PathTable> paths);
    /// From per-class arrays: class_maps[c][i] = index within class c of the
    /// image of the i-th path of class c.
    PathPerm(std::shared_ptr<const PathTable> paths,
             std::vector<std::vector<int>> class_maps);

    int level() const { return paths_->level(); }
    const PathTable& paths() const { return *paths_; }
    std::shared_ptr<const PathTable> paths_ptr() const { return paths_; }

    int apply(int path) const { return map_[path]; }
    int apply_inverse(int path) const { return inv_[path]; }
    const std::vector<int>& class_map(int cls) const { return class_maps_[cls]; }

    PathPerm inverse() const;
    bool is_identity() const;
    bool operator==(const PathPerm& o) const { return map_ == o.map_; }

    /// Permutation from explicit path-id pairs (image[p] for every p).
    static PathPerm from_global_map(std::shared_ptr<const PathTable> paths,
                                    const std::vector<int>& image);

private:
    std::shared_ptr<const PathTable> paths_;
    std::vector<std::vector<int>> class_maps_;
    std::vector<int> map_, inv_;  // path id -> path id
    void build_global();
};

/// Product over all classes of |class|!, exact.
BigInt count_endpoint_fixing(const Graph& g, int k);

/// Visits every endpoint-fixing permutation once, in lexicographic order of
/// the concatenated per-class index arrays (identity first). The callback
/// returns false to stop early. Refuses to start when the total count
/// exceeds cap.
void enumerate_endpoint_fixing(std::shared_ptr<const PathTable> paths,
                               const std::function<bool(const PathPerm&)>& visit,
                               const BigInt& cap = BigInt(10000000));

struct CycleParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cycle notation on paths: "(de, cb)(x, y)" or "Id". Path names use the
/// concatenated edge-name syntax when all edge names are single characters,
/// dot-separated otherwise.
PathPerm parse_cycles(std::shared_ptr<const PathTable> paths, const std::string& text);
std::string format_cycles(const PathPerm& perm);

/// JSON form {"level": k, "cycles": [["de","cb"], ...]}.
PathPerm perm_from_json(std::shared_ptr<const PathTable> paths, const std::string& json);
std::string perm_to_json(const PathPerm& perm);

}  // namespace permweyl

#endif
