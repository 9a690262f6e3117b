#include "omap/merkle.hpp"

namespace omap {

const std::vector<Digest32>& CombinedTree::empty_roots() {
    static const std::vector<Digest32> kRoots = [] {
        std::vector<Digest32> r;
        Fe cur = merkle_empty_leaf_fe();
        r.push_back(Digest32::from_fe(cur));
        for (std::size_t l = 0; l < kMaxDepth; ++l) {
            cur = merkle_node_fe(cur, cur);
            r.push_back(Digest32::from_fe(cur));
        }
        return r;
    }();
    return kRoots;
}

bool verify_path(const Digest32& root, const Digest32& leaf, const MerklePath& path) {
    const std::size_t depth = path.siblings.size();
    if (depth > CombinedTree::kMaxDepth) return false;
    if (depth < 64 && (path.pos >> depth) != 0) return false;
    Fe cur = leaf.to_fe();
    for (std::size_t l = 0; l < depth; ++l) {
        Fe sib = path.siblings[l].to_fe();
        cur = ((path.pos >> l) & 1) ? merkle_node_fe(sib, cur) : merkle_node_fe(cur, sib);
    }
    return Digest32::from_fe(cur) == root;
}

Digest32 compute_root_from_scratch(std::size_t depth, const std::vector<Digest32>& leaves) {
    if (depth > CombinedTree::kMaxDepth || leaves.size() > (std::uint64_t{1} << depth)) {
        throw MerkleError("too many leaves for tree depth");
    }
    const auto& empty = CombinedTree::empty_roots();
    std::vector<Fe> level;
    level.reserve(leaves.size());
    for (const auto& l : leaves) level.push_back(l.to_fe());
    for (std::size_t h = 0; h < depth; ++h) {
        std::vector<Fe> next((level.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            Fe left = level[2 * i];
            Fe right = 2 * i + 1 < level.size() ? level[2 * i + 1] : empty[h].to_fe();
            next[i] = merkle_node_fe(left, right);
        }
        level = std::move(next);
    }
    return level.empty() ? empty[depth] : Digest32::from_fe(level[0]);
}

CombinedTree::CombinedTree(std::size_t depth) : depth_(depth), levels_(depth + 1) {
    if (depth > kMaxDepth) throw MerkleError("tree depth exceeds maximum");
    root_ = empty_roots()[depth_];
    root_history_.insert(root_);
}

std::uint64_t CombinedTree::append(const Digest32& leaf, LeafKind kind) {
    if (size() >= capacity()) throw MerkleError("tree is full");
    const std::uint64_t pos = leaves_.size();
    leaves_.push_back(leaf);
    kinds_.push_back(kind);
    index_.emplace(leaf, pos);

    const auto& empty = empty_roots();
    Fe cur = leaf.to_fe();
    std::uint64_t idx = pos;
    levels_[0].push_back(cur);
    for (std::size_t h = 0; h < depth_; ++h) {
        const std::uint64_t sib_idx = idx ^ 1;
        const auto& lvl = levels_[h];
        Fe sib = sib_idx < lvl.size() ? lvl[sib_idx] : empty[h].to_fe();
        cur = (idx & 1) ? merkle_node_fe(sib, cur) : merkle_node_fe(cur, sib);
        idx >>= 1;
        auto& up = levels_[h + 1];
        if (idx < up.size()) {
            up[idx] = cur;
        } else {
            up.push_back(cur);
        }
    }
    root_ = Digest32::from_fe(cur);
    root_history_.insert(root_);
    return pos;
}

const Digest32& CombinedTree::leaf_at(std::uint64_t pos) const {
    if (pos >= leaves_.size()) throw MerkleError("leaf position out of range");
    return leaves_[pos];
}

LeafKind CombinedTree::kind_at(std::uint64_t pos) const {
    if (pos >= kinds_.size()) throw MerkleError("leaf position out of range");
    return kinds_[pos];
}

std::optional<std::uint64_t> CombinedTree::find(const Digest32& leaf) const {
    auto it = index_.find(leaf);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

MerklePath CombinedTree::path(std::uint64_t pos) const {
    if (pos >= leaves_.size()) throw MerkleError("leaf position out of range");
    const auto& empty = empty_roots();
    MerklePath p;
    p.pos = pos;
    p.siblings.reserve(depth_);
    std::uint64_t idx = pos;
    for (std::size_t h = 0; h < depth_; ++h) {
        const std::uint64_t sib_idx = idx ^ 1;
        const auto& lvl = levels_[h];
        p.siblings.push_back(sib_idx < lvl.size() ? Digest32::from_fe(lvl[sib_idx]) : empty[h]);
        idx >>= 1;
    }
    return p;
}

}  // namespace omap
