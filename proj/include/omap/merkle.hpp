#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "omap/primitives.hpp"

namespace omap {

enum class LeafKind : std::uint8_t { Commitment, Nullifier };

struct MerklePath {
    std::vector<Digest32> siblings;  // leaf level first
    std::uint64_t pos = 0;
    friend bool operator==(const MerklePath&, const MerklePath&) = default;
};

class MerkleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Folds `leaf` up through `path.siblings`, taking left/right from the bits of
/// `path.pos`, and compares with `root`. Positions outside the tree fail.
bool verify_path(const Digest32& root, const Digest32& leaf, const MerklePath& path);

/// Root of a depth-`depth` tree whose first leaves are `leaves`, computed level
/// by level from scratch.
Digest32 compute_root_from_scratch(std::size_t depth, const std::vector<Digest32>& leaves);

/// Fixed-depth append-only Merkle tree holding note commitments and
/// nullifiers side by side. Every root the tree has ever had stays known.
class CombinedTree {
public:
    static constexpr std::size_t kDefaultDepth = 16;
    static constexpr std::size_t kMaxDepth = 32;

    explicit CombinedTree(std::size_t depth = kDefaultDepth);

    std::size_t depth() const { return depth_; }
    std::uint64_t size() const { return leaves_.size(); }
    std::uint64_t capacity() const { return std::uint64_t{1} << depth_; }

    /// Appends at the next free position and returns it. Throws MerkleError
    /// when the tree is full.
    std::uint64_t append(const Digest32& leaf, LeafKind kind);

    Digest32 root() const { return root_; }
    const Digest32& leaf_at(std::uint64_t pos) const;
    LeafKind kind_at(std::uint64_t pos) const;
    /// Membership path of `pos` against the current root.
    MerklePath path(std::uint64_t pos) const;
    bool is_known_root(const Digest32& rt) const { return root_history_.contains(rt); }
    const std::vector<Digest32>& leaves() const { return leaves_; }
    /// Position of the first occurrence of `leaf`.
    std::optional<std::uint64_t> find(const Digest32& leaf) const;

    /// Per-level roots of all-empty subtrees; index 0 is the empty leaf.
    static const std::vector<Digest32>& empty_roots();

private:
    std::size_t depth_;
    std::vector<Digest32> leaves_;
    std::vector<LeafKind> kinds_;
    // levels_[l][i] is node i at height l (l = 0 are leaves), filled nodes only.
    std::vector<std::vector<Fe>> levels_;
    Digest32 root_;
    std::set<Digest32> root_history_;
    std::map<Digest32, std::uint64_t> index_;
};

}  // namespace omap
