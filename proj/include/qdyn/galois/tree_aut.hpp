#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace qdyn {

// Automorphism of the complete binary rooted tree of height n, stored as one
// swap bit per non-leaf vertex. Vertex (level l, position i) has index
// 2^l - 1 + i; the children of (l, i) are (l + 1, 2i) and (l + 1, 2i + 1).
// Positions are read as root-to-vertex bit paths, most significant bit first.
class TreeAut {
 public:
  explicit TreeAut(unsigned height = 0);

  // Labels taken from the low 2^n - 1 bits of `bits`, vertex index = bit index.
  static TreeAut from_bits(unsigned height, std::uint64_t bits);

  unsigned height() const { return height_; }
  std::size_t label_count() const { return labels_.size(); }

  bool label(unsigned level, std::size_t pos) const { return labels_[index(level, pos)]; }
  void set_label(unsigned level, std::size_t pos, bool v) { labels_[index(level, pos)] = v; }
  bool label_at(std::size_t idx) const { return labels_[idx]; }
  void set_label_at(std::size_t idx, bool v) { labels_[idx] = v; }

  // Image position of vertex (level, pos).
  std::size_t image(unsigned level, std::size_t pos) const;

  // Number of vertices at `level` mapped to themselves; level n gives the
  // fixed leaves.
  std::size_t fixed_count(unsigned level) const;
  std::size_t fixed_leaves() const { return fixed_count(height_); }

  // Fixed counts for every level 0..n.
  std::vector<std::size_t> fixed_profile() const;

  friend TreeAut compose(const TreeAut& sigma, const TreeAut& tau);  // sigma after tau
  TreeAut inverse() const;

  friend bool operator==(const TreeAut& a, const TreeAut& b) {
    return a.height_ == b.height_ && a.labels_ == b.labels_;
  }

 private:
  static std::size_t index(unsigned level, std::size_t pos) { return (std::size_t{1} << level) - 1 + pos; }

  unsigned height_;
  std::vector<bool> labels_;
};

inline constexpr unsigned kMaxEnumerationHeight = 4;

// Every element of the full group at height n <= 4, each exactly once.
// Throws unsupported_size above that.
void for_each_aut(unsigned n, const std::function<void(const TreeAut&)>& visit);
std::vector<TreeAut> enumerate_aut(unsigned n);

}  // namespace qdyn
