#include "qdyn/galois/tree_aut.hpp"

#include <stdexcept>

#include "qdyn/error.hpp"

namespace qdyn {

TreeAut::TreeAut(unsigned height) : height_(height), labels_((std::size_t{1} << height) - 1, false) {
  if (height > 30) throw unsupported_size("TreeAut: height above 30");
}

TreeAut TreeAut::from_bits(unsigned height, std::uint64_t bits) {
  if (height > 6) throw unsupported_size("TreeAut::from_bits: height above 6");
  TreeAut t(height);
  for (std::size_t i = 0; i < t.labels_.size(); ++i) t.labels_[i] = ((bits >> i) & 1u) != 0;
  return t;
}

std::size_t TreeAut::image(unsigned level, std::size_t pos) const {
  if (level > height_) throw std::out_of_range("TreeAut::image: level above height");
  std::size_t img = 0;
  for (unsigned d = 0; d < level; ++d) {
    const std::size_t prefix = pos >> (level - d);
    const std::size_t branch = (pos >> (level - d - 1)) & 1u;
    img = 2 * img + (branch ^ (labels_[index(d, prefix)] ? 1u : 0u));
  }
  return img;
}

std::vector<std::size_t> TreeAut::fixed_profile() const {
  std::vector<std::size_t> out(height_ + 1, 0);
  // A vertex is fixed iff its parent is fixed with swap bit 0.
  std::vector<std::size_t> fixed{0};
  out[0] = 1;
  for (unsigned l = 0; l < height_; ++l) {
    std::vector<std::size_t> next;
    for (const std::size_t v : fixed) {
      if (labels_[index(l, v)]) continue;
      next.push_back(2 * v);
      next.push_back(2 * v + 1);
    }
    fixed = std::move(next);
    out[l + 1] = fixed.size();
  }
  return out;
}

std::size_t TreeAut::fixed_count(unsigned level) const {
  if (level > height_) throw std::out_of_range("TreeAut::fixed_count: level above height");
  return fixed_profile()[level];
}

TreeAut compose(const TreeAut& sigma, const TreeAut& tau) {
  if (sigma.height_ != tau.height_) throw std::invalid_argument("compose: height mismatch");
  TreeAut out(sigma.height_);
  for (unsigned l = 0; l < sigma.height_; ++l) {
    const std::size_t width = std::size_t{1} << l;
    for (std::size_t v = 0; v < width; ++v) {
      const bool bit = tau.label(l, v) != sigma.label(l, tau.image(l, v));
      out.set_label(l, v, bit);
    }
  }
  return out;
}

TreeAut TreeAut::inverse() const {
  TreeAut out(height_);
  for (unsigned l = 0; l < height_; ++l) {
    const std::size_t width = std::size_t{1} << l;
    for (std::size_t v = 0; v < width; ++v) out.set_label(l, image(l, v), label(l, v));
  }
  return out;
}

void for_each_aut(unsigned n, const std::function<void(const TreeAut&)>& visit) {
  if (n > kMaxEnumerationHeight) throw unsupported_size("enumerate_aut: height above 4, use sampling");
  const std::uint64_t count = std::uint64_t{1} << ((1u << n) - 1);
  for (std::uint64_t bits = 0; bits < count; ++bits) visit(TreeAut::from_bits(n, bits));
}

std::vector<TreeAut> enumerate_aut(unsigned n) {
  std::vector<TreeAut> out;
  for_each_aut(n, [&](const TreeAut& t) { out.push_back(t); });
  return out;
}

}  // namespace qdyn
