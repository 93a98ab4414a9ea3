#include "latticeroot/render.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace latticeroot {
namespace {

struct Extent {
  std::int64_t left = 0;
  std::int64_t right = 0;
};

class Layout {
 public:
  Layout(const GradedRoot& root, const SymmetryData* sym) : root_(root), sym_(sym) {
    const std::size_t nl = root.levels.size();
    children_.resize(nl);
    depth_.resize(nl);
    pos_.resize(nl);
    for (std::size_t l = 0; l < nl; ++l) {
      children_[l].resize(root.levels[l].size());
      depth_[l].assign(root.levels[l].size(), 0);
      pos_[l].assign(root.levels[l].size(), 0);
      if (l == 0) continue;
      for (std::size_t v = 0; v < root.levels[l - 1].size(); ++v) {
        const auto p = static_cast<std::size_t>(root.levels[l - 1][v].parent);
        children_[l][p].push_back(v);
        depth_[l][p] = std::max(depth_[l][p], depth_[l - 1][v] + 1);
      }
    }
  }

  std::vector<std::vector<std::int64_t>> run() {
    const std::size_t top = root_.levels.size() - 1;
    place(top, 0, 0);
    if (sym_) {
      for (std::size_t l = 0; l < pos_.size(); ++l) {
        for (std::size_t v : placed_[l]) {
          const std::uint32_t jv = sym_->levels[l].involution[v];
          if (jv != v) pos_[l][jv] = -pos_[l][v];
        }
      }
    }
    return pos_;
  }

 private:
  bool fixed(std::size_t l, std::size_t v) const {
    return sym_ && sym_->levels[l].fixed && *sym_->levels[l].fixed == v;
  }

  // Children of a non-fixed node: deepest first, then by index.
  std::vector<std::size_t> ordered(std::size_t l, std::size_t v) const {
    std::vector<std::size_t> c = children_[l][v];
    std::stable_sort(c.begin(), c.end(), [&](std::size_t a, std::size_t b) {
      return depth_[l - 1][a] > depth_[l - 1][b];
    });
    return c;
  }

  Extent extent(std::size_t l, std::size_t v) {
    Extent e;
    if (l == 0 || children_[l][v].empty()) return e;
    if (fixed(l, v)) {
      for (std::size_t c : children_[l][v]) {
        if (fixed(l - 1, c)) {
          const Extent ce = extent(l - 1, c);
          e.left = e.right = std::max(ce.left, ce.right);
        }
      }
      for (std::size_t c : children_[l][v]) {
        const std::uint32_t jc = sym_->levels[l - 1].involution[c];
        if (jc == c || jc < c) continue;
        const Extent ce = extent(l - 1, c);
        e.left += 1 + ce.left + ce.right;
      }
      e.right = e.left;
      return e;
    }
    const auto c = ordered(l, v);
    const Extent first = extent(l - 1, c[0]);
    e = first;
    for (std::size_t i = 1; i < c.size(); ++i) {
      const Extent ce = extent(l - 1, c[i]);
      if (i % 2 == 1) {
        e.right += 1 + ce.left + ce.right;
      } else {
        e.left += 1 + ce.left + ce.right;
      }
    }
    return e;
  }

  void place(std::size_t l, std::size_t v, std::int64_t x) {
    pos_[l][v] = x;
    if (placed_.empty()) placed_.resize(pos_.size());
    placed_[l].push_back(v);
    if (l == 0 || children_[l][v].empty()) return;
    if (fixed(l, v)) {
      std::int64_t left = 0;
      for (std::size_t c : children_[l][v]) {
        if (fixed(l - 1, c)) {
          place(l - 1, c, x);
          const Extent ce = extent(l - 1, c);
          left = std::max(ce.left, ce.right);
        }
      }
      for (std::size_t c : children_[l][v]) {
        const std::uint32_t jc = sym_->levels[l - 1].involution[c];
        if (jc == c || jc < c) continue;
        const Extent ce = extent(l - 1, c);
        place(l - 1, c, x - left - 1 - ce.right);
        left += 1 + ce.left + ce.right;
      }
      return;
    }
    const auto c = ordered(l, v);
    Extent e = extent(l - 1, c[0]);
    place(l - 1, c[0], x);
    for (std::size_t i = 1; i < c.size(); ++i) {
      const Extent ce = extent(l - 1, c[i]);
      if (i % 2 == 1) {
        place(l - 1, c[i], x + e.right + 1 + ce.left);
        e.right += 1 + ce.left + ce.right;
      } else {
        place(l - 1, c[i], x - e.left - 1 - ce.right);
        e.left += 1 + ce.left + ce.right;
      }
    }
  }

  const GradedRoot& root_;
  const SymmetryData* sym_;
  std::vector<std::vector<std::vector<std::size_t>>> children_;  // [l][v] -> nodes at l - 1
  std::vector<std::vector<std::int64_t>> depth_;
  std::vector<std::vector<std::int64_t>> pos_;
  std::vector<std::vector<std::size_t>> placed_;
};

}  // namespace

std::vector<std::vector<std::int64_t>> root_layout(const GradedRoot& root, const SymmetryData* sym) {
  return Layout(root, sym).run();
}

std::string render_ascii(const GradedRoot& root, const SymmetryData* sym, const Rational& sigma) {
  const auto pos = root_layout(root, sym);
  std::int64_t lo = 0, hi = 0;
  for (const auto& row : pos) {
    for (std::int64_t x : row) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  constexpr std::int64_t kStep = 4;
  const auto width = static_cast<std::size_t>((hi - lo) * kStep + 1);
  auto col = [&](std::int64_t x) { return static_cast<std::size_t>((x - lo) * kStep); };
  std::vector<std::string> rows;
  auto blank = [&]() { return std::string(width, ' '); };
  auto label = [&](std::int64_t n) { return to_string(Rational(static_cast<long>(2 * n)) + sigma); };

  std::string stem = blank();
  stem[col(0)] = '|';
  rows.push_back(stem);
  rows.push_back(stem);
  for (std::size_t l = root.levels.size(); l-- > 0;) {
    const std::int64_t n = root.n_min + static_cast<std::int64_t>(l);
    std::string row = blank();
    for (std::size_t v = 0; v < pos[l].size(); ++v) row[col(pos[l][v])] = '*';
    rows.push_back(row + "   " + label(n));
    if (l == 0) break;
    std::string up = blank(), bar = blank();
    for (std::size_t v = 0; v < pos[l].size(); ++v) {
      std::int64_t a = pos[l][v], b = pos[l][v];
      bool any = false;
      for (std::size_t c = 0; c < pos[l - 1].size(); ++c) {
        if (static_cast<std::size_t>(root.levels[l - 1][c].parent) != v) continue;
        a = std::min(a, pos[l - 1][c]);
        b = std::max(b, pos[l - 1][c]);
        any = true;
      }
      if (!any) continue;
      up[col(pos[l][v])] = '|';
      for (std::size_t k = col(a); k <= col(b); ++k) bar[k] = '-';
      for (std::size_t c = 0; c < pos[l - 1].size(); ++c) {
        if (static_cast<std::size_t>(root.levels[l - 1][c].parent) == v) bar[col(pos[l - 1][c])] = '+';
      }
      bar[col(pos[l][v])] = a == b ? '|' : '+';
    }
    rows.push_back(up);
    rows.push_back(bar);
  }
  std::ostringstream os;
  for (auto& r : rows) {
    while (!r.empty() && r.back() == ' ') r.pop_back();
    os << r << "\n";
  }
  return os.str();
}

}  // namespace latticeroot
