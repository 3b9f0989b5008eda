#include "edgeprint/components.hpp"

#include <algorithm>
#include <numeric>

#include "edgeprint/errors.hpp"

namespace edgeprint {

namespace {

class DisjointSets {
 public:
  std::int32_t make_set() {
    const auto id = static_cast<std::int32_t>(parent_.size());
    parent_.push_back(id);
    return id;
  }

  std::int32_t find(std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root wins so that roots stay in first-seen order.
  void join(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::int32_t> parent_;
};

void require_min_size(std::size_t min_size) {
  if (min_size < 1) throw PreconditionError("min component size must be >= 1");
}

}  // namespace

LabeledMap label8(const EdgeMap& edges) {
  const int h = edges.height;
  const int w = edges.width;
  LabeledMap out;
  out.width = w;
  out.height = h;
  // Provisional labels are 1-based set ids; 0 is background.
  out.labels.assign(edges.bits.size(), 0);
  DisjointSets sets;
  sets.make_set();  // slot 0 reserved for background

  auto label_at = [&](int r, int c) -> std::int32_t {
    if (r < 0 || c < 0 || c >= w) return 0;
    return out.labels[static_cast<std::size_t>(r) * w + c];
  };

  // First pass: already-visited neighbours are W, NW, N, NE.
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!edges.at(r, c)) continue;
      const std::int32_t neighbours[4] = {label_at(r, c - 1),
                                          label_at(r - 1, c - 1),
                                          label_at(r - 1, c),
                                          label_at(r - 1, c + 1)};
      std::int32_t label = 0;
      for (std::int32_t n : neighbours) {
        if (n == 0) continue;
        if (label == 0)
          label = n;
        else
          sets.join(label, n);
      }
      if (label == 0) label = sets.make_set();
      out.labels[static_cast<std::size_t>(r) * w + c] = label;
    }
  }

  // Dense renumbering of roots in raster order of first appearance.
  std::vector<std::int32_t> dense(sets.size(), 0);
  for (auto& label : out.labels) {
    if (label == 0) continue;
    const std::int32_t root = sets.find(label);
    if (dense[root] == 0) {
      dense[root] = ++out.component_count;
      out.sizes.push_back(0);
    }
    label = dense[root];
    ++out.sizes[label - 1];
  }
  return out;
}

EdgeMap filter_small(const LabeledMap& labeled, std::size_t min_size) {
  require_min_size(min_size);
  EdgeMap out(labeled.width, labeled.height);
  for (std::size_t i = 0; i < labeled.labels.size(); ++i) {
    const std::int32_t label = labeled.labels[i];
    out.bits[i] = (label != 0 && labeled.size_of(label) >= min_size) ? 1 : 0;
  }
  return out;
}

std::size_t edginess(const EdgeMap& edges, std::size_t min_size) {
  require_min_size(min_size);
  const LabeledMap labeled = label8(edges);
  return static_cast<std::size_t>(
      std::count_if(labeled.sizes.begin(), labeled.sizes.end(),
                    [&](std::size_t s) { return s >= min_size; }));
}

}  // namespace edgeprint
