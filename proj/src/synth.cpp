#include "edgeprint/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "edgeprint/errors.hpp"
#include "rng.hpp"

namespace edgeprint {

namespace {

using detail::make_stream;
using detail::uniform;
using detail::uniform01;
using detail::uniform_int;

struct Rect {
  int x0, y0, x1, y1;  // half-open
};

// Same remainder rule as partition(): trailing slots take the extra pixel.
int slot_start(int extent, int parts, int i) {
  const int base = extent / parts;
  const int extra = extent % parts;
  const int first_big = parts - extra;
  return i * base + (i > first_big ? i - first_big : 0);
}

Rect cell_rect(const SynthSpec& spec, int br, int bc) {
  return {slot_start(spec.width, spec.band_cols, bc),
          slot_start(spec.height, spec.band_rows, br),
          slot_start(spec.width, spec.band_cols, bc + 1),
          slot_start(spec.height, spec.band_rows, br + 1)};
}

int cell_margin(const SynthSpec& spec) {
  return 5 + static_cast<int>(std::ceil(spec.line_thickness));
}

// One class stroke in cell-local slot coordinates: `along` runs parallel to
// the slot, `across` is the offset from the slot centre line.
struct Stroke {
  int slot;
  double along0, along1;
  double across0, across1;
};

struct Cell {
  bool vertical = false;
  std::vector<Stroke> strokes;
};

struct ClassLayout {
  std::vector<Cell> cells;  // row-major
};

struct CellGeometry {
  double along_lo, along_hi;  // usable range along the slot
  double slot_size;
  double across_base;         // across coordinate of slot 0's lower edge
  double half_band;           // max |across| offset for stroke centre lines
};

CellGeometry geometry(const SynthSpec& spec, const Rect& r, bool vertical) {
  const int m = cell_margin(spec);
  const int along_extent = vertical ? r.y1 - r.y0 : r.x1 - r.x0;
  const int across_extent = vertical ? r.x1 - r.x0 : r.y1 - r.y0;
  CellGeometry g;
  g.along_lo = m;
  g.along_hi = along_extent - m;
  g.slot_size = static_cast<double>(across_extent - 2 * m) / spec.max_lines;
  g.across_base = m;
  g.half_band = (g.slot_size - spec.line_thickness - 4.0) / 2.0;
  return g;
}

ClassLayout draw_layout(const SynthSpec& spec, std::mt19937_64& rng) {
  ClassLayout layout;
  for (int br = 0; br < spec.band_rows; ++br) {
    for (int bc = 0; bc < spec.band_cols; ++bc) {
      Cell cell;
      cell.vertical = detail::below(rng, 2) == 1;
      const CellGeometry g = geometry(spec, cell_rect(spec, br, bc), cell.vertical);
      const int count = uniform_int(rng, spec.min_lines, spec.max_lines);
      std::vector<int> slots(spec.max_lines);
      for (int i = 0; i < spec.max_lines; ++i) slots[i] = i;
      for (int i = spec.max_lines - 1; i > 0; --i) {
        std::swap(slots[i], slots[detail::below(rng, i + 1)]);
      }
      slots.resize(count);
      std::sort(slots.begin(), slots.end());
      const double usable = g.along_hi - g.along_lo;
      for (int slot : slots) {
        const double length = usable * uniform(rng, 0.55, 0.9);
        const double start = g.along_lo + uniform(rng, 0.0, usable - length);
        const double tilt = uniform(rng, -0.8, 0.8) * g.half_band;
        cell.strokes.push_back({slot, start, start + length, -tilt, tilt});
      }
      layout.cells.push_back(std::move(cell));
    }
  }
  return layout;
}

std::vector<int> quadrant_totals(const SynthSpec& spec, const ClassLayout& layout) {
  std::vector<int> totals(4, 0);
  for (int br = 0; br < spec.band_rows; ++br) {
    for (int bc = 0; bc < spec.band_cols; ++bc) {
      const int q = (br * 2 / spec.band_rows) * 2 + (bc * 2 / spec.band_cols);
      totals[q] += static_cast<int>(
          layout.cells[br * spec.band_cols + bc].strokes.size());
    }
  }
  return totals;
}

// Adds spec.session_strokes strokes in free slots of random cells.
ClassLayout with_session_strokes(const SynthSpec& spec, ClassLayout layout,
                                 std::mt19937_64& rng) {
  for (int added = 0; added < spec.session_strokes; ++added) {
    std::vector<int> open_cells;
    for (int i = 0; i < static_cast<int>(layout.cells.size()); ++i)
      if (static_cast<int>(layout.cells[i].strokes.size()) < spec.max_lines)
        open_cells.push_back(i);
    if (open_cells.empty()) break;
    const int index = open_cells[detail::below(rng, open_cells.size())];
    Cell& cell = layout.cells[index];
    std::vector<int> free_slots;
    for (int slot = 0; slot < spec.max_lines; ++slot) {
      if (std::none_of(cell.strokes.begin(), cell.strokes.end(),
                       [&](const Stroke& s) { return s.slot == slot; }))
        free_slots.push_back(slot);
    }
    const int slot = free_slots[detail::below(rng, free_slots.size())];
    const Rect rect = cell_rect(spec, index / spec.band_cols, index % spec.band_cols);
    const CellGeometry g = geometry(spec, rect, cell.vertical);
    const double usable = g.along_hi - g.along_lo;
    const double length = usable * uniform(rng, 0.55, 0.9);
    const double start = g.along_lo + uniform(rng, 0.0, usable - length);
    const double tilt = uniform(rng, -0.8, 0.8) * g.half_band;
    cell.strokes.push_back({slot, start, start + length, -tilt, tilt});
  }
  return layout;
}

std::vector<ClassLayout> class_layouts(const SynthSpec& spec) {
  constexpr int kMaxAttempts = 20000;
  std::vector<ClassLayout> layouts;
  std::vector<std::vector<int>> totals;
  std::set<int> densities;
  for (int c = 0; c < spec.class_count; ++c) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
      auto rng = make_stream(spec.seed, 1, static_cast<std::uint64_t>(c),
                             static_cast<std::uint64_t>(attempt));
      ClassLayout layout = draw_layout(spec, rng);
      const auto t = quadrant_totals(spec, layout);
      const int density = t[0] + t[1] + t[2] + t[3];
      if (densities.count(density)) continue;
      const bool separated = std::all_of(
          totals.begin(), totals.end(), [&](const std::vector<int>& other) {
            int l1 = 0;
            for (int q = 0; q < 4; ++q) l1 += std::abs(t[q] - other[q]);
            return l1 >= spec.min_class_separation;
          });
      if (!separated) continue;
      densities.insert(density);
      totals.push_back(t);
      layouts.push_back(std::move(layout));
      placed = true;
    }
    if (!placed) {
      throw PreconditionError("cannot draw " + std::to_string(spec.class_count) +
                              " classes with distinct, separated line densities");
    }
  }
  return layouts;
}

// Stamps every pixel whose centre lies within `radius` of segment (x0,y0)-(x1,y1).
void stamp_segment(GrayImage& image, double x0, double y0, double x1, double y1,
                   double radius, std::uint8_t value) {
  const int left = std::max(0, static_cast<int>(std::floor(std::min(x0, x1) - radius)));
  const int right = std::min(image.width() - 1,
                             static_cast<int>(std::ceil(std::max(x0, x1) + radius)));
  const int top = std::max(0, static_cast<int>(std::floor(std::min(y0, y1) - radius)));
  const int bottom = std::min(image.height() - 1,
                              static_cast<int>(std::ceil(std::max(y0, y1) + radius)));
  const double dx = x1 - x0;
  const double dy = y1 - y0;
  const double len2 = dx * dx + dy * dy;
  for (int r = top; r <= bottom; ++r) {
    for (int c = left; c <= right; ++c) {
      const double px = c + 0.5;
      const double py = r + 0.5;
      double t = len2 > 0 ? ((px - x0) * dx + (py - y0) * dy) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double ex = px - (x0 + t * dx);
      const double ey = py - (y0 + t * dy);
      if (ex * ex + ey * ey <= radius * radius) image.at(r, c) = value;
    }
  }
}

std::uint8_t to_pixel(int v) {
  return static_cast<std::uint8_t>(std::clamp(v, 0, 255));
}

SynthSample render_sample(const SynthSpec& spec, const ClassLayout& base,
                          int class_index, int sample_index) {
  const int session = synth_session(spec, sample_index);
  auto session_rng = make_stream(spec.seed, 3, static_cast<std::uint64_t>(class_index),
                                 static_cast<std::uint64_t>(session));
  const ClassLayout layout = with_session_strokes(spec, base, session_rng);

  auto rng = make_stream(spec.seed, 2, static_cast<std::uint64_t>(class_index),
                         static_cast<std::uint64_t>(sample_index));
  SynthSample sample{synth_class_id(class_index, spec.class_count), sample_index,
                     GrayImage(spec.width, spec.height, to_pixel(spec.background)),
                     0};
  const int contrast = spec.contrast_jitter > 0
                           ? uniform_int(rng, -spec.contrast_jitter, spec.contrast_jitter)
                           : 0;
  const std::uint8_t ink = to_pixel(spec.line_intensity + contrast);
  const double radius = spec.line_thickness / 2.0;

  for (int br = 0; br < spec.band_rows; ++br) {
    for (int bc = 0; bc < spec.band_cols; ++bc) {
      const Rect rect = cell_rect(spec, br, bc);
      const Cell& cell = layout.cells[br * spec.band_cols + bc];
      const CellGeometry g = geometry(spec, rect, cell.vertical);
      for (const Stroke& s : cell.strokes) {
        // Draws are taken even for dropped strokes so one stroke's fate does
        // not shift the others' jitter.
        const bool dropped = uniform01(rng) < spec.dropout;
        double a0 = s.along0 + uniform(rng, -1.0, 1.0) * spec.endpoint_jitter;
        double a1 = s.along1 + uniform(rng, -1.0, 1.0) * spec.endpoint_jitter;
        const double angle = uniform(rng, -1.0, 1.0) * spec.orientation_jitter;
        a0 = std::clamp(a0, g.along_lo, g.along_hi);
        a1 = std::clamp(a1, g.along_lo, g.along_hi);
        if (a1 < a0) std::swap(a0, a1);
        const double half = (a1 - a0) / 2.0;
        const double rotate = std::tan(angle) * half;
        const double mid = (s.across0 + s.across1) / 2.0;
        const double spread = (s.across1 - s.across0) / 2.0;
        const double c0 = std::clamp(mid - spread - rotate, -g.half_band, g.half_band);
        const double c1 = std::clamp(mid + spread + rotate, -g.half_band, g.half_band);
        if (dropped) continue;
        const double centre = g.across_base + (s.slot + 0.5) * g.slot_size;
        double x0, y0, x1, y1;
        if (cell.vertical) {
          x0 = rect.x0 + centre + c0; y0 = rect.y0 + a0;
          x1 = rect.x0 + centre + c1; y1 = rect.y0 + a1;
        } else {
          x0 = rect.x0 + a0; y0 = rect.y0 + centre + c0;
          x1 = rect.x0 + a1; y1 = rect.y0 + centre + c1;
        }
        stamp_segment(sample.image, x0, y0, x1, y1, radius, ink);
        ++sample.line_count;
      }
    }
  }

  for (int i = 0; i < spec.clutter_strokes; ++i) {
    const double x = uniform(rng, 0.0, spec.width);
    const double y = uniform(rng, 0.0, spec.height);
    const double len = uniform(rng, 3.0, 8.0);
    const double theta = uniform(rng, 0.0, std::numbers::pi);
    stamp_segment(sample.image, x, y, x + len * std::cos(theta),
                  y + len * std::sin(theta), 0.75, ink);
  }

  if (spec.noise_amplitude > 0) {
    for (auto& px : sample.image.pixels()) {
      px = to_pixel(px + uniform_int(rng, -spec.noise_amplitude, spec.noise_amplitude));
    }
  }
  return sample;
}

}  // namespace

void SynthSpec::validate() const {
  auto fail = [](const std::string& msg) { throw PreconditionError("synth: " + msg); };
  if (class_count < 2) fail("class_count must be >= 2");
  if (samples_per_class < 1) fail("samples_per_class must be >= 1");
  if (width < 32 || height < 32) fail("images must be at least 32x32");
  if (band_rows < 1 || band_cols < 1) fail("band grid must be at least 1x1");
  if (min_lines < 0 || max_lines < 1 || min_lines > max_lines)
    fail("need 0 <= min_lines <= max_lines, max_lines >= 1");
  if (!(line_thickness >= 1.0)) fail("line_thickness must be >= 1");
  if (orientation_jitter < 0 || endpoint_jitter < 0) fail("jitter must be >= 0");
  if (dropout < 0 || dropout > 1) fail("dropout must be in [0, 1]");
  if (clutter_strokes < 0 || noise_amplitude < 0 || contrast_jitter < 0)
    fail("clutter, noise and contrast jitter must be >= 0");
  if (background < 0 || background > 255 || line_intensity < 0 || line_intensity > 255)
    fail("intensities must be in [0, 255]");
  if (background == line_intensity) fail("strokes need contrast against the background");
  if (min_class_separation < 0) fail("min_class_separation must be >= 0");
  if (sessions < 1 || session_strokes < 0) fail("need sessions >= 1, session_strokes >= 0");
  const int m = cell_margin(*this);
  const int cell_w = width / band_cols;
  const int cell_h = height / band_rows;
  const int across = std::min(cell_w, cell_h) - 2 * m;
  if (across <= 0 || std::max(cell_w, cell_h) - 2 * m <= 4)
    fail("cells too small for the stroke margin");
  if (static_cast<double>(across) / max_lines < line_thickness + 6.0)
    fail("cells too small to keep " + std::to_string(max_lines) +
         " strokes separated");
}

std::string synth_class_id(int class_index, int class_count) {
  const int digits = std::max(2, static_cast<int>(std::to_string(class_count - 1).size()));
  std::string n = std::to_string(class_index);
  return "c" + std::string(static_cast<std::size_t>(std::max(0, digits - static_cast<int>(n.size()))), '0') + n;
}

int synth_session(const SynthSpec& spec, int sample_index) {
  return std::min(spec.sessions - 1,
                  sample_index * spec.sessions / std::max(1, spec.samples_per_class));
}

std::vector<std::vector<int>> synth_class_layouts(const SynthSpec& spec) {
  spec.validate();
  std::vector<std::vector<int>> out;
  for (const ClassLayout& layout : class_layouts(spec)) {
    std::vector<int> counts;
    for (const Cell& cell : layout.cells)
      counts.push_back(static_cast<int>(cell.strokes.size()));
    out.push_back(std::move(counts));
  }
  return out;
}

std::vector<SynthSample> generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  const auto layouts = class_layouts(spec);
  std::vector<SynthSample> samples;
  samples.reserve(static_cast<std::size_t>(spec.class_count) * spec.samples_per_class);
  for (int c = 0; c < spec.class_count; ++c) {
    for (int s = 0; s < spec.samples_per_class; ++s) {
      samples.push_back(render_sample(spec, layouts[c], c, s));
    }
  }
  return samples;
}

SynthSpec benchmark_synth_spec() {
  SynthSpec spec;
  spec.seed = 2011;
  return spec;
}

}  // namespace edgeprint
