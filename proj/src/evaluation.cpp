#include "edgeprint/evaluation.hpp"

#include <algorithm>
#include <exception>
#include <iomanip>
#include <sstream>
#include <tuple>

#include "edgeprint/errors.hpp"
#include "edgeprint/matcher.hpp"
#include "rng.hpp"

namespace edgeprint {

namespace {

// Runs fn(i) for i in [0, n) across OpenMP threads. The first failure in index
// order is rethrown with context from describe(i).
template <typename Fn, typename Describe>
void parallel_for_each(std::size_t n, Fn&& fn, Describe&& describe) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long>(n);
  #pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), describe(i) + ": " + e.what());
    }
  }
}

std::string rate(double r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << r;
  return out.str();
}

}  // namespace

std::map<std::string, ClassSplit> split(
    const std::map<std::string, std::size_t>& samples_per_class,
    const SplitSpec& spec) {
  if (spec.n_train < 1 || spec.n_test < 1) {
    throw PreconditionError("split needs n_train >= 1 and n_test >= 1");
  }
  const auto needed = static_cast<std::size_t>(spec.n_train + spec.n_test);
  std::map<std::string, ClassSplit> out;
  for (const auto& [class_id, available] : samples_per_class) {
    if (available < needed) {
      throw PreconditionError("class '" + class_id + "' has " +
                              std::to_string(available) + " samples, split needs " +
                              std::to_string(needed));
    }
    std::mt19937_64 rng(
        detail::splitmix64(spec.seed ^ detail::fnv1a64(class_id)));
    std::vector<std::size_t> order(available);
    for (std::size_t i = 0; i < available; ++i) order[i] = i;
    for (std::size_t i = available - 1; i > 0; --i) {
      std::swap(order[i], order[detail::below(rng, i + 1)]);
    }
    ClassSplit& s = out[class_id];
    s.train.assign(order.begin(), order.begin() + spec.n_train);
    s.test.assign(order.begin() + spec.n_train, order.begin() + needed);
  }
  return out;
}

EvalResult evaluate(const Corpus& corpus, const SplitSpec& spec,
                    const ExtractionConfig& config) {
  config.validate();
  std::map<std::string, std::vector<const LabeledImage*>> by_class;
  for (const LabeledImage& item : corpus) by_class[item.class_id].push_back(&item);
  if (by_class.empty()) throw PreconditionError("corpus is empty");

  std::map<std::string, std::size_t> counts;
  for (auto& [class_id, items] : by_class) {
    std::sort(items.begin(), items.end(),
              [](const LabeledImage* a, const LabeledImage* b) {
                return a->sample_index < b->sample_index;
              });
    for (std::size_t i = 1; i < items.size(); ++i) {
      if (items[i]->sample_index == items[i - 1]->sample_index) {
        throw PreconditionError("class '" + class_id + "' has duplicate sample " +
                                std::to_string(items[i]->sample_index));
      }
    }
    counts[class_id] = items.size();
  }
  const auto splits = split(counts, spec);

  struct Job {
    const LabeledImage* item;
    bool train;
  };
  std::vector<Job> jobs;
  for (const auto& [class_id, s] : splits) {
    const auto& items = by_class.at(class_id);
    for (std::size_t pos : s.train) jobs.push_back({items[pos], true});
    for (std::size_t pos : s.test) jobs.push_back({items[pos], false});
  }
  auto describe = [&](std::size_t i) {
    return "class '" + jobs[i].item->class_id + "' sample " +
           std::to_string(jobs[i].item->sample_index);
  };

  std::vector<FeatureVector> features(jobs.size());
  parallel_for_each(
      jobs.size(),
      [&](std::size_t i) { features[i] = extract(jobs[i].item->image, config); },
      describe);

  Gallery gallery(config);
  std::vector<std::size_t> tests;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (jobs[i].train)
      gallery.add(jobs[i].item->class_id, features[i]);
    else
      tests.push_back(i);
  }
  if (tests.empty()) throw PreconditionError("evaluation has no test samples");

  EvalResult result;
  result.config = config;
  result.split = spec;
  result.per_test.resize(tests.size());
  parallel_for_each(
      tests.size(),
      [&](std::size_t k) {
        const Job& job = jobs[tests[k]];
        const MatchReport report = identify_two_stage(features[tests[k]], gallery);
        result.per_test[k] = {job.item->class_id, job.item->sample_index,
                              report.stage1_class, report.stage2_class};
      },
      [&](std::size_t k) { return describe(tests[k]); });

  std::sort(result.per_test.begin(), result.per_test.end(),
            [](const TestOutcome& a, const TestOutcome& b) {
              return std::tie(a.class_id, a.sample_index) <
                     std::tie(b.class_id, b.sample_index);
            });
  std::size_t correct1 = 0;
  std::size_t correct2 = 0;
  for (const TestOutcome& t : result.per_test) {
    correct1 += t.stage1 == t.class_id;
    correct2 += t.stage2 == t.class_id;
  }
  const auto total = static_cast<double>(result.per_test.size());
  result.r_stage1 = static_cast<double>(correct1) / total;
  result.r_stage2 = static_cast<double>(correct2) / total;
  return result;
}

std::vector<RegionGrid> default_sweep_grids() {
  return {RegionGrid{2, 2}, RegionGrid{2, 4}, RegionGrid{4, 4}};
}

std::vector<EdgeOperator> default_sweep_operators() {
  return {EdgeOperator::Sobel, EdgeOperator::Laplacian, EdgeOperator::LoG};
}

std::vector<SweepCell> sweep(const Corpus& corpus, const SplitSpec& spec,
                             const ExtractionConfig& base,
                             const std::vector<RegionGrid>& grids,
                             const std::vector<EdgeOperator>& operators) {
  std::vector<SweepCell> cells;
  for (const RegionGrid& grid : grids) {
    for (EdgeOperator op : operators) {
      ExtractionConfig config = base;
      config.grid = grid;
      config.op = op;
      cells.push_back({grid, op, evaluate(corpus, spec, config)});
    }
  }
  return cells;
}

std::string format_sweep(const std::vector<SweepCell>& cells) {
  std::ostringstream out;
  out << std::left << std::setw(6) << "grid" << std::setw(11) << "operator"
      << std::right << std::setw(10) << "r_stage1" << std::setw(10)
      << "r_stage2" << std::setw(8) << "n_test" << '\n';
  for (const SweepCell& cell : cells) {
    out << std::left << std::setw(6) << cell.grid.to_string() << std::setw(11)
        << to_string(cell.op) << std::right << std::setw(10)
        << rate(cell.result.r_stage1) << std::setw(10)
        << rate(cell.result.r_stage2) << std::setw(8)
        << cell.result.per_test.size() << '\n';
  }
  out << "\ngrid,operator,r_stage1,r_stage2,n_test\n";
  for (const SweepCell& cell : cells) {
    out << cell.grid.to_string() << ',' << to_string(cell.op) << ','
        << format_double(cell.result.r_stage1) << ','
        << format_double(cell.result.r_stage2) << ','
        << cell.result.per_test.size() << '\n';
  }
  return out.str();
}

std::string format_evaluation(const EvalResult& result) {
  std::ostringstream out;
  out << "config " << result.config.fingerprint() << '\n'
      << "split n_train=" << result.split.n_train
      << " n_test=" << result.split.n_test << " seed=" << result.split.seed
      << " rng=" << result.rng_id << '\n'
      << "r_stage1 " << rate(result.r_stage1) << '\n'
      << "r_stage2 " << rate(result.r_stage2) << '\n'
      << "n_test " << result.per_test.size() << "\n\n"
      << "class,sample,stage1,stage2\n";
  for (const TestOutcome& t : result.per_test) {
    out << t.class_id << ',' << t.sample_index << ',' << t.stage1 << ','
        << t.stage2 << '\n';
  }
  return out.str();
}

}  // namespace edgeprint
