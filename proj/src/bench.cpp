#include "dlr/bench.hpp"

#include <cstdio>
#include <map>
#include <set>

#include "dlr/classifier.hpp"
#include "dlr/generators.hpp"

namespace dlr {

std::string_view to_string(GeneratorKind g) { return g == GeneratorKind::CyclicPairs ? "cyclic" : "galen"; }

GeneratorKind parse_generator(std::string_view text) {
  if (text == "cyclic") return GeneratorKind::CyclicPairs;
  if (text == "galen") return GeneratorKind::GalenLike;
  throw std::invalid_argument("unknown generator '" + std::string(text) + "' (expected cyclic or galen)");
}

void BenchSpec::validate() const {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  if (timeout_ms < 1) throw std::invalid_argument("timeout must be positive");
  if (galen_definitions < 0) throw std::invalid_argument("definition count must be non-negative");
  if (modes.empty()) throw std::invalid_argument("no absorption modes given");
  for (int s : sizes)
    if (s < 0) throw std::invalid_argument("sizes must be non-negative");
}

TBox generate(const BenchSpec& spec, int size) {
  return spec.generator == GeneratorKind::CyclicPairs ? gen_cyclic_pairs(size)
                                                      : gen_galen_like(spec.galen_definitions, size, spec.seed);
}

std::vector<BenchRow> run_bench(const BenchSpec& spec, const std::function<void(const BenchRow&)>& on_row) {
  spec.validate();
  std::vector<BenchRow> rows;
  for (int size : spec.sizes) {
    const TBox t = generate(spec, size);
    std::set<AbsorptionMode> timed_out;
    for (int rep = 0; rep < spec.repetitions; ++rep) {
      std::map<AbsorptionMode, std::string> verdicts;
      for (AbsorptionMode mode : spec.modes) {
        BenchRow row;
        row.generator = spec.generator;
        row.size = size;
        row.mode = mode;
        row.rep = rep;
        if (!timed_out.contains(mode)) {
          ClassifyOptions options;
          options.timeout_ms = spec.timeout_ms;
          Hierarchy h = classify(t, mode, options);
          row.absorb_ms = h.absorb_ms;
          row.tg_residual = h.tg_residual;
          if (h.complete()) {
            row.wall_ms = h.classify_ms;
            row.nodes = h.stats.nodes_created;
            row.branches = h.stats.branch_points;
            row.verdict = digest(h);
            verdicts[mode] = row.verdict;
          } else {
            timed_out.insert(mode);
          }
        }
        rows.push_back(row);
        if (on_row) on_row(row);
      }
      for (const auto& [mode, v] : verdicts)
        if (v != verdicts.begin()->second)
          throw VerdictMismatch("hierarchies differ between " + std::string(to_string(verdicts.begin()->first)) +
                                " and " + std::string(to_string(mode)) + " at size " + std::to_string(size));
    }
  }
  return rows;
}

std::string csv_header() { return "generator,size,mode,rep,wall_ms,absorb_ms,nodes,branches,tg_residual,verdict"; }

std::string to_csv(const BenchRow& row) {
  auto fixed = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  std::string out = std::string(to_string(row.generator)) + "," + std::to_string(row.size) + "," +
                    std::string(to_string(row.mode)) + "," + std::to_string(row.rep) + ",";
  if (row.timed_out()) {
    out += "TIMEOUT," + fixed(row.absorb_ms) + ",,," + std::to_string(row.tg_residual) + ",TIMEOUT";
  } else {
    out += fixed(*row.wall_ms) + "," + fixed(row.absorb_ms) + "," + std::to_string(row.nodes) + "," +
           std::to_string(row.branches) + "," + std::to_string(row.tg_residual) + "," + row.verdict;
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << csv_header() << "\n";
  for (const auto& r : rows) out << to_csv(r) << "\n";
}

}  // namespace dlr
