// Classification benchmark sweeps.
//
// CSV columns:
//   generator,size,mode,rep,wall_ms,absorb_ms,nodes,branches,tg_residual,verdict
// wall_ms covers classification only; absorb_ms is the absorption step.
// verdict is a digest of the computed hierarchy. A timed-out run has TIMEOUT
// in wall_ms and verdict and empty nodes/branches; that (size, mode) is not
// run again in later repetitions, but larger sizes still are.

#ifndef DLR_BENCH_HPP
#define DLR_BENCH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlr/absorption.hpp"
#include "dlr/concept.hpp"

namespace dlr {

enum class GeneratorKind : std::uint8_t { CyclicPairs, GalenLike };

std::string_view to_string(GeneratorKind g);
// "cyclic" or "galen"
GeneratorKind parse_generator(std::string_view text);

struct BenchSpec {
  GeneratorKind generator = GeneratorKind::CyclicPairs;
  // Pair counts (cyclic) or general-axiom counts (galen).
  std::vector<int> sizes;
  int galen_definitions = 30;
  std::uint64_t seed = 42;
  std::vector<AbsorptionMode> modes{AbsorptionMode::None, AbsorptionMode::Basic, AbsorptionMode::Enhanced};
  std::int64_t timeout_ms = 30'000;
  int repetitions = 1;

  // Throws std::invalid_argument.
  void validate() const;
};

TBox generate(const BenchSpec& spec, int size);

struct BenchRow {
  GeneratorKind generator = GeneratorKind::CyclicPairs;
  int size = 0;
  AbsorptionMode mode = AbsorptionMode::None;
  int rep = 0;
  std::optional<double> wall_ms;  // empty on timeout
  double absorb_ms = 0;
  std::uint64_t nodes = 0;
  std::uint64_t branches = 0;
  std::size_t tg_residual = 0;
  std::string verdict;  // hierarchy digest; empty on timeout

  bool timed_out() const { return !wall_ms.has_value(); }
};

// Two modes classified the same instance differently.
class VerdictMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rows in (size, rep, mode) order. on_row, if set, sees each row as soon as
// it is produced.
std::vector<BenchRow> run_bench(const BenchSpec& spec, const std::function<void(const BenchRow&)>& on_row = {});

std::string csv_header();
std::string to_csv(const BenchRow& row);
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace dlr

#endif  // DLR_BENCH_HPP
