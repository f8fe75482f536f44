// Shared plumbing: error types, deterministic parallel map, seed derivation,
// CSV formatting and a git-style content hash for report provenance.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fiolab {

// Input has the wrong shape (mismatched grids, bad container, ...).
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// A parameter is outside its admissible range.
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// A user-supplied evaluator produced a non-finite value; message names the point.
struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

// Global worker count for parallel_for. 0 = hardware concurrency.
void set_thread_count(int threads);
int thread_count();

// Runs fn(begin, end) on disjoint contiguous index ranges covering [0, n).
// Workers only write to their own slots; reductions are left to the caller and
// must be done serially in index order so results do not depend on the worker
// count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

// splitmix64 step; used to derive independent per-cell seeds from a master
// seed so that results do not depend on execution order.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag);
std::uint64_t derive_seed(std::uint64_t master, const std::string& tag);

// Shortest round-trip decimal form (%.17g); used for all CSV/report output so
// reruns are byte-identical.
std::string format_double(double v);

// SHA-1 of a git blob header plus content ("blob <len>\0<content>"), hex.
std::string git_blob_sha1(const std::string& content);

// Minimal CSV writer: caller supplies preformatted cells.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();
    void header(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    void* stream_;  // std::ofstream, kept out of the header
};

}  // namespace fiolab
