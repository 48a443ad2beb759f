#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coxreg/cone.hpp"
#include "coxreg/groebner.hpp"

namespace coxreg::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kNotStabilized = 3 };

/// Input error with a 1-based line and column.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// "GF(p)" or "QQ".
Field parse_field(std::string_view text);

struct RingFile {
  RingPtr ring;
  Ideal ideal;
};

/// ring: P(n1,...,nl) over GF(p)|QQ
/// ideal: f1; f2; ...   (may continue over several lines, may be empty)
/// '#' starts a comment. `field` replaces the declared field.
RingFile parse_ring_file(std::string_view text, std::optional<Field> field = std::nullopt);
RingFile read_ring_file(const std::string& path, std::optional<Field> field = std::nullopt);

struct ConeFile {
  std::string example;
  std::int64_t radicand = 2;
  std::array<std::string, 2> basis{"e1", "e2"};
  std::optional<ConeQD> nef;
  std::vector<QVec> classes;
  std::vector<int> d;
  std::optional<QVec> q;
  std::optional<QVec> figure_q;
};

/// key: value lines; vectors are "a, b" with entries in Q(sqrt radicand),
/// lists are ';'-separated. Keys: example, radicand, basis, nef, classes, d, q, figure-q.
ConeFile parse_cone_file(std::string_view text);
ConeFile read_cone_file(const std::string& path);

/// "a1..b1,a2..b2" (a single integer k stands for k..k), every degree in the box, in lexicographic order.
std::vector<MultiDegree> parse_twist_box(std::string_view text);
/// "1,1;1,2"
std::vector<MultiDegree> parse_degree_list(std::string_view text);

std::string read_file(const std::string& path);

/// Worker count from COXREG_THREADS, else the hardware concurrency.
unsigned default_threads();

/// Full command-line entry point; returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coxreg::cli
