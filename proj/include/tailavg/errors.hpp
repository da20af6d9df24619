#ifndef TAILAVG_ERRORS_HPP
#define TAILAVG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tailavg {

enum class errc {
  empty_input,
  too_few_values,
  non_positive_value,
  non_finite_value,
  non_positive_parameter,
  bad_exceedance_count,
  degenerate_tail,
  degenerate_excesses,
  bad_point_count,
  degenerate_points,
  convergence_failure,
  non_positive_shape,
  grid_out_of_range,
  empty_grid,
  all_candidates_failed,
  misaligned_inputs,
  bad_spec,
  too_many_failures,
  empty_result,
  no_exceedances,
  file_not_found,
  parse_error,
};

constexpr const char* to_string(errc c) {
  switch (c) {
    case errc::empty_input: return "empty_input";
    case errc::too_few_values: return "too_few_values";
    case errc::non_positive_value: return "non_positive_value";
    case errc::non_finite_value: return "non_finite_value";
    case errc::non_positive_parameter: return "non_positive_parameter";
    case errc::bad_exceedance_count: return "bad_exceedance_count";
    case errc::degenerate_tail: return "degenerate_tail";
    case errc::degenerate_excesses: return "degenerate_excesses";
    case errc::bad_point_count: return "bad_point_count";
    case errc::degenerate_points: return "degenerate_points";
    case errc::convergence_failure: return "convergence_failure";
    case errc::non_positive_shape: return "non_positive_shape";
    case errc::grid_out_of_range: return "grid_out_of_range";
    case errc::empty_grid: return "empty_grid";
    case errc::all_candidates_failed: return "all_candidates_failed";
    case errc::misaligned_inputs: return "misaligned_inputs";
    case errc::bad_spec: return "bad_spec";
    case errc::too_many_failures: return "too_many_failures";
    case errc::empty_result: return "empty_result";
    case errc::no_exceedances: return "no_exceedances";
    case errc::file_not_found: return "file_not_found";
    case errc::parse_error: return "parse_error";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  static constexpr std::size_t no_index = static_cast<std::size_t>(-1);

  error(errc code, const std::string& what, std::size_t index = no_index)
      : std::runtime_error(what), code_(code), index_(index) {}

  errc code() const noexcept { return code_; }

  // Offending element index or input line number, when meaningful.
  std::size_t index() const noexcept { return index_; }

 private:
  errc code_;
  std::size_t index_;
};

}  // namespace tailavg

#endif  // TAILAVG_ERRORS_HPP
