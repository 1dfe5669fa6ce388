#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chansel {

enum class errc {
  io_failure,
  malformed_header,
  ragged_data,
  unknown_label,
  missing_value,
  non_finite_value,
  index_out_of_range,
  duplicate_channel,
  empty_selection,
  invalid_dataset,
  empty_class,
  single_class,
  empty_scores,
  non_finite_score,
  insufficient_instances,
  unknown_strategy,
  unknown_classifier,
  shape_mismatch,
  too_short_series,
  invalid_spec,
  empty_input,
};

/// Stable CamelCase name of the error condition, used in diagnostics.
std::string_view errc_name(errc code);

/// True for errors caused by unreadable or malformed input (CLI exit 2);
/// everything else is a domain error (CLI exit 3).
bool is_input_error(errc code);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& detail);
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] void raise(errc code, const std::string& detail);

}  // namespace chansel
