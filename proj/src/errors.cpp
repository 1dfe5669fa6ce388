#include "chansel/errors.hpp"

namespace chansel {

std::string_view errc_name(errc code) {
  switch (code) {
    case errc::io_failure: return "IoFailure";
    case errc::malformed_header: return "MalformedHeader";
    case errc::ragged_data: return "RaggedData";
    case errc::unknown_label: return "UnknownLabel";
    case errc::missing_value: return "MissingValue";
    case errc::non_finite_value: return "NonFiniteValue";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::duplicate_channel: return "DuplicateChannel";
    case errc::empty_selection: return "EmptySelection";
    case errc::invalid_dataset: return "InvalidDataset";
    case errc::empty_class: return "EmptyClass";
    case errc::single_class: return "SingleClass";
    case errc::empty_scores: return "EmptyScores";
    case errc::non_finite_score: return "NonFiniteScore";
    case errc::insufficient_instances: return "InsufficientInstances";
    case errc::unknown_strategy: return "UnknownStrategy";
    case errc::unknown_classifier: return "UnknownClassifier";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::too_short_series: return "TooShortSeries";
    case errc::invalid_spec: return "InvalidSpec";
    case errc::empty_input: return "EmptyInput";
  }
  return "UnknownError";
}

bool is_input_error(errc code) {
  switch (code) {
    case errc::io_failure:
    case errc::malformed_header:
    case errc::ragged_data:
    case errc::unknown_label:
    case errc::missing_value:
    case errc::non_finite_value:
      return true;
    default:
      return false;
  }
}

Error::Error(errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

void raise(errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace chansel
