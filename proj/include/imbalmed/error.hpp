#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace imbalmed {

enum class ErrorCode {
  io,
  parse,
  malformed_row,
  duplicate_sample_id,
  no_data_rows,
  missing_label_column,
  empty_intersection,
  insufficient_class_count,
  invalid_argument,
  all_features_dropped,
  insufficient_rows,
  no_observed_overlap,
  empty_class,
  non_finite_input,
  dimension_mismatch,
  experiment_failed,
  internal,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::io: return "IoError";
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::malformed_row: return "MalformedRow";
    case ErrorCode::duplicate_sample_id: return "DuplicateSampleId";
    case ErrorCode::no_data_rows: return "NoDataRows";
    case ErrorCode::missing_label_column: return "MissingLabelColumn";
    case ErrorCode::empty_intersection: return "EmptyIntersection";
    case ErrorCode::insufficient_class_count: return "InsufficientClassCount";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::all_features_dropped: return "AllFeaturesDropped";
    case ErrorCode::insufficient_rows: return "InsufficientRows";
    case ErrorCode::no_observed_overlap: return "NoObservedOverlap";
    case ErrorCode::empty_class: return "EmptyClass";
    case ErrorCode::non_finite_input: return "NonFiniteInput";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::experiment_failed: return "ExperimentFailed";
    case ErrorCode::internal: return "InternalError";
  }
  return "UnknownError";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace imbalmed
