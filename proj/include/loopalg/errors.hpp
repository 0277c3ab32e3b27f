#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace loopalg {

// All recoverable failures carry a stable kind tag (used by the CLI to map
// failures to exit codes and by tests to pin down the error path).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

namespace errkind {
inline constexpr const char* kBadGroup = "BadGroup";
inline constexpr const char* kCapExceeded = "CapExceeded";
inline constexpr const char* kGroupMismatch = "GroupMismatch";
inline constexpr const char* kNonSurjective = "NonSurjective";
inline constexpr const char* kSectionInvalid = "SectionInvalid";
inline constexpr const char* kUnrepresentableValue = "UnrepresentableValue";
inline constexpr const char* kCocycleIdentityViolation = "CocycleIdentityViolation";
inline constexpr const char* kNotSymmetric = "NotSymmetric";
inline constexpr const char* kNotNormalized = "NotNormalized";
inline constexpr const char* kGradingViolation = "GradingViolation";
inline constexpr const char* kCentroidNotGradedField = "CentroidNotGradedField";
inline constexpr const char* kCentroidNotSplit = "CentroidNotSplit";
inline constexpr const char* kNotGradedCentral = "NotGradedCentral";
inline constexpr const char* kSimplicityUnknown = "SimplicityUnknown";
inline constexpr const char* kNotGradedSimple = "NotGradedSimple";
inline constexpr const char* kClassMismatch = "ClassMismatch";
inline constexpr const char* kCertificateFailure = "CertificateFailure";
inline constexpr const char* kBadDocument = "BadDocument";
inline constexpr const char* kBadArgument = "BadArgument";
inline constexpr const char* kIoError = "IoError";
}  // namespace errkind

}  // namespace loopalg
