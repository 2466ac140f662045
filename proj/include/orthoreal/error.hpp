#pragma once

#include <stdexcept>
#include <string>

namespace ortho {

enum class ErrorCode {
    ZeroInSquareClass,
    ZeroConstantTerm,
    NotIrreducible,
    CharTwoDiscriminant,
    SpinorNormCharTwo,
    DegenerateForm,
    DependentBasis,
    FieldMismatch,
    SpaceMismatch,
    GroupTooLarge,
    SearchTooLarge,
    DecompositionFailure,
    WrongAmbient,
    WrongFieldClass,
    EtaConstructionFailed,
    InvalidConfig,
    InternalError,
};

const char* error_code_name(ErrorCode c);

/// Library exception type; `code()` is stable and machine-readable.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace ortho
