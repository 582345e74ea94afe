#pragma once

#include <stdexcept>
#include <string>

namespace nsi {

// Domain error with a stable machine-readable code. what() renders as
// "<code>" or "<code> <detail>"; the CLI prints it verbatim as the
// single-line diagnostic.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(detail.empty() ? code : code + " " + detail),
          code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define NSI_DEFINE_ERROR(Name)                     \
    struct Name : Error {                          \
        explicit Name(const std::string& detail = "") : Error(#Name, detail) {} \
    }

NSI_DEFINE_ERROR(SingularMatrix);
NSI_DEFINE_ERROR(DimensionMismatch);
NSI_DEFINE_ERROR(NotSymmetric);
NSI_DEFINE_ERROR(DivisionByZero);
NSI_DEFINE_ERROR(NotNegativeDefinite);
NSI_DEFINE_ERROR(AsymmetricAdjacency);
NSI_DEFINE_ERROR(InvalidPair);
NSI_DEFINE_ERROR(UnsupportedModel);
NSI_DEFINE_ERROR(ModelMismatch);
NSI_DEFINE_ERROR(NotComplete);
NSI_DEFINE_ERROR(NotPrimitive);
NSI_DEFINE_ERROR(NotSimplicial);
NSI_DEFINE_ERROR(DuplicateRay);
NSI_DEFINE_ERROR(NotSmooth);
NSI_DEFINE_ERROR(NotCartier);
NSI_DEFINE_ERROR(QuasiPolynomialMismatch);
NSI_DEFINE_ERROR(NonStabilizing);
NSI_DEFINE_ERROR(MissingChiO);
NSI_DEFINE_ERROR(Usage);
NSI_DEFINE_ERROR(SinkFailure);
NSI_DEFINE_ERROR(ParseError);

#undef NSI_DEFINE_ERROR

} // namespace nsi
