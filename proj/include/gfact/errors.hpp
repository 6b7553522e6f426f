#pragma once

#include <stdexcept>
#include <string>

namespace gfact {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ClosureTooLarge : Error { using Error::Error; };
struct OrderTooLarge : Error { using Error::Error; };
struct SingularGenerator : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct NotAutomorphism : Error { using Error::Error; };
struct ActionOrderMismatch : Error { using Error::Error; };
struct PNotDividing : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct GroupMismatch : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct IdentityFailed : Error { using Error::Error; };
struct VerifyFailed : Error { using Error::Error; };
struct FingerprintMismatch : Error { using Error::Error; };
struct ConstructionError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct UnknownGroup : Error { using Error::Error; };
struct BudgetExhausted : Error { using Error::Error; };
struct CatalogIncomplete : Error { using Error::Error; };

}  // namespace gfact
