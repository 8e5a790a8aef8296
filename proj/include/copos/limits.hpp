#ifndef COPOS_LIMITS_HPP
#define COPOS_LIMITS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace copos
{

/// Environment variable that overrides the default size cap.
inline constexpr const char* kMaxTermsEnv = "COPOS_MAX_TERMS";
inline constexpr std::size_t kDefaultMaxTerms = std::size_t{1} << 22;

/// Thrown when an enumeration would exceed the configured size cap.
class SizeLimitError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Current cap on dense tensor sizes, grid sizes and monomial bases.
std::size_t max_terms();

/// Throws SizeLimitError if count exceeds max_terms().
void check_size(double count, const std::string& what);

} // namespace copos

#endif
