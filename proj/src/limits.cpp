#include "copos/limits.hpp"

#include <cstdlib>

namespace copos
{

std::size_t max_terms()
{
    if (const char* env = std::getenv(kMaxTermsEnv))
    {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return kDefaultMaxTerms;
}

void check_size(double count, const std::string& what)
{
    if (count > static_cast<double>(max_terms()))
        throw SizeLimitError(what + " exceeds size cap (" + std::to_string(max_terms()) +
                             "); raise " + kMaxTermsEnv + " to allow it");
}

} // namespace copos
