#pragma once

#include <string>
#include <string_view>

namespace metasearch {

// Canonical form used to compare links across engines: lowercase scheme and
// host, no default port (80 for http, 443 for https), no fragment, no trailing
// slash except on the root path. Percent-escapes are left alone. Idempotent.
// Throws NormalizationError for anything that is not an absolute
// scheme://host URL.
std::string normalize_url(std::string_view raw);

}  // namespace metasearch
