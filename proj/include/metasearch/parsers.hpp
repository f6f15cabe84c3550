#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "metasearch/results.hpp"

namespace metasearch {

// The parsing stage: turns a raw result page into at most `limit` ranked links
// in document order. Entries whose URL cannot be normalized are dropped and do
// not consume a rank.
//
//   http_json: {"results": [{"url": ..., "title": ..., "snippet": ...}, ...]}
//   http_html: <a class="result" href="URL">TITLE</a> followed by an element
//              with class "snippet" before the next result anchor
//   http_rss:  RSS 2.0 rss/channel/item with link, title, description
//
// Throws ParseError naming a byte offset or element path when the payload is
// not UTF-8 or is structurally invalid for its kind; PreconditionError for
// kind == simulated or limit == 0.
std::vector<ResultLink> parse_results(std::string_view raw, ProviderKind kind,
                                      std::string_view provider_id, std::size_t limit);

}  // namespace metasearch
