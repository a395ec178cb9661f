#pragma once

// ---------------------------------------------------------------------------
// TLE catalog download with a per-day file cache.  The HTTP layer hides
// behind an interface so everything is testable offline; the real transport
// only exists at the edge.
// ---------------------------------------------------------------------------

#include <memory>
#include <string>

#include "leovec/errors.hpp"

namespace leovec {

struct FetchError : Error {
  using Error::Error;
};
struct NetworkUnavailableError : FetchError {
  using FetchError::FetchError;
};
struct HttpStatusError : FetchError {
  explicit HttpStatusError(int status)
      : FetchError("catalog endpoint returned HTTP status " +
                   std::to_string(status)),
        status(status) {}
  int status;
};
struct EmptyResponseError : FetchError {
  using FetchError::FetchError;
};

class HttpTransport {
 public:
  struct Response {
    int status = 0;  // 0 = no connection
    std::string body;
  };
  virtual ~HttpTransport() = default;
  virtual Response get(const std::string& url) = 0;
};

// Real client (TLS when built with OpenSSL).  Plain-http URLs always work.
std::unique_ptr<HttpTransport> make_http_transport();

struct FetchOptions {
  std::string cache_dir;  // required
  std::string date_utc;   // "YYYY-MM-DD"; empty = today's UTC date
  bool offline = false;   // serve from cache only, never touch the network
};

// The cache file that fetch_tle_group would read or write.
std::string tle_cache_path(const std::string& cache_dir,
                           const std::string& group_name,
                           const std::string& date_utc);

// Query URL for one catalog group on the given endpoint.
std::string tle_group_url(const std::string& endpoint_url,
                          const std::string& group_name);

// Returns the group's TLE text: today's cache entry if present, otherwise a
// fresh download written to the cache (temp file + atomic rename, so racing
// fetchers can only produce identical files).  offline + cache miss is a
// NetworkUnavailableError; HTTP failures map to HttpStatusError /
// EmptyResponseError.
std::string fetch_tle_group(HttpTransport& transport,
                            const std::string& endpoint_url,
                            const std::string& group_name,
                            const FetchOptions& opt);

}  // namespace leovec
