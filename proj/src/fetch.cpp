#include "leovec/fetch.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
// keep httplib's own define; CMake sets it when OpenSSL is available
#endif
#include "httplib.h"

namespace leovec {

namespace fs = std::filesystem;

namespace {

std::string today_utc() {
  std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday);
  return buf;
}

class HttplibTransport : public HttpTransport {
 public:
  Response get(const std::string& url) override {
    // Split "scheme://host[:port]/path..." for httplib's client ctor.
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
      throw FetchError("endpoint URL '" + url + "' has no scheme");
    size_t host_start = scheme_end + 3;
    size_t path_start = url.find('/', host_start);
    std::string base = path_start == std::string::npos
                           ? url
                           : url.substr(0, path_start);
    std::string path =
        path_start == std::string::npos ? "/" : url.substr(path_start);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (url.rfind("https://", 0) == 0)
      throw NetworkUnavailableError(
          "built without TLS support; use an http:// endpoint or a cached "
          "file");
#endif
    httplib::Client client(base);
    client.set_follow_location(true);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    auto res = client.Get(path);
    if (!res) return {0, {}};
    return {res->status, res->body};
  }
};

}  // namespace

std::unique_ptr<HttpTransport> make_http_transport() {
  return std::make_unique<HttplibTransport>();
}

std::string tle_cache_path(const std::string& cache_dir,
                           const std::string& group_name,
                           const std::string& date_utc) {
  std::string date = date_utc.empty() ? today_utc() : date_utc;
  return (fs::path(cache_dir) / group_name / (date + ".tle")).string();
}

std::string tle_group_url(const std::string& endpoint_url,
                          const std::string& group_name) {
  char sep = endpoint_url.find('?') == std::string::npos ? '?' : '&';
  return endpoint_url + sep + "GROUP=" + group_name + "&FORMAT=tle";
}

std::string fetch_tle_group(HttpTransport& transport,
                            const std::string& endpoint_url,
                            const std::string& group_name,
                            const FetchOptions& opt) {
  if (opt.cache_dir.empty())
    throw FetchError("fetching needs a cache directory");
  fs::path cached(tle_cache_path(opt.cache_dir, group_name, opt.date_utc));

  if (fs::exists(cached)) {
    std::ifstream in(cached, std::ios::binary);
    if (!in) throw IoError("cannot read cache file " + cached.string());
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
  }
  if (opt.offline)
    throw NetworkUnavailableError("offline and no cache entry at " +
                                  cached.string());

  HttpTransport::Response res =
      transport.get(tle_group_url(endpoint_url, group_name));
  if (res.status == 0)
    throw NetworkUnavailableError("no connection to " + endpoint_url);
  if (res.status != 200) throw HttpStatusError(res.status);
  if (res.body.empty())
    throw EmptyResponseError("catalog endpoint returned an empty body for "
                             "group '" + group_name + "'");

  fs::create_directories(cached.parent_path());
  fs::path tmp = cached;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write cache file " + tmp.string());
    out << res.body;
  }
  fs::rename(tmp, cached);  // atomic: racing fetchers write identical bytes
  return res.body;
}

}  // namespace leovec
