// Copyright 2026 The Kawing Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#ifdef KAWING_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "kawing/error.hpp"
#include "kawing/wiki.hpp"

namespace kawing {

namespace fs = std::filesystem;

FetchReport fetch_articles(const FetchOptions &options) {
  if (options.out_dir.empty()) throw Error("fetch: out_dir is required");
  if (options.lang_codes.empty()) throw Error("fetch: no language codes given");
  if (options.categories.empty()) throw Error("fetch: no categories given");

  FetchReport report;
  bool first_request = true;
  for (const auto &[category, titles] : options.categories) {
    fs::path category_dir = fs::path(options.out_dir) / category;
    fs::create_directories(category_dir);
    for (const auto &title : titles) {
      for (const auto &lang : options.lang_codes) {
        if (report.requests_made >= static_cast<std::size_t>(options.max_requests)) {
          report.failures.push_back("request cap reached before " + lang + ":" + title);
          return report;
        }
        // One request in flight at a time, politeness delay in between.
        if (!first_request && options.delay_ms > 0) {
          std::this_thread::sleep_for(std::chrono::milliseconds(options.delay_ms));
        }
        first_request = false;

        std::string url = build_article_url(lang, title, options.lang_codes);
        std::string host_prefix = "https://" + lang + ".wikipedia.org";
        std::string path = url.substr(host_prefix.size());
        ++report.requests_made;
#ifdef KAWING_HAVE_OPENSSL
        httplib::Client client(host_prefix);
#else
        httplib::Client client("http://" + lang + ".wikipedia.org");
#endif
        client.set_follow_location(true);
        client.set_connection_timeout(10);
        client.set_read_timeout(30);
        auto response = client.Get(path);
        if (!response || response->status != 200) {
          report.failures.push_back(url + " -> " +
                                    (response ? "HTTP " + std::to_string(response->status)
                                              : "connection failed"));
          continue;
        }
        std::string file_title = title;
        for (char &c : file_title) {
          if (c == ' ' || c == '/') c = '_';
        }
        fs::path out_path = category_dir / (file_title + "." + lang + ".html");
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error("cannot open for writing: " + out_path.string());
        out << response->body;
        ++report.pages_saved;
      }
    }
  }
  return report;
}

}  // namespace kawing
