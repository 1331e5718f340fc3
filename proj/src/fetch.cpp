#include "rsrm/fetch.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace rsrm {

namespace {

std::string shell_quote(const std::string& s) {
    if (s.find('\'') != std::string::npos)
        throw std::invalid_argument("fetch_dataset: value not quotable: " + s);
    return "'" + s + "'";
}

void run_or_throw(const std::string& cmd, const std::string& what) {
    const int rc = std::system(cmd.c_str());
    if (rc != 0)
        throw std::runtime_error("fetch_dataset: " + what + " failed (exit status " +
                                 std::to_string(rc) + ")");
}

bool allowed_scheme(const std::string& url) {
    return url.rfind("https://", 0) == 0 || url.rfind("http://", 0) == 0 ||
           url.rfind("file://", 0) == 0;
}

}  // namespace

void fetch_dataset(const DatasetSpec& spec, const std::string& data_dir) {
    if (spec.remotes.empty())
        throw std::runtime_error("fetch_dataset: spec '" + spec.name + "' lists no remote files");
    fs::create_directories(data_dir);

    for (const RemoteFile& remote : spec.remotes) {
        if (!allowed_scheme(remote.url))
            throw std::runtime_error("fetch_dataset: unsupported url '" + remote.url + "'");
        const fs::path target = fs::path(data_dir) / remote.file;

        if (fs::exists(target)) {
            const std::string digest = sha256_file(target.string());
            if (remote.sha256.empty()) {
                std::cout << remote.file << ": already present, sha256 " << digest << "\n";
                continue;
            }
            if (digest == remote.sha256) {
                std::cout << remote.file << ": already present, digest ok\n";
                continue;
            }
            std::cout << remote.file << ": digest mismatch, fetching again\n";
        }

        const fs::path download = remote.z_compressed ? fs::path(target.string() + ".Z")
                                                      : fs::path(target.string() + ".part");
        std::error_code ec;
        fs::remove(download, ec);

        std::cout << "fetching " << remote.url << "\n";
        try {
            run_or_throw("curl -fsSL --retry 3 -o " + shell_quote(download.string()) + " " +
                             shell_quote(remote.url),
                         "download of '" + remote.url + "'");
            if (remote.z_compressed) {
                fs::remove(target, ec);
                run_or_throw("gzip -d -f " + shell_quote(download.string()),
                             "decompression of '" + download.string() + "'");
            } else {
                fs::rename(download, target);
            }
        } catch (...) {
            fs::remove(download, ec);
            throw;
        }

        const std::string digest = sha256_file(target.string());
        if (!remote.sha256.empty() && digest != remote.sha256) {
            fs::remove(target, ec);
            throw std::runtime_error("fetch_dataset: sha256 mismatch for '" + remote.file +
                                     "': expected " + remote.sha256 + ", got " + digest);
        }
        if (remote.sha256.empty())
            std::cout << remote.file << ": fetched, sha256 " << digest
                      << " (unpinned; record it in the spec to verify future fetches)\n";
        else
            std::cout << remote.file << ": fetched, digest ok\n";
    }
}

}  // namespace rsrm
