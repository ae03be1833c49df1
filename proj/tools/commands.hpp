#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace reglab::cli {

enum ExitCode { kOk = 0, kInternal = 1, kInputError = 2, kNoConvergence = 3 };

// 64-bit FNV-1a, used for the input hashes of the run manifest.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t h);

// REGLAB_DATA_DIR if set, else the configured data directory.
std::string data_dir();
// `name` as given if it exists, else under data_dir().
std::string resolve_data_file(const std::string& name);

int dispatch(int argc, char** argv);

}  // namespace reglab::cli
