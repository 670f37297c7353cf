#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace imbrex::cli {

/// Exit codes: 0 all checks pass, 1 some check failed, 2 usage or input
/// error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// $IMBREX_CACHE_DIR, else ~/.cache/imbrex.
std::filesystem::path cache_dir();

}  // namespace imbrex::cli
