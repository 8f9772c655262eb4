#pragma once

#include <filesystem>
#include <iosfwd>

namespace ncsc::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitConfigError = 2;

// Output directory used when --out is not given: $NCSC_OUT_DIR, else ".".
std::filesystem::path default_out_dir();

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncsc::harness
