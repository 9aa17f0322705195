#pragma once

namespace waveq::cli {

// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv);

} // namespace waveq::cli
