#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcolloid::cli {

// Figure datasets by id: "capsule", "torus", "cube-heatmap". Writes
// <id>.csv under dir and returns the paths written. Content is
// deterministic for a fixed build.
std::vector<std::string> emit_figure_data(const std::string& id,
                                          const std::string& dir);

// Entry point behind the qcolloid binary. args are in natural order
// without the program name. Returns the process exit code: 0 success,
// 1 input error, 2 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace qcolloid::cli
