#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>

namespace nosreg {

// Column layout of a trajectory CSV (see write_trajectory_csv).
struct CsvLayout {
    std::size_t states = 0;
    std::size_t exo = 0;
    std::size_t outputs = 0;
};

// gnuplot script with two stacked panels read from `csv`: tracking errors
// e_j(t) on top, control inputs u_j(t) and regulator inputs v_j(t) below.
// Renders to `image` (PNG) when run with `gnuplot <script>`.
void write_gnuplot_script(std::ostream& os, const std::filesystem::path& csv, const std::filesystem::path& image,
                          const CsvLayout& layout);

}  // namespace nosreg
