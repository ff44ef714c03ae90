#include "nosreg/plot.hpp"

#include <ostream>
#include <string>

namespace nosreg {

void write_gnuplot_script(std::ostream& os, const std::filesystem::path& csv, const std::filesystem::path& image,
                          const CsvLayout& layout) {
    // 1-based gnuplot columns: t, x..., w..., y..., r..., e..., u..., v...
    const std::size_t p = layout.outputs;
    const std::size_t e_col = 2 + layout.states + layout.exo + 2 * p;
    const std::size_t u_col = e_col + p;
    const std::size_t v_col = u_col + p;
    const std::string data = "'" + csv.generic_string() + "'";

    os << "set datafile separator ','\n"
       << "set terminal pngcairo size 1200,900\n"
       << "set output '" << image.generic_string() << "'\n"
       << "set key autotitle columnhead\n"
       << "set grid\n"
       << "set multiplot layout 2,1\n\n";

    os << "set title 'Tracking errors'\n"
       << "set xlabel 't [s]'\n"
       << "set ylabel 'e = r - y'\n"
       << "plot ";
    for (std::size_t j = 0; j < p; ++j) {
        if (j) os << ", \\\n     ";
        os << data << " using 1:" << e_col + j << " with lines lw 2";
    }
    os << "\n\n";

    os << "set title 'Control inputs'\n"
       << "set ylabel 'input'\n"
       << "plot ";
    for (std::size_t j = 0; j < p; ++j) {
        if (j) os << ", \\\n     ";
        os << data << " using 1:" << u_col + j << " with lines lw 2, \\\n     " << data << " using 1:" << v_col + j
           << " with lines dt 2";
    }
    os << "\n\nunset multiplot\n";
}

}  // namespace nosreg
