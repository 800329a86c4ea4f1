#include "branchfall/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace branchfall {

std::string render_braid_svg(const BraidWord& word) {
  word.validate();
  const int gap = 40, row = 40, margin = 20;
  const int n = word.strands;
  const int rows = static_cast<int>(word.letters.size());
  const int width = 2 * margin + gap * (n - 1);
  const int height = 2 * margin + row * std::max(rows, 1);
  auto x = [&](int strand) { return margin + gap * strand; };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  o << "<title>" << (word.letters.empty() ? std::string("trivial") : word.str()) << " on " << n
    << " strands</title>\n";
  o << "<g fill=\"none\" stroke=\"black\" stroke-width=\"3\" stroke-linecap=\"round\">\n";
  if (rows == 0) {
    for (int s = 0; s < n; ++s)
      o << "<line x1=\"" << x(s) << "\" y1=\"" << margin << "\" x2=\"" << x(s) << "\" y2=\"" << height - margin
        << "\"/>\n";
  }
  for (int r = 0; r < rows; ++r) {
    const int y0 = margin + r * row, y1 = y0 + row, ym = y0 + row / 2;
    const int g = word.letters[r];
    const int i = std::abs(g) - 1;  // crossing between positions i and i + 1
    for (int s = 0; s < n; ++s)
      if (s != i && s != i + 1)
        o << "<line x1=\"" << x(s) << "\" y1=\"" << y0 << "\" x2=\"" << x(s) << "\" y2=\"" << y1 << "\"/>\n";
    // positive letters: the strand entering on the left passes over
    const int over_from = g > 0 ? i : i + 1, under_from = g > 0 ? i + 1 : i;
    const int over_to = g > 0 ? i + 1 : i, under_to = g > 0 ? i : i + 1;
    o << "<line class=\"" << (g > 0 ? "pos" : "neg") << "\" x1=\"" << x(over_from) << "\" y1=\"" << y0
      << "\" x2=\"" << x(over_to) << "\" y2=\"" << y1 << "\"/>\n";
    // under strand broken around the midpoint
    const int xm = (x(under_from) + x(under_to)) / 2;
    const int dx = (x(under_to) - x(under_from)) / 4, dy = row / 4;
    o << "<line x1=\"" << x(under_from) << "\" y1=\"" << y0 << "\" x2=\"" << xm - dx << "\" y2=\"" << ym - dy
      << "\"/>\n";
    o << "<line x1=\"" << xm + dx << "\" y1=\"" << ym + dy << "\" x2=\"" << x(under_to) << "\" y2=\"" << y1
      << "\"/>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace branchfall
