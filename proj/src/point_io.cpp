#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cechpix/errors.hpp"
#include "cechpix/io.hpp"

namespace cechpix {

PointCloud read_points(std::istream& in) {
  std::vector<double> flat;
  std::vector<std::size_t> lines;
  std::size_t dim = 0;
  std::string line, tok;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::size_t count = 0;
    while (ls >> tok) {
      double x = 0.0;
      auto r = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
        throw ValidationError("line " + std::to_string(lineno) + ": bad coordinate '" + tok + "'");
      if (!std::isfinite(x)) throw ValidationError("line " + std::to_string(lineno) + ": non-finite coordinate");
      flat.push_back(x);
      ++count;
    }
    if (count == 0) continue;
    if (dim == 0) dim = count;
    if (count != dim)
      throw ValidationError("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                            " coordinates, found " + std::to_string(count));
    lines.push_back(lineno);
  }
  if (dim == 0) throw ValidationError("no points in input");
  // Duplicate detection with line numbers.
  std::vector<std::size_t> order(lines.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto row = [&](std::size_t i) { return flat.begin() + static_cast<std::ptrdiff_t>(i * dim); };
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    return std::lexicographical_compare(row(a), row(a) + static_cast<std::ptrdiff_t>(dim), row(b),
                                        row(b) + static_cast<std::ptrdiff_t>(dim));
  });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (std::equal(row(order[i - 1]), row(order[i - 1]) + static_cast<std::ptrdiff_t>(dim), row(order[i]))) {
      auto a = std::min(lines[order[i - 1]], lines[order[i]]), b = std::max(lines[order[i - 1]], lines[order[i]]);
      throw ValidationError("line " + std::to_string(b) + ": duplicate of the point on line " + std::to_string(a));
    }
  return PointCloud(dim, std::move(flat));
}

PointCloud read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  return read_points(in);
}

}  // namespace cechpix
