#include "selectra/random.hpp"

namespace selectra {

Vec random_barycentric(Rng& rng, std::size_t n, long resolution) {
  Vec w(n);
  Rational total(0);
  for (auto& x : w) {
    x = rng.uniform(1, resolution);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

Vec random_point(Rng& rng, const SimplicialComplex& k) {
  const CellId top = rng.pick(k.maximal_cells());
  Cell cell = k.cell(top);
  if (cell.size() > 1 && rng.uniform(0, 3) == 0) {
    // Drop a random nonempty proper subset to land on a lower face.
    Cell face;
    for (VertexId v : cell) {
      if (rng.coin()) face.push_back(v);
    }
    if (!face.empty()) cell = face;
  }
  const Vec w = random_barycentric(rng, cell.size());
  Vec x(k.dim_ambient());
  for (std::size_t i = 0; i < cell.size(); ++i) x = x + w[i] * k.vertex(cell[i]);
  return x;
}

}  // namespace selectra
