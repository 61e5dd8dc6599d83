// Grid construction, field validation, and the weighted inner products.
//
// The quadrature weights are cell volumes on both spaces, so inner products
// reduce to volume-weighted sums; those are checked against hand-computed
// values. Field constructors must reject wrong sizes and non-finite entries,
// and binary operations must reject fields from different grids.

#include <limits>
#include <stdexcept>
#include <vector>

#include "mimwave/grid.hpp"
#include "test_util.hpp"

using namespace mimwave;

namespace {

void test_grid_construction() {
  const GridPtr g = build_grid(8, 2.0);
  CHECK_EQ(g->dims(), 1);
  CHECK_EQ(g->n_cells(0), std::size_t(8));
  CHECK_EQ(g->n_cells_total(), std::size_t(8));
  CHECK_EQ(g->n_faces_total(), std::size_t(8));  // periodic 1-D: one face per cell
  CHECK_EQ(g->spacing(0), 0.25);
  CHECK_EQ(g->cell_volume(), 0.25);
  CHECK_EQ(g->total_volume(), 2.0);
  CHECK_EQ(g->cell_center(0, 0), 0.125);
  CHECK_EQ(g->face_position(0, 0), 0.0);
  CHECK_EQ(g->cell_weights().size(), std::size_t(8));
  CHECK_EQ(g->cell_weights()[3], 0.25);
  CHECK_EQ(g->face_weights()[5], 0.25);

  const std::size_t n2[2] = {4, 3};
  const double len2[2] = {1.0, 0.6};
  const GridPtr g2 = build_grid(2, n2, len2);
  CHECK_EQ(g2->dims(), 2);
  CHECK_EQ(g2->n_cells_total(), std::size_t(12));
  CHECK_EQ(g2->n_faces_total(), std::size_t(24));  // one block per axis
  CHECK_EQ(g2->spacing(0), 0.25);
  CHECK_EQ(g2->spacing(1), 0.6 / 3.0);  // exact: spacing is length/n, not a rounded decimal
  CHECK_EQ(g2->cell_volume(), 0.25 * (0.6 / 3.0));
  // x-fastest layout
  CHECK_EQ(g2->cell_index(1, 2), std::size_t(9));
  CHECK_EQ(g2->face_index(0, 1, 2), std::size_t(9));
  CHECK_EQ(g2->face_index(1, 1, 2), std::size_t(21));

  CHECK(g->id() != g2->id());

  const std::size_t bad_n[1] = {2};
  const double len1[1] = {1.0};
  CHECK_THROWS(build_grid(1, bad_n, len1), std::invalid_argument);
  CHECK_THROWS(build_grid(3, n2, len2), std::invalid_argument);
  CHECK_THROWS(build_grid(4, 0.0), std::invalid_argument);
  CHECK_THROWS(build_grid(4, -1.0), std::invalid_argument);
}

void test_field_validation() {
  const GridPtr g = build_grid(4, 1.0);
  CHECK_THROWS(CellField(g, std::vector<double>(3, 0.0)), std::invalid_argument);
  CHECK_THROWS(FaceField(g, std::vector<double>(5, 0.0)), std::invalid_argument);

  std::vector<double> bad(4, 1.0);
  bad[2] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(CellField(g, bad), std::invalid_argument);
  bad[2] = std::numeric_limits<double>::infinity();
  CHECK_THROWS(CellField(g, bad), std::invalid_argument);

  const CellField c = CellField::constant(g, 2.0);
  CHECK_EQ(c[0], 2.0);
  CHECK_EQ(c.size(), std::size_t(4));

  const GridPtr other = build_grid(4, 1.0);  // same shape, distinct grid
  CHECK_THROWS(axpy(c, 1.0, CellField::zeros(other)), std::invalid_argument);
  CHECK_THROWS(inner_product_cells(c, CellField::zeros(other)), std::invalid_argument);
}

void test_inner_products() {
  const GridPtr g = build_grid(4, 2.0);  // cell volume 0.5
  const CellField a(g, {1.0, 2.0, 3.0, 4.0});
  const CellField b(g, {1.0, -1.0, 1.0, -1.0});
  // sum of a*b*0.5 = (1 - 2 + 3 - 4)/2 = -1
  CHECK_EQ(inner_product_cells(a, b), -1.0);
  CHECK_EQ(total_cells(a), 5.0);
  CHECK_EQ(total_abs_cells(b), 2.0);

  const FaceField v(g, {2.0, 0.0, -2.0, 1.0});
  CHECK_EQ(inner_product_faces(v, v), 4.5);
  CHECK_EQ(total_faces(v), 0.5);
  CHECK_EQ(total_abs_faces(v), 2.5);

  CHECK_EQ(max_abs(v), 2.0);
  CHECK_EQ(min_value(a), 1.0);
  CHECK_EQ(max_abs_diff(a, CellField::zeros(g)), 4.0);
}

void test_field_algebra() {
  const GridPtr g = build_grid(4, 1.0);
  const CellField a(g, {1.0, 2.0, 3.0, 4.0});
  const CellField b(g, {4.0, 3.0, 2.0, 1.0});

  const CellField s = axpy(a, 2.0, b);  // a + 2b
  CHECK_EQ(s[0], 9.0);
  CHECK_EQ(s[3], 6.0);

  const CellField m = multiply(a, b);
  CHECK_EQ(m[1], 6.0);

  const CellField q = divide(a, b);
  CHECK_EQ(q[3], 4.0);

  const CellField sc = scale(a, -0.5);
  CHECK_EQ(sc[1], -1.0);

  const CellField t = transform(a, [](double x) { return x * x; });
  CHECK_EQ(t[2], 9.0);

  // transform validates outputs: a NaN-producing map must throw
  CHECK_THROWS(transform(a, [](double x) { return std::sqrt(x - 10.0); }),
               std::invalid_argument);

  // 2-D face block access
  const std::size_t n2[2] = {3, 3};
  const double len2[2] = {1.0, 1.0};
  const GridPtr g2 = build_grid(2, n2, len2);
  std::vector<double> fv(18);
  for (std::size_t i = 0; i < 18; ++i) fv[i] = static_cast<double>(i);
  const FaceField f2(g2, fv);
  CHECK_EQ(f2.axis_values(0)[0], 0.0);
  CHECK_EQ(f2.axis_values(1)[0], 9.0);
}

}  // namespace

int main() {
  test_grid_construction();
  test_field_validation();
  test_inner_products();
  test_field_algebra();
  return testutil::summary("test_grid");
}
