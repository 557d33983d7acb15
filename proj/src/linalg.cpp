#include "tatep/linalg.hpp"

#include <utility>

namespace tatep::linalg {

std::vector<int> rref(Matrix& a, int ncols)
{
    std::vector<int> pivots;
    int rows = static_cast<int>(a.size());
    int r = 0;
    for (int c = 0; c < ncols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(a[i][c]) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        Rational inv = 1 / a[r][c];
        for (int j = c; j < ncols; ++j) a[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            Rational f = a[i][c];
            for (int j = c; j < ncols; ++j)
                if (sgn(a[r][j]) != 0) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(Matrix a, int ncols) { return static_cast<int>(rref(a, ncols).size()); }

std::optional<Vector> solve(const Matrix& a, const Vector& b, int ncols)
{
    Matrix aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) {
        aug[i].resize(ncols + 1);
        aug[i][ncols] = b[i];
    }
    auto piv = rref(aug, ncols + 1);
    if (!piv.empty() && piv.back() == ncols) return std::nullopt;
    Vector x(ncols);
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug[k][ncols];
    return x;
}

std::vector<Vector> nullspace(const Matrix& a, int ncols)
{
    Matrix m = a;
    auto piv = rref(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : piv) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(ncols);
        v[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m[k][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

Rational determinant(Matrix a)
{
    int n = static_cast<int>(a.size());
    Rational det = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (sgn(a[i][c]) != 0) {
                p = i;
                break;
            }
        if (p < 0) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (sgn(a[i][c]) == 0) continue;
            Rational f = a[i][c] / a[c][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

int affine_rank(const std::vector<Vector>& points)
{
    if (points.empty()) return -1;
    Matrix diffs;
    for (std::size_t k = 1; k < points.size(); ++k) {
        Vector d(points[0].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[k][j] - points[0][j];
        diffs.push_back(std::move(d));
    }
    if (diffs.empty()) return 0;
    return rank(diffs, static_cast<int>(points[0].size()));
}

}  // namespace tatep::linalg
