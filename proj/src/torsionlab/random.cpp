#include <algorithm>

#include "splice/torsion_rational.hpp"

namespace splice::torsion {

namespace {

int draw(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Matrix<Rational> random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
  Matrix<Rational> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = draw(rng, -bound, bound);
  return m;
}

Matrix<Rational> random_invertible(std::mt19937_64& rng, std::size_t n, int bound) {
  while (true) {
    Matrix<Rational> m = random_matrix(rng, n, n, bound);
    if (n == 0 || !is_zero(determinant(m))) return m;
  }
}

// Scales v to a primitive integer vector.
Vec<Rational> integral(Vec<Rational> v) {
  mpz_class lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  mpz_class g = 0;
  for (auto& x : v) {
    x *= lcm;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

// Columns spanning the cycles of C_i, as integer vectors.
Matrix<Rational> cycle_matrix(const std::vector<std::size_t>& dims, const std::vector<Matrix<Rational>>& boundary,
                              std::size_t i) {
  std::vector<Vec<Rational>> ker;
  for (auto& v : kernel_basis(boundary[i])) ker.push_back(integral(std::move(v)));
  return Matrix<Rational>::from_columns(dims[i], ker);
}

// h <- U h + d(random chains).
std::vector<Vec<Rational>> scramble_homology(std::mt19937_64& rng, const std::vector<std::size_t>& dims,
                                             const std::vector<Matrix<Rational>>& boundary,
                                             const std::vector<Vec<Rational>>& h, std::size_t i, int bound) {
  if (h.empty()) return h;
  const Matrix<Rational> u = random_invertible(rng, h.size(), bound);
  std::vector<Vec<Rational>> out;
  for (std::size_t k = 0; k < h.size(); ++k) {
    Vec<Rational> v(dims[i], 0);
    for (std::size_t j = 0; j < h.size(); ++j)
      for (std::size_t r = 0; r < dims[i]; ++r) v[r] += u(k, j) * h[j][r];
    if (i + 1 < dims.size() && coin(rng, 0.5)) {
      const Vec<Rational> shift = boundary[i + 1] * random_matrix(rng, dims[i + 1], 1, bound).column(0);
      for (std::size_t r = 0; r < dims[i]; ++r) v[r] += shift[r];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

RationalComplex random_complex_with_dims(std::mt19937_64& rng, const std::vector<std::size_t>& dims,
                                         const RandomShape& shape) {
  RationalComplex c = make_complex<Rational>(dims);
  for (std::size_t i = 1; i < dims.size(); ++i) {
    const Matrix<Rational> cycles = i == 1 ? Matrix<Rational>::identity(dims[0]) : cycle_matrix(dims, c.boundary, i - 1);
    Matrix<Rational> coeff = random_matrix(rng, cycles.cols(), dims[i], shape.entry_bound);
    if (coin(rng, 0.5)) {
      // Drop some directions so that homology shows up on both sides.
      for (std::size_t r = 0; r < coeff.rows(); ++r) {
        if (coin(rng, 0.6)) continue;
        for (std::size_t j = 0; j < coeff.cols(); ++j) coeff(r, j) = 0;
      }
    }
    c.boundary[i] = cycles * coeff;
  }
  const auto canonical = canonical_homology(c.dims, c.boundary);
  for (std::size_t i = 0; i < dims.size(); ++i)
    c.homology[i] = scramble_homology(rng, c.dims, c.boundary, canonical[i], i, shape.entry_bound);
  return c;
}

RationalComplex random_complex(std::mt19937_64& rng, const RandomShape& shape) {
  const int m = draw(rng, 0, shape.max_length);
  std::vector<std::size_t> dims;
  for (int i = 0; i <= m; ++i) dims.push_back(static_cast<std::size_t>(draw(rng, 0, shape.max_dim)));
  return random_complex_with_dims(rng, dims, shape);
}

RationalWitness random_witness(std::mt19937_64& rng, const RandomShape& shape) {
  const int m = draw(rng, 0, shape.max_length);
  std::vector<std::size_t> sub_dims;
  std::vector<std::size_t> quotient_dims;
  for (int i = 0; i <= m; ++i) {
    const int total = draw(rng, 0, shape.max_dim);
    const int sub = draw(rng, 0, total);
    sub_dims.push_back(static_cast<std::size_t>(sub));
    quotient_dims.push_back(static_cast<std::size_t>(total - sub));
  }
  RationalWitness w;
  w.sub = random_complex_with_dims(rng, sub_dims, shape);
  w.quotient = random_complex_with_dims(rng, quotient_dims, shape);
  const std::size_t n = sub_dims.size();
  w.twist.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.glue.push_back(random_matrix(rng, sub_dims[i], quotient_dims[i], shape.entry_bound));
    w.base_change.push_back(random_invertible(rng, sub_dims[i] + quotient_dims[i], shape.entry_bound));
    if (i == 0) continue;
    w.twist[i] = Matrix<Rational>(sub_dims[i - 1], quotient_dims[i]);
    if (!coin(rng, 0.7)) continue;
    // k = z l^T with z a cycle of C'_{i-1} and l vanishing on boundaries of C''_i.
    const Matrix<Rational> z = i == 1 ? Matrix<Rational>::identity(sub_dims[0])
                                      : cycle_matrix(sub_dims, w.sub.boundary, i - 1);
    const auto l = i + 1 < n ? kernel_basis(w.quotient.boundary[i + 1].transpose())
                             : kernel_basis(Matrix<Rational>(0, quotient_dims[i]));
    if (z.cols() == 0 || l.empty()) continue;
    const Vec<Rational> zc = z.column(static_cast<std::size_t>(draw(rng, 0, static_cast<int>(z.cols()) - 1)));
    const Vec<Rational> lc = integral(l[static_cast<std::size_t>(draw(rng, 0, static_cast<int>(l.size()) - 1))]);
    const int scale = draw(rng, -2, 2);
    for (std::size_t r = 0; r < zc.size(); ++r)
      for (std::size_t s = 0; s < lc.size(); ++s) w.twist[i](r, s) = scale * zc[r] * lc[s];
  }
  const RationalComplex total = assemble_ses(w).total;
  for (std::size_t i = 0; i < n; ++i)
    w.total_homology.push_back(
        scramble_homology(rng, total.dims, total.boundary, total.homology[i], i, shape.entry_bound));
  return w;
}

TorsionChoices<Rational> random_choices(std::mt19937_64& rng, const RationalComplex& c, const RandomShape& shape) {
  TorsionChoices<Rational> out = default_choices(c);
  for (std::size_t i = 1; i < c.dims.size(); ++i) {
    auto& b = out.b[i];
    if (b.empty()) continue;
    // b <- b P + K Q for invertible P and cycles K.
    const Matrix<Rational> p = random_invertible(rng, b.size(), shape.entry_bound);
    const Matrix<Rational> k = cycle_matrix(c.dims, c.boundary, i);
    const Matrix<Rational> q = random_matrix(rng, k.cols(), b.size(), shape.entry_bound);
    const Matrix<Rational> mixed = Matrix<Rational>::from_columns(c.dims[i], b) * p + k * q;
    for (std::size_t j = 0; j < b.size(); ++j) b[j] = mixed.column(j);
  }
  for (std::size_t i = 0; i + 1 < c.dims.size(); ++i) {
    for (auto& lift : out.lifts[i]) {
      const Vec<Rational> shift =
          c.boundary[i + 1] * random_matrix(rng, c.dims[i + 1], 1, shape.entry_bound).column(0);
      for (std::size_t r = 0; r < lift.size(); ++r) lift[r] += shift[r];
    }
  }
  return out;
}

}  // namespace splice::torsion
