#pragma once

// Torsion of based chain complexes over an exact field, and the signed
// multiplicativity identity for short exact sequences of them.
//
// Every C_i carries the standard basis of F^dims[i]; a different distinguished
// basis is expressed by rebasing (see rebase()).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "splice/errors.hpp"
#include "splice/matrix.hpp"

namespace splice::torsion {

template <class F>
struct BasedComplex {
  std::vector<std::size_t> dims;              // dims[i] = dim C_i, i = 0..m; empty for the zero complex
  std::vector<Matrix<F>> boundary;            // boundary[i]: C_i -> C_{i-1}; boundary[0] is 0 x dims[0]
  std::vector<std::vector<Vec<F>>> homology;  // cycles whose classes form a basis of H_i

  int length() const { return static_cast<int>(dims.size()) - 1; }
};

/// Complex with the given dimensions, zero boundaries and no homology vectors.
template <class F>
BasedComplex<F> make_complex(std::vector<std::size_t> dims) {
  BasedComplex<F> c;
  c.dims = std::move(dims);
  for (std::size_t i = 0; i < c.dims.size(); ++i)
    c.boundary.emplace_back(i == 0 ? 0 : c.dims[i - 1], c.dims[i]);
  c.homology.resize(c.dims.size());
  return c;
}

struct Counts {
  std::vector<std::int64_t> beta;   // beta_i = sum_{r <= i} dim H_r
  std::vector<std::int64_t> gamma;  // gamma_i = sum_{r <= i} dim C_r
  std::int64_t size = 0;            // |C| = sum beta_i gamma_i
};

namespace detail {

template <class F>
std::vector<Vec<F>> image_columns(const Matrix<F>& m) {
  std::vector<Vec<F>> out;
  for (auto j : row_echelon(m).pivot_cols) out.push_back(m.column(j));
  return out;
}

template <class F>
std::size_t rank_of(std::size_t rows, const std::vector<Vec<F>>& vectors) {
  if (vectors.empty() || rows == 0) return 0;
  return rank(Matrix<F>::from_columns(rows, vectors));
}

template <class F>
bool is_cycle(const BasedComplex<F>& c, std::size_t i, const Vec<F>& v) {
  return c.boundary[i] * v == Vec<F>(c.boundary[i].rows(), F(0));
}

// Boundaries into C_i, i.e. the image of boundary[i + 1].
template <class F>
std::vector<Vec<F>> boundaries_in(const BasedComplex<F>& c, std::size_t i) {
  if (i + 1 >= c.dims.size()) return {};
  return image_columns(c.boundary[i + 1]);
}

template <class F>
std::size_t kernel_dim(const BasedComplex<F>& c, std::size_t i) {
  return c.dims[i] - rank(c.boundary[i]);
}

template <class F>
F signed_power(const F& x, int exponent_sign) {
  return exponent_sign > 0 ? x : F(1) / x;
}

}  // namespace detail

/// Throws DegenerateBasis on malformed shapes and InvalidComplex when the
/// boundary does not square to zero or the homology vectors are not a basis
/// of homology.
template <class F>
void validate(const BasedComplex<F>& c) {
  const std::size_t n = c.dims.size();
  if (c.boundary.size() != n || c.homology.size() != n)
    throw Error(ErrorKind::DegenerateBasis, "complex has " + std::to_string(n) + " degrees but " +
                                                std::to_string(c.boundary.size()) + " boundaries and " +
                                                std::to_string(c.homology.size()) + " homology lists");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t rows = i == 0 ? 0 : c.dims[i - 1];
    if (c.boundary[i].rows() != rows || c.boundary[i].cols() != c.dims[i])
      throw Error(ErrorKind::DegenerateBasis, "boundary " + std::to_string(i) + " has shape " +
                                                  std::to_string(c.boundary[i].rows()) + "x" +
                                                  std::to_string(c.boundary[i].cols()) + ", expected " +
                                                  std::to_string(rows) + "x" + std::to_string(c.dims[i]));
  }
  for (std::size_t i = 2; i < n; ++i)
    if (!(c.boundary[i - 1] * c.boundary[i]).is_zero_matrix())
      throw Error(ErrorKind::InvalidComplex, "boundary squares to a nonzero map at degree " + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& h : c.homology[i]) {
      if (h.size() != c.dims[i])
        throw Error(ErrorKind::DegenerateBasis, "homology vector of length " + std::to_string(h.size()) +
                                                    " in degree " + std::to_string(i));
      if (!detail::is_cycle(c, i, h))
        throw Error(ErrorKind::InvalidComplex, "homology vector in degree " + std::to_string(i) + " is not a cycle");
    }
    const auto im = detail::boundaries_in(c, i);
    const std::size_t betti = detail::kernel_dim(c, i) - im.size();
    if (c.homology[i].size() != betti)
      throw Error(ErrorKind::InvalidComplex, "degree " + std::to_string(i) + " has homology of dimension " +
                                                 std::to_string(betti) + " but " +
                                                 std::to_string(c.homology[i].size()) + " homology vectors");
    auto spanning = im;
    spanning.insert(spanning.end(), c.homology[i].begin(), c.homology[i].end());
    if (detail::rank_of(c.dims[i], spanning) != im.size() + betti)
      throw Error(ErrorKind::InvalidComplex,
                  "homology vectors in degree " + std::to_string(i) + " are dependent modulo boundaries");
  }
}

template <class F>
Counts counts(const BasedComplex<F>& c) {
  validate(c);
  Counts out;
  std::int64_t beta = 0;
  std::int64_t gamma = 0;
  for (std::size_t i = 0; i < c.dims.size(); ++i) {
    beta += static_cast<std::int64_t>(c.homology[i].size());
    gamma += static_cast<std::int64_t>(c.dims[i]);
    out.beta.push_back(beta);
    out.gamma.push_back(gamma);
    out.size += beta * gamma;
  }
  return out;
}

/// For each degree, cycles whose classes form a basis of homology: kernel
/// vectors taken greedily when independent of the boundaries so far.
template <class F>
std::vector<std::vector<Vec<F>>> canonical_homology(const std::vector<std::size_t>& dims,
                                                    const std::vector<Matrix<F>>& boundary) {
  std::vector<std::vector<Vec<F>>> out(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    std::vector<Vec<F>> span = i + 1 < dims.size() ? detail::image_columns(boundary[i + 1]) : std::vector<Vec<F>>{};
    for (auto& z : kernel_basis(boundary[i])) {
      span.push_back(z);
      if (detail::rank_of(dims[i], span) == span.size()) {
        out[i].push_back(std::move(z));
      } else {
        span.pop_back();
      }
    }
  }
  return out;
}

/// Coordinates of the class of cycle z in the homology basis of degree i.
template <class F>
Vec<F> homology_coordinates(const BasedComplex<F>& c, std::size_t i, const Vec<F>& z) {
  const auto& h = c.homology[i];
  if (h.empty()) return {};
  auto cols = h;
  const auto im = detail::boundaries_in(c, i);
  cols.insert(cols.end(), im.begin(), im.end());
  const auto x = solve(Matrix<F>::from_columns(c.dims[i], cols), z);
  if (!x) throw Error(ErrorKind::InvalidComplex, "vector in degree " + std::to_string(i) + " is not a cycle");
  return Vec<F>(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(h.size()));
}

/// The vectors b_i (whose boundaries form a basis of the image of
/// boundary[i]) and the homology lifts used in the defining product.
template <class F>
struct TorsionChoices {
  std::vector<std::vector<Vec<F>>> b;
  std::vector<std::vector<Vec<F>>> lifts;
};

/// b_i = standard vectors at the leftmost pivot columns of boundary[i];
/// lifts = the declared homology vectors.
template <class F>
TorsionChoices<F> default_choices(const BasedComplex<F>& c) {
  TorsionChoices<F> out;
  out.b.resize(c.dims.size());
  out.lifts = c.homology;
  for (std::size_t i = 1; i < c.dims.size(); ++i) {
    for (auto j : row_echelon(c.boundary[i]).pivot_cols) {
      Vec<F> e(c.dims[i], F(0));
      e[j] = F(1);
      out.b[i].push_back(std::move(e));
    }
  }
  return out;
}

/// tau = (-1)^|C| prod_i [d(b_{i+1}) h_i b_i / c_i]^((-1)^(i+1)) for the given
/// choices, which are checked for validity (DegenerateBasis otherwise).
template <class F>
F torsion_with_choices(const BasedComplex<F>& c, const TorsionChoices<F>& choices) {
  const Counts k = counts(c);
  const std::size_t n = c.dims.size();
  if (choices.b.size() != n || choices.lifts.size() != n)
    throw Error(ErrorKind::DegenerateBasis, "torsion choices do not match the complex length");
  for (std::size_t i = 0; i < n; ++i) {
    if (choices.lifts[i].size() != c.homology[i].size())
      throw Error(ErrorKind::DegenerateBasis, "wrong number of homology lifts in degree " + std::to_string(i));
    for (std::size_t j = 0; j < c.homology[i].size(); ++j) {
      const auto& lift = choices.lifts[i][j];
      if (lift.size() != c.dims[i] || (i > 0 && !detail::is_cycle(c, i, lift)))
        throw Error(ErrorKind::DegenerateBasis, "homology lift in degree " + std::to_string(i) + " is not a cycle");
      Vec<F> expected(c.homology[i].size(), F(0));
      expected[j] = F(1);
      if (homology_coordinates(c, i, lift) != expected)
        throw Error(ErrorKind::DegenerateBasis,
                    "homology lift in degree " + std::to_string(i) + " represents a different class");
    }
  }
  F tau(1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec<F>> cols;
    if (i + 1 < n)
      for (const auto& v : choices.b[i + 1]) cols.push_back(c.boundary[i + 1] * v);
    cols.insert(cols.end(), choices.lifts[i].begin(), choices.lifts[i].end());
    cols.insert(cols.end(), choices.b[i].begin(), choices.b[i].end());
    if (cols.size() != c.dims[i])
      throw Error(ErrorKind::DegenerateBasis, "degree " + std::to_string(i) + " collects " +
                                                  std::to_string(cols.size()) + " vectors for a space of dimension " +
                                                  std::to_string(c.dims[i]));
    if (cols.empty()) continue;
    for (const auto& v : cols)
      if (v.size() != c.dims[i]) throw Error(ErrorKind::DegenerateBasis, "choice vector of the wrong length");
    const F det = determinant(Matrix<F>::from_columns(c.dims[i], cols));
    if (is_zero(det))
      throw Error(ErrorKind::DegenerateBasis, "choices in degree " + std::to_string(i) + " do not form a basis");
    tau = tau * detail::signed_power(det, i % 2 == 1 ? 1 : -1);
  }
  return k.size % 2 == 0 ? tau : F(0) - tau;
}

template <class F>
F torsion(const BasedComplex<F>& c) {
  validate(c);
  return torsion_with_choices(c, default_choices(c));
}

/// Same complex with the distinguished basis of C_i replaced by the columns
/// of m (given in the old basis). Multiplies tau by det(m)^((-1)^i).
template <class F>
BasedComplex<F> rebase(const BasedComplex<F>& c, std::size_t i, const Matrix<F>& m) {
  if (i >= c.dims.size() || m.rows() != c.dims[i] || m.cols() != c.dims[i])
    throw Error(ErrorKind::DegenerateBasis, "rebasing matrix does not fit degree " + std::to_string(i));
  const auto inv = inverse(m);
  if (!inv) throw Error(ErrorKind::DegenerateBasis, "rebasing matrix is singular");
  BasedComplex<F> out = c;
  out.boundary[i] = c.boundary[i] * m;
  if (i + 1 < c.dims.size()) out.boundary[i + 1] = *inv * c.boundary[i + 1];
  for (auto& h : out.homology[i]) h = *inv * h;
  return out;
}

// ------------------------------------------------------- short exact sequences

/// Data generating 0 -> C' -> C -> C'' -> 0. The total boundary on
/// C'_i + C''_i is [[d', f_i], [0, d'']] with f_i = d' g_i - g_{i-1} d'' + k_i,
/// expressed in the basis c_i whose vectors are the columns of base_change[i]
/// (written in the concatenated basis c'_i c''_i).
template <class F>
struct SesWitness {
  BasedComplex<F> sub;
  BasedComplex<F> quotient;
  std::vector<Matrix<F>> glue;         // g_i: C''_i -> C'_i
  std::vector<Matrix<F>> twist;        // k_i: C''_i -> C'_{i-1} with d'k + kd'' = 0; empty for none
  std::vector<Matrix<F>> base_change;  // invertible, (dim C'_i + dim C''_i) square
  std::vector<std::vector<Vec<F>>> total_homology;  // in the basis c_i; canonical when empty
};

template <class F>
struct AssembledSes {
  BasedComplex<F> total;
  /// The acyclic complex H_m(C') -> H_m(C) -> H_m(C'') -> ... -> H_0(C''),
  /// with H_i(C'), H_i(C), H_i(C'') in degrees 3i+2, 3i+1, 3i.
  BasedComplex<F> homology_sequence;
  std::vector<Matrix<F>> off_diagonal;  // f_i, in the bases c'_{i-1} and c''_i
};

namespace detail {

[[noreturn]] inline void invalid_witness(const std::string& what) {
  throw Error(ErrorKind::InvalidWitness, what);
}

template <class F>
Matrix<F> block_upper(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& d) {
  Matrix<F> out(a.rows() + d.rows(), a.cols() + d.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) out(a.rows() + i, a.cols() + j) = d(i, j);
  return out;
}

template <class F>
Matrix<F> coordinate_columns(std::size_t rows, const std::vector<Vec<F>>& cols) {
  Matrix<F> out(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = cols[j][i];
  return out;
}

}  // namespace detail

template <class F>
AssembledSes<F> assemble_ses(const SesWitness<F>& w) {
  try {
    validate(w.sub);
    validate(w.quotient);
  } catch (const Error& e) {
    detail::invalid_witness(std::string("factor complex is invalid: ") + e.what());
  }
  const auto& cs = w.sub;
  const auto& cq = w.quotient;
  const std::size_t n = cs.dims.size();
  if (cq.dims.size() != n) detail::invalid_witness("sub and quotient complexes have different lengths");
  if (w.glue.size() != n) detail::invalid_witness("glue needs one map per degree");
  if (!w.twist.empty() && w.twist.size() != n) detail::invalid_witness("twist needs one map per degree");
  if (w.base_change.size() != n) detail::invalid_witness("base change needs one matrix per degree");

  AssembledSes<F> out;
  std::vector<std::size_t> dims(n);
  std::vector<Matrix<F>> inv_change(n);
  for (std::size_t i = 0; i < n; ++i) {
    dims[i] = cs.dims[i] + cq.dims[i];
    if (w.glue[i].rows() != cs.dims[i] || w.glue[i].cols() != cq.dims[i])
      detail::invalid_witness("glue map in degree " + std::to_string(i) + " has the wrong shape");
    if (!w.twist.empty() && i > 0 && (w.twist[i].rows() != cs.dims[i - 1] || w.twist[i].cols() != cq.dims[i]))
      detail::invalid_witness("twist map in degree " + std::to_string(i) + " has the wrong shape");
    if (w.base_change[i].rows() != dims[i] || w.base_change[i].cols() != dims[i])
      detail::invalid_witness("base change in degree " + std::to_string(i) + " has the wrong shape");
    auto inv = inverse(w.base_change[i]);
    if (!inv) detail::invalid_witness("base change in degree " + std::to_string(i) + " is singular");
    inv_change[i] = std::move(*inv);
  }

  out.off_diagonal.resize(n);
  BasedComplex<F>& total = out.total;
  total = make_complex<F>(dims);
  for (std::size_t i = 1; i < n; ++i) {
    Matrix<F> f = cs.boundary[i] * w.glue[i] - w.glue[i - 1] * cq.boundary[i];
    if (!w.twist.empty()) f = f + w.twist[i];
    const Matrix<F> d = detail::block_upper(cs.boundary[i], f, cq.boundary[i]);
    total.boundary[i] = inv_change[i - 1] * d * w.base_change[i];
    out.off_diagonal[i] = std::move(f);
  }
  for (std::size_t i = 2; i < n; ++i)
    if (!(total.boundary[i - 1] * total.boundary[i]).is_zero_matrix())
      detail::invalid_witness("assembled boundary squares to a nonzero map at degree " + std::to_string(i));
  total.homology = w.total_homology.empty() ? canonical_homology(total.dims, total.boundary) : w.total_homology;
  try {
    validate(total);
  } catch (const Error& e) {
    detail::invalid_witness(std::string("total complex is invalid: ") + e.what());
  }

  // Long exact homology sequence.
  const std::size_t len = n == 0 ? 0 : 3 * n;
  std::vector<std::size_t> hdims(len);
  for (std::size_t i = 0; i < n; ++i) {
    hdims[3 * i + 2] = cs.homology[i].size();
    hdims[3 * i + 1] = total.homology[i].size();
    hdims[3 * i] = cq.homology[i].size();
  }
  BasedComplex<F>& hs = out.homology_sequence;
  hs = make_complex<F>(hdims);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec<F>> cols;
    for (const auto& v : cs.homology[i]) {
      Vec<F> lifted(dims[i], F(0));
      for (std::size_t r = 0; r < v.size(); ++r) lifted[r] = v[r];
      cols.push_back(homology_coordinates(total, i, inv_change[i] * lifted));
    }
    hs.boundary[3 * i + 2] = detail::coordinate_columns(hdims[3 * i + 1], cols);

    cols.clear();
    for (const auto& v : total.homology[i]) {
      const Vec<F> split = w.base_change[i] * v;
      const Vec<F> tail(split.begin() + static_cast<std::ptrdiff_t>(cs.dims[i]), split.end());
      cols.push_back(homology_coordinates(cq, i, tail));
    }
    hs.boundary[3 * i + 1] = detail::coordinate_columns(hdims[3 * i], cols);

    if (i > 0) {
      cols.clear();
      for (const auto& v : cq.homology[i]) cols.push_back(homology_coordinates(cs, i - 1, out.off_diagonal[i] * v));
      hs.boundary[3 * i] = detail::coordinate_columns(hdims[3 * i - 1], cols);
    }
  }
  try {
    validate(hs);
  } catch (const Error& e) {
    detail::invalid_witness(std::string("homology sequence is not exact: ") + e.what());
  }
  return out;
}

template <class F>
struct MultiplicativityReport {
  F tau_total;
  F tau_sub;
  F tau_quotient;
  F tau_homology;
  std::int64_t mu = 0;
  std::int64_t nu = 0;
  std::vector<F> basis_dets;  // [c'_i c''_i / c_i]
  F lhs;
  F rhs;
  bool holds = false;
};

/// Both sides of tau(C) = (-1)^(mu+nu) tau(C') tau(C'') tau(H) prod_i [c'_i c''_i / c_i]^((-1)^(i+1)).
template <class F>
MultiplicativityReport<F> multiplicativity_check(const SesWitness<F>& w) {
  const AssembledSes<F> a = assemble_ses(w);
  MultiplicativityReport<F> r;
  r.tau_total = torsion(a.total);
  r.tau_sub = torsion(w.sub);
  r.tau_quotient = torsion(w.quotient);
  r.tau_homology = torsion(a.homology_sequence);
  const Counts kc = counts(a.total);
  const Counts ks = counts(w.sub);
  const Counts kq = counts(w.quotient);
  F product(1);
  for (std::size_t i = 0; i < a.total.dims.size(); ++i) {
    const std::int64_t sub_prev_beta = i == 0 ? 0 : ks.beta[i - 1];
    const std::int64_t sub_prev_gamma = i == 0 ? 0 : ks.gamma[i - 1];
    r.mu += (kc.beta[i] + 1) * (ks.beta[i] + kq.beta[i]) + sub_prev_beta * kq.beta[i];
    r.nu += kq.gamma[i] * sub_prev_gamma;
    const F det = a.total.dims[i] == 0 ? F(1) : F(1) / determinant(w.base_change[i]);
    r.basis_dets.push_back(det);
    product = product * detail::signed_power(det, i % 2 == 1 ? 1 : -1);
  }
  r.lhs = r.tau_total;
  r.rhs = r.tau_sub * r.tau_quotient * r.tau_homology * product;
  if ((r.mu + r.nu) % 2 != 0) r.rhs = F(0) - r.rhs;
  r.holds = r.lhs == r.rhs;
  return r;
}

}  // namespace splice::torsion
