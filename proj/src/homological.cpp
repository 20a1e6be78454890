#include "cmwitness/homological.hpp"

#include <random>

#include "cmwitness/quartic_algebra.hpp"

namespace cmwitness {

namespace {

bool is_signed_power_of_two(const Poly& p) {
  if (p.is_zero() || !p.is_constant()) return false;
  Integer c = abs(p.leading_coeff());
  return c > 1 && mpz_popcount(c.get_mpz_t()) == 1;
}

bool is_signed_member(const Poly& w, const std::vector<Poly>& gens) {
  for (const auto& g : gens)
    if (w == g || w == -g) return true;
  return false;
}

Poly constant(std::size_t n, long c) { return Poly::constant(n, Integer(c)); }

}  // namespace

bool verify_grade_certificate(const GradeCertificate& cert) {
  if (cert.lower_bound <= 0) return true;
  for (const auto& g : cert.ideal_generators)
    if (is_unit_local(g)) return true;  // unit ideal
  if (static_cast<int>(cert.witness.size()) < cert.lower_bound) return false;
  const auto& w = cert.witness;
  for (const auto& x : w)
    if (!is_signed_member(x, cert.ideal_generators)) return false;
  switch (w.size()) {
    case 1:
      return !w[0].is_zero();
    case 2:
      return is_signed_power_of_two(w[0]) && !reduce_mod2(w[1]).is_zero();
    case 3: {
      if (!is_signed_power_of_two(w[0])) return false;
      const std::size_t n = std::max(w[1].nvars(), w[2].nvars());
      return regular_sequence_certificate({constant(n, 2), w[1].with_nvars(n), w[2].with_nvars(n)});
    }
    default:
      return false;
  }
}

IResolution resolution_of_I(const S2Witness& wf, const S2Witness& wg, const Poly& f, const Poly& g) {
  const std::size_t n = f.nvars();
  const Poly& h1 = wf.h;
  const Poly& h2 = wg.h;
  if (f != h1 * h1 + Integer(2) * wf.a) throw WitnessMismatch("witness for f does not re-expand");
  if (g != h2 * h2 + Integer(2) * wg.a) throw WitnessMismatch("witness for g does not re-expand");
  if (reduce_mod2(h1).is_zero() && reduce_mod2(h2).is_zero())
    throw WitnessMismatch("h1 and h2 both vanish mod 2, so f and g both lie in 2S");

  const Poly zero = Poly::zero(n), two = constant(n, 2);
  PolyMatrix phi = zero_matrix<Integer>(4, 3, n);
  phi(1, 0) = two;
  phi(2, 1) = two;
  phi(1, 2) = h2;
  phi(2, 2) = -h1;
  PolyMatrix psi(3, 1);
  psi << -h2, h1, two;

  IResolution out;
  out.complex.maps = {phi, psi};
  out.complex.labels = {"A", "S^3", "S"};
  out.complex.resolves = FreeComplex::Resolves::ImageOfFirst;

  const AlgebraDesc alg{BaseRing{}, f, g, wf, wg};
  const KElement w = KElement::omega(n), m = KElement::mu(n), wm = KElement::omega_mu(n);
  const KElement u = wm - KElement::scalar(h1 * h2);
  const KElement v = h2 * w - h1 * m;
  bool ok = k_mul(alg, w, u) == Integer(2) * wf.a * m - h1 * v;
  ok = ok && k_mul(alg, m, u) == Integer(2) * wg.a * w + h2 * v;
  const Poly excess = f * g - h1 * h1 * h2 * h2;
  out.e = zero;
  if (all_coefficients_divisible(excess, 2)) {
    out.e = divide_by_power_of_two(excess, 2);
    ok = ok && k_mul(alg, wm, u) == -(h1 * h2) * u + KElement::scalar(Integer(4) * out.e);
  } else {
    ok = false;
  }
  out.identities_ok = ok;
  return out;
}

FreeComplex resolution_of_S_mod_Q(const Poly& z, const Poly& c, const Poly& e) {
  if (reduce_mod2(z).is_zero()) throw LiftInvalid("z must not be divisible by 2");
  const std::size_t n = std::max({z.nvars(), c.nvars(), e.nvars()});
  const Poly zero = Poly::zero(n), two = constant(n, 2);
  const Poly zc = (z * c).with_nvars(n), ze = (z * e).with_nvars(n);
  PolyMatrix psi(1, 3);
  psi << two, zc, ze;
  PolyMatrix phi(3, 3);
  phi << zc, ze, zero, -two, zero, e.with_nvars(n), zero, -two, -c.with_nvars(n);
  PolyMatrix rel(3, 1);
  rel << -e.with_nvars(n), c.with_nvars(n), -two;
  FreeComplex cx;
  cx.maps = {psi, phi, rel};
  cx.labels = {"S", "S^3", "S^3", "S"};
  cx.resolves = FreeComplex::Resolves::Cokernel;
  return cx;
}

bool check_composition_zero(const FreeComplex& cx) {
  for (std::size_t i = 0; i + 1 < cx.maps.size(); ++i) {
    if (cx.maps[i].cols() != cx.maps[i + 1].rows()) throw DimensionMismatch();
    if (!is_zero_matrix<Integer>(multiply<Integer>(cx.maps[i], cx.maps[i + 1]))) return false;
  }
  return true;
}

bool be_exactness_check(const FreeComplex& cx, const std::vector<GradeCertificate>& grades) {
  const std::size_t len = cx.maps.size();
  if (grades.size() != len) throw MissingCertificate("one grade certificate per map is required");
  std::vector<Eigen::Index> ranks;
  for (const auto& d : cx.maps) ranks.push_back(generic_rank(d));
  for (std::size_t i = 0; i < len; ++i) {
    const Eigen::Index next = i + 1 < len ? ranks[i + 1] : 0;
    if (ranks[i] + next != cx.maps[i].cols()) return false;
    GradeCertificate cert = grades[i];
    cert.ideal_generators = minors(cx.maps[i], ranks[i]);
    if (cert.lower_bound < static_cast<int>(i + 1)) return false;
    if (!verify_grade_certificate(cert)) return false;
  }
  return true;
}

std::vector<GradeCertificate> grade_certificates_for_I(const FreeComplex& cx, const Poly& h1, const Poly& h2) {
  const std::size_t n = h1.nvars();
  std::vector<GradeCertificate> out(2);
  out[0].lower_bound = 1;
  out[0].witness = {constant(n, 4)};
  out[1].lower_bound = 2;
  out[1].witness = {constant(n, 2), reduce_mod2(h1).is_zero() ? h2 : h1};
  for (std::size_t i = 0; i < 2 && i < cx.maps.size(); ++i)
    out[i].ideal_generators = minors(cx.maps[i], generic_rank(cx.maps[i]));
  return out;
}

std::vector<GradeCertificate> grade_certificates_for_Q(const FreeComplex& cx, const Poly& c, const Poly& e) {
  const std::size_t n = std::max(c.nvars(), e.nvars());
  std::vector<GradeCertificate> out(3);
  for (std::size_t i = 0; i < 3 && i < cx.maps.size(); ++i)
    out[i].ideal_generators = minors(cx.maps[i], generic_rank(cx.maps[i]));
  out[0].lower_bound = 1;
  out[0].witness = {constant(n, 2)};
  out[1].lower_bound = 2;
  out[1].witness = {constant(n, 4)};
  for (const auto& m : out[1].ideal_generators)
    if (!reduce_mod2(m).is_zero()) {
      out[1].witness.push_back(m);
      break;
    }
  out[2].lower_bound = 3;
  out[2].witness = {constant(n, 2), c.with_nvars(n), e.with_nvars(n)};
  return out;
}

namespace {

Poly content_gcd(const PolyMatrix& column) {
  Poly g = Poly::zero(column(0, 0).nvars());
  for (Eigen::Index r = 0; r < column.rows(); ++r)
    if (!column(r, 0).is_zero()) g = g.is_zero() ? column(r, 0) : gcd(g, column(r, 0));
  if (sgn(g.leading_coeff()) < 0) g = -g;
  return g;
}

PolyMatrix divide_column(const PolyMatrix& column, const Poly& d) {
  PolyMatrix out = column;
  for (Eigen::Index r = 0; r < out.rows(); ++r) out(r, 0) = divide_exact(out(r, 0), d);
  return out;
}

Integer eval_at(const Poly& p, const std::vector<Integer>& point) {
  Integer acc = 0;
  for (const auto& t : p.terms()) {
    Integer m = t.coeff;
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      Integer pw;
      mpz_pow_ui(pw.get_mpz_t(), point[i].get_mpz_t(), t.exps[i]);
      m *= pw;
    }
    acc += m;
  }
  return acc;
}

std::size_t rational_rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t r = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const mpq_class factor = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

bool kernel_saturation_check(const FreeComplex& cx) {
  if (cx.maps.size() < 2 || cx.maps[1].cols() != 1) return false;
  const auto k = generic_kernel_vector(cx.maps[0]);
  if (!k) return false;
  const PolyMatrix& d2 = cx.maps[1];
  const Poly gk = content_gcd(*k), gd = content_gcd(d2);
  if (gd.is_zero() || !is_unit_local(gd)) return false;
  const PolyMatrix a = divide_column(*k, gk), b = divide_column(d2, gd);
  PolyMatrix neg = b;
  for (Eigen::Index r = 0; r < neg.rows(); ++r) neg(r, 0) = -neg(r, 0);
  return a == b || a == neg;
}

bool kernel_spot_check(const FreeComplex& cx, unsigned seed, int points) {
  if (cx.maps.size() < 2 || cx.maps[1].cols() != 1) return false;
  const PolyMatrix& d1 = cx.maps[0];
  const PolyMatrix& d2 = cx.maps[1];
  const std::size_t n = d2(0, 0).nvars();
  std::mt19937_64 rng(seed);
  for (int t = 0; t < points; ++t) {
    std::vector<Integer> point(n);
    for (auto& x : point) x = static_cast<long>(rng() % 201) - 100;
    std::vector<std::vector<mpq_class>> m(static_cast<std::size_t>(d1.rows()),
                                          std::vector<mpq_class>(static_cast<std::size_t>(d1.cols())));
    for (Eigen::Index i = 0; i < d1.rows(); ++i)
      for (Eigen::Index j = 0; j < d1.cols(); ++j)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mpq_class(eval_at(d1(i, j), point));
    std::vector<Integer> col;
    bool nonzero = false;
    for (Eigen::Index r = 0; r < d2.rows(); ++r) {
      col.push_back(eval_at(d2(r, 0), point));
      nonzero = nonzero || sgn(col.back()) != 0;
    }
    // The kernel at the point is a line, and the column is a nonzero vector on it.
    if (rational_rank(m) + 1 != static_cast<std::size_t>(d1.cols()) || !nonzero) return false;
    for (Eigen::Index i = 0; i < d1.rows(); ++i) {
      Integer acc = 0;
      for (Eigen::Index j = 0; j < d1.cols(); ++j)
        acc += eval_at(d1(i, j), point) * col[static_cast<std::size_t>(j)];
      if (sgn(acc) != 0) return false;
    }
  }
  return true;
}

PdDepth pd_depth_report(const FreeComplex& cx, bool verified, int dimension) {
  if (!verified) throw UnverifiedComplex();
  PdDepth out;
  const int len = static_cast<int>(cx.length());
  out.pd_bound = cx.resolves == FreeComplex::Resolves::Cokernel ? len : std::max(0, len - 1);
  out.depth = dimension - out.pd_bound;
  out.minimal = true;
  const std::size_t first = cx.resolves == FreeComplex::Resolves::Cokernel ? 0 : 1;
  for (std::size_t i = first; i < cx.maps.size(); ++i)
    for (Eigen::Index r = 0; r < cx.maps[i].rows(); ++r)
      for (Eigen::Index c = 0; c < cx.maps[i].cols(); ++c)
        if (is_unit_local(cx.maps[i](r, c))) out.minimal = false;
  return out;
}

}  // namespace cmwitness
