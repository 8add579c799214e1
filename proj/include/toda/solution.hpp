#pragma once

// Classified global solutions of the SU(n+1) Toda system
//
//   Delta U_i + sum_j a_ij e^{U_j} = 0  in R^2,
//
// built from f = lambda_0 + sum_i lambda_i |P_i(z)|^2 with monic P_i of
// degree i, and e^{-U^k} = 2^{k(k-1)} det_k(f), where det_k(f) is the k x k
// Gram determinant of the mixed derivatives d_z^p d_zbar^q f.
//
// Since f^{p,q} = sum_s lambda_s P_s^{(p)} conj(P_s^{(q)}) (with P_0 = 1), the
// Gram matrix is W Lambda W^* and Cauchy-Binet gives
//
//   det_k(f) = sum_{|S| = k} lambda_S |det W_S|^2,
//
// a sum of nonnegative terms. det_k() evaluates this form; det_k_gram()
// eliminates the Gram matrix directly and is kept as an independent route.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cartan.hpp"
#include "cpoly.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace toda {

/// log of the required product lambda_0 ... lambda_n,
/// 2^{-n(n+1)} prod_{1<=i<=j<=n} (j-i+1)^{-2} = 2^{-n(n+1)} prod_{j=1}^n (j!)^{-2}.
template <class Real = double>
Real log_lambda_product_target(int n) {
  Real acc = -static_cast<Real>(n) * static_cast<Real>(n + 1) * std::log(Real(2));
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) acc -= 2 * std::log(static_cast<Real>(j - i + 1));
  return acc;
}

template <class Real>
struct NormalizedLambdas {
  std::vector<Real> lambdas;
  /// Common factor t applied to every raw lambda.
  Real scale = 1;
};

/// Rescales all lambdas by one factor so that their product hits the target.
template <class Real>
NormalizedLambdas<Real> normalize_lambdas(const std::vector<Real>& raw, int n) {
  detail::require(n >= 1, "normalize_lambdas: n must be >= 1");
  detail::require(raw.size() == static_cast<std::size_t>(n) + 1, [&] { return "normalize_lambdas: expected " + std::to_string(n + 1) + " lambdas, got " + std::to_string(raw.size()); });
  Real log_prod = 0;
  for (Real v : raw) {
    detail::require(std::isfinite(static_cast<double>(v)) && v > 0, "normalize_lambdas: lambdas must be positive and finite");
    log_prod += std::log(v);
  }
  const Real log_t = (log_lambda_product_target<Real>(n) - log_prod) / static_cast<Real>(n + 1);
  NormalizedLambdas<Real> out;
  out.scale = std::exp(log_t);
  out.lambdas.reserve(raw.size());
  for (Real v : raw) out.lambdas.push_back(std::exp(std::log(v) + log_t));
  return out;
}

template <class Real>
class BasicSolutionParams {
 public:
  using Complex = std::complex<Real>;

  /// `lambdas` holds lambda_0..lambda_n and must already satisfy the product
  /// constraint; `polys` holds P_1..P_n.
  BasicSolutionParams(int n, std::vector<Real> lambdas, std::vector<ComplexPoly<Real>> polys)
      : n_(n), lambdas_(std::move(lambdas)), polys_(std::move(polys)) {
    detail::require(n >= 1, "SolutionParams: n must be >= 1");
    cartan_ = std::make_shared<const CartanData>(n);
    validate();
    build_basis();
  }

  /// Normalizes raw lambdas and builds P_i from a coefficient map (i, j) -> c_ij.
  static BasicSolutionParams from_raw(int n, const std::vector<Real>& raw_lambdas,
                                      const std::map<std::pair<int, int>, Complex>& coeffs, Real* applied_scale = nullptr) {
    detail::require(n >= 1, "SolutionParams: n must be >= 1");
    for (const auto& [key, value] : coeffs) {
      detail::require(key.first >= 1 && key.first <= n && key.second >= 0 && key.second < key.first, [&] { return "SolutionParams: coefficient c_{" + std::to_string(key.first) + "," + std::to_string(key.second) +
                          "} out of range for n=" + std::to_string(n); });
    }
    auto norm = normalize_lambdas(raw_lambdas, n);
    if (applied_scale) *applied_scale = norm.scale;
    std::vector<ComplexPoly<Real>> polys;
    for (int i = 1; i <= n; ++i) polys.push_back(monic_from_coeffs<Real>(i, coeffs));
    return BasicSolutionParams(n, std::move(norm.lambdas), std::move(polys));
  }

  int n() const { return n_; }
  const CartanData& cartan() const { return *cartan_; }
  const std::vector<Real>& lambdas() const { return lambdas_; }
  Real lambda(int m) const {
    detail::require(m >= 0 && m <= n_, "lambda index out of range");
    return lambdas_[static_cast<std::size_t>(m)];
  }
  const std::vector<Real>& log_lambdas() const { return log_lambdas_; }
  /// P_i for 1 <= i <= n.
  const ComplexPoly<Real>& poly(int i) const {
    detail::require(i >= 1 && i <= n_, [&] { return "poly index " + std::to_string(i) + " out of range"; });
    return polys_[static_cast<std::size_t>(i - 1)];
  }
  /// c_ij, coefficient of z^j in P_i.
  Complex c(int i, int j) const {
    detail::require(i >= 1 && i <= n_ && j >= 0 && j < i, "c index out of range");
    return poly(i).coeff(j);
  }

  /// alpha_m + i beta_m = c_{n+1-m, n-m}, m = 1..n.
  Complex first_frequency_coeff(int m) const {
    detail::require(m >= 1 && m <= n_, "first-frequency index m out of range 1..n");
    return c(n_ + 1 - m, n_ - m);
  }
  /// alpha_{m,2} + i beta_{m,2} = c_{n+2-m, n-m}, m = 2..n.
  Complex second_frequency_coeff(int m) const {
    detail::require(m >= 2 && m <= n_, "second-frequency index m out of range 2..n");
    return c(n_ + 2 - m, n_ - m);
  }
  Real alpha(int m) const { return first_frequency_coeff(m).real(); }
  Real beta(int m) const { return first_frequency_coeff(m).imag(); }
  Real alpha2(int m) const { return second_frequency_coeff(m).real(); }
  Real beta2(int m) const { return second_frequency_coeff(m).imag(); }

  BasicSolutionParams with_c(int i, int j, Complex value) const {
    detail::require(i >= 1 && i <= n_ && j >= 0 && j < i, "with_c: index out of range");
    auto polys = polys_;
    std::vector<Complex> coeffs = polys[static_cast<std::size_t>(i - 1)].coeffs();
    coeffs[static_cast<std::size_t>(j)] = value;
    polys[static_cast<std::size_t>(i - 1)] = ComplexPoly<Real>(std::move(coeffs));
    return BasicSolutionParams(n_, lambdas_, std::move(polys));
  }
  BasicSolutionParams with_lambdas(std::vector<Real> lambdas) const {
    return BasicSolutionParams(n_, std::move(lambdas), polys_);
  }
  BasicSolutionParams with_polys(std::vector<ComplexPoly<Real>> polys) const {
    return BasicSolutionParams(n_, lambdas_, std::move(polys));
  }

  /// Converts the real type. Lambdas are renormalized in the target precision
  /// so the product constraint holds to that precision.
  template <class Other>
  BasicSolutionParams<Other> cast() const {
    std::vector<Other> raw;
    for (Real v : lambdas_) raw.push_back(static_cast<Other>(v));
    std::vector<ComplexPoly<Other>> polys;
    for (const auto& p : polys_) polys.push_back(p.template cast<Other>());
    return BasicSolutionParams<Other>(n_, normalize_lambdas(raw, n_).lambdas, std::move(polys));
  }

  /// P_s^{(p)} for s = 0..n (P_0 = 1) and p = 0..n.
  const ComplexPoly<Real>& basis(int s, int p) const {
    return basis_[static_cast<std::size_t>(s) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(p)];
  }

 private:
  void validate() const {
    detail::require(lambdas_.size() == static_cast<std::size_t>(n_) + 1, "SolutionParams: need n+1 lambdas");
    detail::require(polys_.size() == static_cast<std::size_t>(n_), "SolutionParams: need n polynomials");
    Real log_prod = 0;
    for (Real v : lambdas_) {
      detail::require(std::isfinite(static_cast<double>(v)) && v > 0, "SolutionParams: lambdas must be positive and finite");
      log_prod += std::log(v);
    }
    detail::require(std::abs(static_cast<double>(log_prod - log_lambda_product_target<Real>(n_))) <= 1e-12, "SolutionParams: lambda product constraint violated");
    for (int i = 1; i <= n_; ++i) {
      const auto& p = polys_[static_cast<std::size_t>(i - 1)];
      detail::require(p.degree() == i && p.coeff(i) == Complex(1), [&] { return "SolutionParams: P_" + std::to_string(i) + " must be monic of degree " + std::to_string(i); });
    }
  }

  void build_basis() {
    log_lambdas_.clear();
    for (Real v : lambdas_) log_lambdas_.push_back(std::log(v));
    basis_.clear();
    basis_.reserve(static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(n_ + 1));
    for (int s = 0; s <= n_; ++s) {
      ComplexPoly<Real> p = s == 0 ? ComplexPoly<Real>::monomial(0) : polys_[static_cast<std::size_t>(s - 1)];
      for (int d = 0; d <= n_; ++d) {
        basis_.push_back(p);
        p = derivative(p, 1);
      }
    }
  }

  int n_;
  std::vector<Real> lambdas_;
  std::vector<Real> log_lambdas_;
  std::vector<ComplexPoly<Real>> polys_;
  std::vector<ComplexPoly<Real>> basis_;
  std::shared_ptr<const CartanData> cartan_;
};

using SolutionParams = BasicSolutionParams<double>;

/// f^{p,q}(z) = d_zbar^q d_z^p f = sum_s lambda_s P_s^{(p)}(z) conj(P_s^{(q)}(z)).
template <class Real>
std::complex<Real> mixed_derivative(const BasicSolutionParams<Real>& sp, int p, int q, std::complex<Real> z) {
  detail::require(p >= 0 && q >= 0, "mixed_derivative: orders must be >= 0");
  std::complex<Real> acc(0);
  for (int s = 0; s <= sp.n(); ++s) {
    if (p > s || q > s) continue;
    const auto dp = eval(sp.basis(s, p), z);
    const auto dq = eval(sp.basis(s, q), z);
    acc += sp.lambda(s) * dp * std::conj(dq);
  }
  return acc;
}

template <class Real>
struct DetResult {
  Real log_value = 0;
  int sign = 1;
  /// Largest log term in the Cauchy-Binet sum (the factored-out scale).
  Real log_scale = 0;
};

namespace detail {

/// Equilibrated derivative table: entry(p, s) = P_s^{(p)}(z) rho^{p-s} with
/// rho = max(1, |z|), so all entries are O(1) for large |z|.
template <class Real>
struct DerivativeTable {
  int rows = 0;
  int cols = 0;
  Real log_rho = 0;
  std::vector<std::complex<Real>> scaled;

  DerivativeTable(const BasicSolutionParams<Real>& sp, int max_order, std::complex<Real> z)
      : rows(max_order + 1), cols(sp.n() + 1) {
    const Real rho = std::max(Real(1), std::abs(z));
    log_rho = std::log(rho);
    scaled.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), std::complex<Real>(0));
    const Real inv_rho = 1 / rho;
    Real col_scale = 1;  // rho^{-s}
    for (int s = 0; s < cols; ++s) {
      Real scale = col_scale;  // rho^{p-s}
      for (int p = 0; p < rows && p <= s; ++p) {
        scaled[static_cast<std::size_t>(p * cols + s)] = eval(sp.basis(s, p), z) * scale;
        scale *= rho;
      }
      col_scale *= inv_rho;
    }
  }
};

/// Visits every increasing k-subset of {0..m-1}.
template <class Visit>
void for_each_subset(int m, int k, Visit&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) idx[static_cast<std::size_t>(t)] = t;
  if (k > m) return;
  while (true) {
    visit(idx);
    int t = k - 1;
    while (t >= 0 && idx[static_cast<std::size_t>(t)] == m - k + t) --t;
    if (t < 0) return;
    ++idx[static_cast<std::size_t>(t)];
    for (int u = t + 1; u < k; ++u) idx[static_cast<std::size_t>(u)] = idx[static_cast<std::size_t>(u - 1)] + 1;
  }
}

template <class Real>
DetResult<Real> cauchy_binet_log_det(const BasicSolutionParams<Real>& sp, const DerivativeTable<Real>& table, int k) {
  std::vector<Real> terms;
  std::vector<std::complex<Real>> minor(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  const Real row_power = static_cast<Real>(k * (k - 1) / 2);
  for_each_subset(sp.n() + 1, k, [&](const std::vector<int>& subset) {
    Real log_lambda = 0;
    Real col_power = 0;
    for (int t = 0; t < k; ++t) {
      const int s = subset[static_cast<std::size_t>(t)];
      log_lambda += sp.log_lambdas()[static_cast<std::size_t>(s)];
      col_power += static_cast<Real>(s);
      for (int p = 0; p < k; ++p)
        minor[static_cast<std::size_t>(p * k + t)] = table.scaled[static_cast<std::size_t>(p * table.cols + s)];
    }
    const auto ld = log_det(minor, static_cast<std::size_t>(k));
    if (ld.singular()) return;
    const Real log_abs_w = ld.log_abs - (row_power - col_power) * table.log_rho;
    terms.push_back(log_lambda + 2 * log_abs_w);
  });
  DetResult<Real> out;
  out.log_value = log_sum_exp(terms);
  out.log_scale = terms.empty() ? out.log_value : *std::max_element(terms.begin(), terms.end());
  return out;
}

template <class Real>
std::string point_string(std::complex<Real> z) {
  std::ostringstream os;
  os.precision(17);
  os << "z=(" << static_cast<double>(z.real()) << "," << static_cast<double>(z.imag()) << ")";
  return os.str();
}

template <class Real>
void check_positive(const DetResult<Real>& d, int k, std::complex<Real> z) {
  if (!std::isfinite(static_cast<double>(d.log_value)) || d.sign <= 0)
    throw PositivityViolation("det_" + std::to_string(k) + "(f) not positive at " + point_string(z));
}

}  // namespace detail

/// det_k(f) in log form via the Cauchy-Binet expansion, 1 <= k <= n+1.
template <class Real>
DetResult<Real> det_k(const BasicSolutionParams<Real>& sp, int k, std::complex<Real> z) {
  detail::require(k >= 1 && k <= sp.n() + 1, [&] { return "det_k: k=" + std::to_string(k) + " out of range 1..n+1"; });
  const detail::DerivativeTable<Real> table(sp, k - 1, z);
  auto d = detail::cauchy_binet_log_det(sp, table, k);
  detail::check_positive(d, k, z);
  return d;
}

/// det_k(f) by pivoted elimination of the row-rescaled Gram matrix
/// (f^{p,q})_{0<=p,q<k}. Loses accuracy at large |z| through cancellation.
template <class Real>
DetResult<Real> det_k_gram(const BasicSolutionParams<Real>& sp, int k, std::complex<Real> z) {
  detail::require(k >= 1 && k <= sp.n() + 1, [&] { return "det_k_gram: k=" + std::to_string(k) + " out of range 1..n+1"; });
  std::vector<std::complex<Real>> g(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) g[static_cast<std::size_t>(p * k + q)] = mixed_derivative(sp, p, q, z);
  const auto ld = log_det(std::move(g), static_cast<std::size_t>(k));
  DetResult<Real> out;
  out.log_value = ld.log_abs;
  out.log_scale = ld.log_abs;
  // The determinant of a Hermitian matrix is real; keep only the sign.
  out.sign = ld.phase.real() > 0 ? 1 : -1;
  detail::check_positive(out, k, z);
  return out;
}

template <class Real>
struct SolutionEval {
  std::complex<Real> z;
  std::vector<Real> u_upper;    // U^1..U^n
  std::vector<Real> u_lower;    // U_1..U_n
  std::vector<Real> exp_lower;  // e^{U_1}..e^{U_n}
  std::vector<Real> log_det;    // log det_k(f), k = 1..n
  std::vector<Real> log_scale;  // per-k factored scale exponent
};

/// All solution components at z. U^k = -(k(k-1) log 2 + log det_k(f)).
template <class Real>
SolutionEval<Real> eval_all(const BasicSolutionParams<Real>& sp, std::complex<Real> z) {
  const int n = sp.n();
  const detail::DerivativeTable<Real> table(sp, n - 1, z);
  SolutionEval<Real> out;
  out.z = z;
  const Real log2 = std::log(Real(2));
  for (int k = 1; k <= n; ++k) {
    const auto d = detail::cauchy_binet_log_det(sp, table, k);
    detail::check_positive(d, k, z);
    out.log_det.push_back(d.log_value);
    out.log_scale.push_back(d.log_scale);
    out.u_upper.push_back(-(static_cast<Real>(k * (k - 1)) * log2 + d.log_value));
  }
  out.u_lower = to_lower(out.u_upper, sp.cartan());
  for (Real u : out.u_lower) out.exp_lower.push_back(std::exp(u));
  return out;
}

/// U^m alone (cheaper than eval_all when only one component is needed).
template <class Real>
Real u_upper_at(const BasicSolutionParams<Real>& sp, int m, std::complex<Real> z) {
  detail::require(m >= 1 && m <= sp.n(), "u_upper_at: component out of range");
  const auto d = det_k(sp, m, z);
  return -(static_cast<Real>(m * (m - 1)) * std::log(Real(2)) + d.log_value);
}

namespace detail {
/// Uniform double in [0, 1) from the top 53 bits; stable across platforms,
/// unlike std::uniform_real_distribution.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
}  // namespace detail

/// Deterministic pseudo-random valid parameter set. `magnitude` bounds |c_ij|
/// and |log(lambda_a / lambda_b)| / 2 before normalization.
inline SolutionParams sample_params(int n, std::uint64_t seed, double magnitude) {
  detail::require(n >= 1, "sample_params: n must be >= 1");
  detail::require(magnitude >= 0 && std::isfinite(magnitude), "sample_params: magnitude must be finite and >= 0");
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(n));
  std::vector<double> raw;
  for (int s = 0; s <= n; ++s) raw.push_back(std::exp(magnitude * (2 * detail::unit_uniform(rng) - 1)));
  std::map<std::pair<int, int>, std::complex<double>> coeffs;
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double radius = magnitude * std::sqrt(detail::unit_uniform(rng));
      const double angle = 2 * std::numbers::pi * detail::unit_uniform(rng);
      coeffs[{i, j}] = std::polar(radius, angle);
    }
  }
  return SolutionParams::from_raw(n, raw, coeffs);
}

/// Same lambdas, all c_ij = 0 (radially symmetric solution).
template <class Real>
BasicSolutionParams<Real> zero_coefficients(const BasicSolutionParams<Real>& sp) {
  std::vector<ComplexPoly<Real>> polys;
  for (int i = 1; i <= sp.n(); ++i) polys.push_back(ComplexPoly<Real>::monomial(i));
  return sp.with_polys(std::move(polys));
}

// ---------------------------------------------------------------------------
// Parameter directions of the solution family.

struct ParamDirection {
  enum class Kind { None, Alpha, Beta, Alpha2, Beta2, LambdaRatio };
  Kind kind = Kind::None;
  int index = 0;  // m for alpha/beta families, a for lambda ratio
  int other = 0;  // b for lambda ratio

  static ParamDirection none() { return {}; }
  static ParamDirection alpha(int m) { return {Kind::Alpha, m, 0}; }
  static ParamDirection beta(int m) { return {Kind::Beta, m, 0}; }
  static ParamDirection alpha2(int m) { return {Kind::Alpha2, m, 0}; }
  static ParamDirection beta2(int m) { return {Kind::Beta2, m, 0}; }
  /// log lambda_a += t, log lambda_b -= t (keeps the product fixed).
  static ParamDirection lambda_ratio(int a, int b) { return {Kind::LambdaRatio, a, b}; }

  bool is_second_frequency() const { return kind == Kind::Alpha2 || kind == Kind::Beta2; }
  bool is_first_frequency() const { return kind == Kind::Alpha || kind == Kind::Beta; }
  bool is_sine() const { return kind == Kind::Beta || kind == Kind::Beta2; }

  std::string name() const {
    switch (kind) {
      case Kind::None: return "none";
      case Kind::Alpha: return "alpha_" + std::to_string(index);
      case Kind::Beta: return "beta_" + std::to_string(index);
      case Kind::Alpha2: return "alpha2_" + std::to_string(index);
      case Kind::Beta2: return "beta2_" + std::to_string(index);
      case Kind::LambdaRatio: return "lambda_" + std::to_string(index) + "_" + std::to_string(other);
    }
    return "none";
  }

  /// Inverse of name().
  static ParamDirection parse(const std::string& s) {
    auto tail_int = [&](std::size_t pos) {
      std::size_t used = 0;
      const int v = std::stoi(s.substr(pos), &used);
      if (pos + used != s.size()) throw InvalidArgument("bad parameter direction: " + s);
      return v;
    };
    try {
      if (s == "none") return none();
      if (s.rfind("alpha2_", 0) == 0) return alpha2(tail_int(7));
      if (s.rfind("beta2_", 0) == 0) return beta2(tail_int(6));
      if (s.rfind("alpha_", 0) == 0) return alpha(tail_int(6));
      if (s.rfind("beta_", 0) == 0) return beta(tail_int(5));
      if (s.rfind("lambda_", 0) == 0) {
        const auto sep = s.find('_', 7);
        if (sep == std::string::npos) throw InvalidArgument("bad parameter direction: " + s);
        return lambda_ratio(std::stoi(s.substr(7, sep - 7)), tail_int(sep + 1));
      }
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad parameter direction: " + s);
    }
    throw InvalidArgument("bad parameter direction: " + s);
  }

  friend bool operator==(const ParamDirection&, const ParamDirection&) = default;
};

/// The 2n first-frequency and 2(n-1) second-frequency directions.
inline std::vector<ParamDirection> kernel_directions(int n) {
  std::vector<ParamDirection> out;
  for (int m = 1; m <= n; ++m) {
    out.push_back(ParamDirection::alpha(m));
    out.push_back(ParamDirection::beta(m));
  }
  for (int m = 2; m <= n; ++m) {
    out.push_back(ParamDirection::alpha2(m));
    out.push_back(ParamDirection::beta2(m));
  }
  return out;
}

inline void validate_direction(const ParamDirection& dir, int n) {
  using K = ParamDirection::Kind;
  switch (dir.kind) {
    case K::None: return;
    case K::Alpha:
    case K::Beta:
      detail::require(dir.index >= 1 && dir.index <= n, [&] { return dir.name() + " needs 1 <= m <= n=" + std::to_string(n); });
      return;
    case K::Alpha2:
    case K::Beta2:
      detail::require(dir.index >= 2 && dir.index <= n, [&] { return dir.name() + " needs 2 <= m <= n=" + std::to_string(n); });
      return;
    case K::LambdaRatio:
      detail::require(dir.index >= 0 && dir.index <= n && dir.other >= 0 && dir.other <= n && dir.index != dir.other, [&] { return dir.name() + " needs distinct lambda indices in 0..n"; });
      return;
  }
}

/// Moves the parameters by `amount` along `dir`. The result is re-validated;
/// amounts that break the normalization invariants throw InvalidArgument.
template <class Real>
BasicSolutionParams<Real> perturb(const BasicSolutionParams<Real>& sp, const ParamDirection& dir, Real amount) {
  using K = ParamDirection::Kind;
  validate_direction(dir, sp.n());
  const int n = sp.n();
  const std::complex<Real> unit = dir.is_sine() ? std::complex<Real>(0, 1) : std::complex<Real>(1, 0);
  switch (dir.kind) {
    case K::None: return sp;
    case K::Alpha:
    case K::Beta: {
      const int i = n + 1 - dir.index;
      const int j = n - dir.index;
      return sp.with_c(i, j, sp.c(i, j) + amount * unit);
    }
    case K::Alpha2:
    case K::Beta2: {
      const int i = n + 2 - dir.index;
      const int j = n - dir.index;
      return sp.with_c(i, j, sp.c(i, j) + amount * unit);
    }
    case K::LambdaRatio: {
      auto lambdas = sp.lambdas();
      lambdas[static_cast<std::size_t>(dir.index)] *= std::exp(amount);
      lambdas[static_cast<std::size_t>(dir.other)] *= std::exp(-amount);
      return sp.with_lambdas(std::move(lambdas));
    }
  }
  return sp;
}

}  // namespace toda
