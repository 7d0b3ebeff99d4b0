#pragma once

// Restricted Euler products over Q: coefficient sieves, exact partial sums of
// products of such series, the local-factor identities behind their
// asymptotics, and slope estimates from checkpointed partial sums.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nilgal/arith.hpp"

namespace nilgal {

/// Exact partial sums can exceed 64 bits for large weights.
using Count = unsigned __int128;
std::string to_string(Count c);
double to_double(Count c);

/// prod over primes p = 0, 1 mod ell of (1 + m p^{-ds}).
struct FactorSpec {
  std::uint64_t ell = 2;
  unsigned d = 1;
  std::uint64_t m = 1;
};

/// "ell:d:m". Throws InvalidInput or NotPrime.
FactorSpec parse_factor_spec(std::string_view text);
/// Comma-separated list of specs.
std::vector<FactorSpec> parse_factor_specs(std::string_view text);
std::string to_string(const FactorSpec& s);

/// p = ell or p = 1 mod ell.
bool allowed_prime(std::uint64_t p, std::uint64_t ell);

struct FactorIdentity {
  std::uint64_t m = 0;
  /// coefficients of (1 + m t)(1 - t)^m, constant term first
  std::vector<std::int64_t> coefficients;
  /// 1, 0, -C(m+1, 2), ..., (-1)^m m
  bool passed() const;
};

FactorIdentity factor_identity_check(std::uint64_t m);

inline constexpr std::uint64_t kDefaultSieveBudget = std::uint64_t{1} << 30;

/// c[n] for 0 <= n <= x: m^omega(n) when n is squarefree and all its primes
/// are allowed, else 0 (c[0] = 0). Throws BudgetExceeded when the array
/// would take more than `budget_bytes`.
std::vector<std::uint64_t> coefficient_sieve(const FactorSpec& spec, std::uint64_t x,
                                             std::uint64_t budget_bytes = kDefaultSieveBudget);

/// 1000 * 2^k below x, then x itself.
std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t x, std::uint64_t start = 1000);

struct SumSeries {
  std::vector<FactorSpec> specs;
  std::vector<std::uint64_t> checkpoints;
  std::vector<Count> values;
  /// 1/d with d = min d_i
  Rational alpha;
  /// sum of m_i / (ell_i - 1) over the specs with d_i = d
  Rational e;
  Rational beta() const { return e - 1; }
};

/// S(x) = sum of prod m_i^omega(a_i) over tuples of squarefree allowed a_i
/// with prod a_i^{d_i} <= x, at every checkpoint (sorted ascending). Exact.
/// Throws InvalidInput on an empty spec list or on 128-bit overflow.
SumSeries multi_factor_sum(const std::vector<FactorSpec>& specs, const std::vector<std::uint64_t>& checkpoints);
SumSeries multi_factor_sum(const std::vector<FactorSpec>& specs, std::uint64_t x);

struct SlopeEstimate {
  double alpha_hat = 0;
  double beta_hat = 0;
  /// least-squares intercept of log(S / x^alpha) against log log x
  double intercept = 0;
  double residual_rms = 0;
  double residual_max = 0;
  std::size_t points_used = 0;
  /// beta_hat from the checkpoints up to each one (NaN while fewer than 3)
  std::vector<double> running_beta;
};

/// alpha_hat: log-slope between the last checkpoint and the one nearest a
/// tenth of it. beta_hat: regression over the last 60% of checkpoints using
/// the predicted alpha. Needs 12 checkpoints over 4 decades, else
/// InsufficientData.
SlopeEstimate slope_estimate(const SumSeries& series);

struct EulerIdentityReport {
  FactorSpec spec;
  std::uint64_t terms = 0;
  /// primes whose local factors were compared
  std::size_t primes_checked = 0;
  bool local_factors_match = false;
  /// the assembled right-hand side against the coefficient sieve
  bool coefficients_match = false;
  /// first mismatching n (0 if none)
  std::uint64_t first_mismatch = 0;
  bool passed() const { return local_factors_match && coefficients_match; }
};

/// The decomposition f = g g_0 zeta_{Q(zeta_l)}(ds)^e prod(1 - N P^{-ds})^e
/// over Q, compared coefficient by coefficient up to `terms` in exact
/// rational arithmetic.
EulerIdentityReport euler_identity_check(const FactorSpec& spec, std::uint64_t terms);

}  // namespace nilgal
