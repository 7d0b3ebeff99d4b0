#include "nilgal/dirichlet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "nilgal/error.hpp"

namespace nilgal {

namespace {

using boost::multiprecision::cpp_rational;

std::uint64_t parse_u64(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::InvalidInput, std::string("bad ") + what + ": '" + std::string(s) + "'");
  return v;
}

Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::InvalidInput, "partial sums overflow 128 bits");
  return r;
}

Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::InvalidInput, "partial sums overflow 128 bits");
  return r;
}

/// Multiplicative function whose local factor at p is the product of
/// (1 + m t) over the specs that allow p; t^j is the coefficient at p^j.
class GroupSieve {
 public:
  GroupSieve(std::vector<FactorSpec> specs, std::uint64_t limit) : specs_(std::move(specs)) {
    const auto root = iroot(limit, 2);
    for (auto p : primes_up_to(static_cast<std::uint32_t>(root))) {
      primes_.push_back(p);
      std::vector<Count> poly{1};
      for (const auto& s : specs_) {
        if (!allowed_prime(p, s.ell)) continue;
        poly.push_back(0);
        for (std::size_t j = poly.size() - 1; j > 0; --j) poly[j] += poly[j - 1] * s.m;
      }
      polys_.push_back(std::move(poly));
    }
  }

  /// val[i] = h(lo + i) for lo + i < hi; requires lo >= 1 and hi - 1 <= limit.
  void segment(std::uint64_t lo, std::uint64_t hi, std::vector<Count>& val, std::vector<std::uint64_t>& prod) const {
    const std::size_t len = hi - lo;
    val.assign(len, 1);
    prod.assign(len, 1);
    for (std::size_t pi = 0; pi < primes_.size(); ++pi) {
      const std::uint64_t p = primes_[pi];
      if (p * p >= hi) break;
      const auto& poly = polys_[pi];
      const Count c1 = poly.size() > 1 ? poly[1] : 0;
      std::uint64_t n = (lo + p - 1) / p * p;
      std::uint64_t q = (n / p) % p;
      for (; n < hi; n += p) {
        const std::size_t i = n - lo;
        if (q != 0) {
          val[i] *= c1;
          prod[i] *= p;
        } else {
          std::size_t v = 1;
          std::uint64_t rest = n / p, pp = p;
          while (rest % p == 0) {
            rest /= p;
            pp *= p;
            ++v;
          }
          val[i] *= v < poly.size() ? poly[v] : 0;
          prod[i] *= pp;
        }
        if (++q == p) q = 0;
      }
    }
    for (std::size_t i = 0; i < len; ++i) {
      if (val[i] == 0) continue;
      const std::uint64_t r = (lo + i) / prod[i];
      if (r > 1) val[i] *= coeff1(r);
    }
  }

 private:
  Count coeff1(std::uint64_t q) const {
    Count c = 0;
    for (const auto& s : specs_)
      if (allowed_prime(q, s.ell)) c += s.m;
    return c;
  }

  std::vector<FactorSpec> specs_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::vector<Count>> polys_;
};

std::vector<Count> small_table(const std::vector<FactorSpec>& specs, std::uint64_t limit) {
  std::vector<Count> val;
  std::vector<std::uint64_t> prod;
  GroupSieve(specs, limit).segment(1, limit + 1, val, prod);
  val.insert(val.begin(), 0);
  return val;
}

using Series = std::vector<cpp_rational>;

Series multiply(const Series& a, const Series& b) {
  Series r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < r.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

/// (1 - u^step)^alpha truncated to degree k.
Series binomial_series(std::size_t k, std::size_t step, const cpp_rational& alpha) {
  Series r(k + 1, 0);
  cpp_rational c = 1;
  for (std::size_t j = 0; j * step <= k; ++j) {
    r[j * step] = c;
    c = c * (cpp_rational(static_cast<long long>(j)) - alpha) / cpp_rational(static_cast<long long>(j + 1));
  }
  return r;
}

std::uint64_t multiplicative_order(std::uint64_t p, std::uint64_t ell) {
  std::uint64_t x = p % ell, f = 1;
  while (x != 1) {
    x = x * (p % ell) % ell;
    ++f;
  }
  return f;
}

double regression(const std::vector<double>& u, const std::vector<double>& y, std::size_t from, std::size_t to,
                  double* intercept = nullptr) {
  const double k = static_cast<double>(to - from);
  double su = 0, sy = 0;
  for (std::size_t i = from; i < to; ++i) {
    su += u[i];
    sy += y[i];
  }
  const double mu = su / k, my = sy / k;
  double suu = 0, suy = 0;
  for (std::size_t i = from; i < to; ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suy += (u[i] - mu) * (y[i] - my);
  }
  const double slope = suu > 0 ? suy / suu : std::numeric_limits<double>::quiet_NaN();
  if (intercept) *intercept = my - slope * mu;
  return slope;
}

}  // namespace

std::string to_string(Count c) {
  if (c == 0) return "0";
  std::string s;
  while (c > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
    c /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

double to_double(Count c) { return static_cast<double>(c); }

FactorSpec parse_factor_spec(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos) throw Error(ErrorKind::InvalidInput, "factor spec must be ell:d:m");
  FactorSpec s;
  s.ell = parse_u64(text.substr(0, a), "ell");
  const auto d = parse_u64(text.substr(a + 1, b - a - 1), "d");
  s.m = parse_u64(text.substr(b + 1), "m");
  if (!is_prime(s.ell)) throw Error(ErrorKind::NotPrime, "ell must be prime");
  if (d < 1 || d > 64 || s.m < 1) throw Error(ErrorKind::InvalidInput, "d and m must be positive");
  s.d = static_cast<unsigned>(d);
  return s;
}

std::vector<FactorSpec> parse_factor_specs(std::string_view text) {
  std::vector<FactorSpec> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    out.push_back(parse_factor_spec(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

std::string to_string(const FactorSpec& s) {
  return std::to_string(s.ell) + ":" + std::to_string(s.d) + ":" + std::to_string(s.m);
}

bool allowed_prime(std::uint64_t p, std::uint64_t ell) { return p % ell == 0 || p % ell == 1; }

bool FactorIdentity::passed() const {
  const auto& c = coefficients;
  const auto mm = static_cast<std::int64_t>(m);
  return c.size() == m + 2 && c[0] == 1 && c[1] == 0 && c[m + 1] == (m % 2 ? -mm : mm) && c[2] == -(mm * (mm + 1) / 2);
}

FactorIdentity factor_identity_check(std::uint64_t m) {
  if (m < 1) throw Error(ErrorKind::InvalidInput, "m must be positive");
  // (1 - t)^m
  std::vector<__int128> base(m + 1);
  __int128 c = 1;
  for (std::uint64_t k = 0; k <= m; ++k) {
    base[k] = (k % 2 ? -c : c);
    c = c * static_cast<__int128>(m - k) / static_cast<__int128>(k + 1);
  }
  std::vector<__int128> prod(m + 2, 0);
  for (std::uint64_t k = 0; k <= m; ++k) {
    prod[k] += base[k];
    prod[k + 1] += static_cast<__int128>(m) * base[k];
  }
  while (prod.size() > 1 && prod.back() == 0) prod.pop_back();
  FactorIdentity r;
  r.m = m;
  for (auto v : prod) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
      throw Error(ErrorKind::InvalidInput, "coefficient exceeds 64 bits");
    r.coefficients.push_back(static_cast<std::int64_t>(v));
  }
  return r;
}

std::vector<std::uint64_t> coefficient_sieve(const FactorSpec& spec, std::uint64_t x, std::uint64_t budget_bytes) {
  // the sieve needs the output plus two scratch words per entry
  const long double need = static_cast<long double>(x + 1) * (sizeof(std::uint64_t) * 2 + sizeof(Count));
  if (need > static_cast<long double>(budget_bytes))
    throw Error(ErrorKind::BudgetExceeded, "coefficient array up to " + std::to_string(x) + " exceeds the memory budget");
  std::vector<std::uint64_t> out(x + 1, 0);
  if (x == 0) return out;
  const auto table = small_table({spec}, x);
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (table[n] > std::numeric_limits<std::uint64_t>::max())
      throw Error(ErrorKind::InvalidInput, "coefficient exceeds 64 bits");
    out[n] = static_cast<std::uint64_t>(table[n]);
  }
  return out;
}

std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t x, std::uint64_t start) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = start; c < x; c *= 2) out.push_back(c);
  out.push_back(x);
  return out;
}

SumSeries multi_factor_sum(const std::vector<FactorSpec>& specs, const std::vector<std::uint64_t>& checkpoints) {
  if (specs.empty()) throw Error(ErrorKind::InvalidInput, "no factor specs");
  if (checkpoints.empty() || !std::is_sorted(checkpoints.begin(), checkpoints.end()) || checkpoints.front() < 1)
    throw Error(ErrorKind::InvalidInput, "checkpoints must be positive and ascending");
  std::map<unsigned, std::vector<FactorSpec>> groups;
  for (const auto& s : specs) {
    if (!is_prime(s.ell)) throw Error(ErrorKind::NotPrime, "ell must be prime");
    if (s.d < 1 || s.m < 1) throw Error(ErrorKind::InvalidInput, "d and m must be positive");
    groups[s.d].push_back(s);
  }
  const std::uint64_t x = checkpoints.back();
  const unsigned dmin = groups.begin()->first;

  SumSeries out;
  out.specs = specs;
  out.checkpoints = checkpoints;
  out.alpha = Rational(1, dmin);
  out.e = 0;
  for (const auto& s : groups.begin()->second)
    out.e += Rational(static_cast<std::int64_t>(s.m), static_cast<std::int64_t>(s.ell - 1));

  // products r = prod k_j^{d_j} over the groups with larger d, with weights
  std::vector<std::pair<std::uint64_t, Count>> rests{{1, 1}};
  for (auto it = std::next(groups.begin()); it != groups.end(); ++it) {
    const unsigned d = it->first;
    const std::uint64_t kmax = iroot(x, d);
    const auto h = small_table(it->second, kmax);
    std::map<std::uint64_t, Count> next;
    for (const auto& [r, w] : rests)
      for (std::uint64_t k = 1; k <= kmax; ++k) {
        const std::uint64_t kd = ipow(k, d);
        if (kd > x / r) break;
        if (h[k] == 0) continue;
        auto& slot = next[r * kd];
        slot = checked_add(slot, checked_mul(w, h[k]));
      }
    rests.assign(next.begin(), next.end());
  }

  struct Query {
    std::uint64_t y;
    std::size_t checkpoint;
    Count weight;
  };
  std::vector<Query> queries;
  for (std::size_t j = 0; j < checkpoints.size(); ++j)
    for (const auto& [r, w] : rests) {
      if (r > checkpoints[j]) break;
      const std::uint64_t y = iroot(checkpoints[j] / r, dmin);
      if (y > 0) queries.push_back({y, j, w});
    }
  std::sort(queries.begin(), queries.end(), [](const Query& a, const Query& b) { return a.y < b.y; });

  out.values.assign(checkpoints.size(), 0);
  const std::uint64_t ymax = iroot(x, dmin);
  const GroupSieve sieve(groups.begin()->second, ymax);
  constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;
  std::vector<Count> val;
  std::vector<std::uint64_t> prod;
  Count running = 0;
  std::size_t qi = 0;
  for (std::uint64_t lo = 1; lo <= ymax && qi < queries.size(); lo += kSegment) {
    const std::uint64_t hi = std::min(ymax + 1, lo + kSegment);
    sieve.segment(lo, hi, val, prod);
    for (std::uint64_t n = lo; n < hi; ++n) {
      running = checked_add(running, val[n - lo]);
      while (qi < queries.size() && queries[qi].y == n) {
        auto& v = out.values[queries[qi].checkpoint];
        v = checked_add(v, checked_mul(queries[qi].weight, running));
        ++qi;
      }
    }
  }
  return out;
}

SumSeries multi_factor_sum(const std::vector<FactorSpec>& specs, std::uint64_t x) {
  return multi_factor_sum(specs, geometric_checkpoints(x));
}

SlopeEstimate slope_estimate(const SumSeries& series) {
  const auto& xs = series.checkpoints;
  const std::size_t n = xs.size();
  if (n < 12 || static_cast<double>(xs.back()) < 1e4 * static_cast<double>(xs.front()))
    throw Error(ErrorKind::InsufficientData, "slope estimates need 12 checkpoints spanning 4 decades");
  std::vector<double> logx(n), logs(n), u(n), y(n);
  const double alpha = boost::rational_cast<double>(series.alpha);
  for (std::size_t i = 0; i < n; ++i) {
    if (series.values[i] == 0) throw Error(ErrorKind::InsufficientData, "zero partial sum");
    logx[i] = std::log(static_cast<double>(xs[i]));
    logs[i] = std::log(to_double(series.values[i]));
    u[i] = std::log(logx[i]);
    y[i] = logs[i] - alpha * logx[i];
  }
  SlopeEstimate est;
  const double target = logx[n - 1] - std::log(10.0);
  std::size_t ref = 0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (std::abs(logx[i] - target) < std::abs(logx[ref] - target)) ref = i;
  est.alpha_hat = (logs[n - 1] - logs[ref]) / (logx[n - 1] - logx[ref]);

  const std::size_t from = n * 2 / 5;
  est.points_used = n - from;
  est.beta_hat = regression(u, y, from, n, &est.intercept);
  double ss = 0;
  for (std::size_t i = from; i < n; ++i) {
    const double r = y[i] - (est.intercept + est.beta_hat * u[i]);
    ss += r * r;
    est.residual_max = std::max(est.residual_max, std::abs(r));
  }
  est.residual_rms = std::sqrt(ss / static_cast<double>(n - from));
  est.running_beta.resize(n, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t lo = (j + 1) * 2 / 5;
    if (j + 1 - lo >= 3) est.running_beta[j] = regression(u, y, lo, j + 1);
  }
  return est;
}

EulerIdentityReport euler_identity_check(const FactorSpec& spec, std::uint64_t terms) {
  if (!is_prime(spec.ell)) throw Error(ErrorKind::NotPrime, "ell must be prime");
  EulerIdentityReport rep;
  rep.spec = spec;
  rep.terms = terms;
  const std::uint64_t ell = spec.ell, d = spec.d;
  const cpp_rational m(static_cast<long long>(spec.m));
  const cpp_rational e = m / cpp_rational(static_cast<long long>(ell - 1));

  const auto primes = primes_up_to(static_cast<std::uint32_t>(terms));
  std::map<std::uint64_t, Series> rhs_local;
  rep.local_factors_match = true;
  for (std::uint64_t p : primes) {
    std::size_t k = 0;
    for (std::uint64_t q = p; q <= terms; q *= p) ++k;
    const bool allowed = allowed_prime(p, ell);
    Series lhs(k + 1, 0);
    lhs[0] = 1;
    if (allowed && d <= k) lhs[d] = m;

    Series one(k + 1, 0);
    one[0] = 1;
    Series g = one, g0 = one, zeta = one, corr = one;
    if (allowed) {
      Series lin = one;
      if (d <= k) lin[d] = m;
      g = multiply(lin, binomial_series(k, d, m));
    }
    if (p == ell) {
      g0 = binomial_series(k, d, -m);
      zeta = binomial_series(k, d, -e);
      corr = binomial_series(k, d, e);
    } else {
      const std::uint64_t f = multiplicative_order(p, ell);
      const cpp_rational power = e * cpp_rational(static_cast<long long>(ell - 1)) / cpp_rational(static_cast<long long>(f));
      zeta = binomial_series(k, f * d, -power);
      if (!allowed) corr = binomial_series(k, f * d, power);
    }
    Series rhs = multiply(multiply(g, g0), multiply(zeta, corr));
    if (rhs != lhs) {
      rep.local_factors_match = false;
      if (rep.first_mismatch == 0) rep.first_mismatch = p;
    }
    ++rep.primes_checked;
    rhs_local.emplace(p, std::move(rhs));
  }

  // smallest prime factors for the multiplicative assembly
  std::vector<std::uint32_t> spf(terms + 1, 0);
  for (std::uint64_t p : primes)
    for (std::uint64_t q = p; q <= terms; q += p)
      if (spf[q] == 0) spf[q] = static_cast<std::uint32_t>(p);
  const std::uint64_t kmax = iroot(terms, static_cast<unsigned>(d));
  const auto c = coefficient_sieve(spec, kmax);
  rep.coefficients_match = true;
  for (std::uint64_t n = 1; n <= terms; ++n) {
    cpp_rational a = 1;
    for (std::uint64_t r = n; r > 1;) {
      const std::uint64_t p = spf[r];
      std::size_t v = 0;
      while (r % p == 0) {
        r /= p;
        ++v;
      }
      a *= rhs_local.at(p)[v];
      if (a == 0) break;
    }
    const std::uint64_t k = iroot(n, static_cast<unsigned>(d));
    const cpp_rational expected = ipow(k, static_cast<unsigned>(d)) == n ? cpp_rational(static_cast<unsigned long long>(c[k])) : cpp_rational(0);
    if (a != expected) {
      rep.coefficients_match = false;
      if (rep.first_mismatch == 0) rep.first_mismatch = n;
      break;
    }
  }
  return rep;
}

}  // namespace nilgal
