#include "tdkit/spectral.hpp"

#include <set>

namespace tdkit::detail {

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> small, large;
  for (mpz_class k = 1; k * k <= n; ++k) {
    if (n % k != 0) continue;
    small.push_back(k);
    if (k * k != n) large.push_back(n / k);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rational> rational_root_candidates(const Polynomial<Rational>& p) {
  const auto& c = p.coefficients();
  if (c.empty()) return {};
  // clear denominators to get an integer polynomial with the same roots
  mpz_class lcm = 1;
  for (const Rational& x : c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.value().get_den_mpz_t());
  std::vector<mpz_class> ints;
  for (const Rational& x : c) ints.push_back(mpz_class(x.value() * lcm));

  std::set<mpq_class> roots{mpq_class(0)};
  std::size_t low = 0;
  while (low < ints.size() && ints[low] == 0) ++low;
  if (low + 1 < ints.size()) {
    for (const mpz_class& num : positive_divisors(ints[low])) {
      for (const mpz_class& den : positive_divisors(ints.back())) {
        mpq_class q(num, den);
        q.canonicalize();
        roots.insert(q);
        roots.insert(-q);
      }
    }
  }
  std::vector<Rational> out;
  for (const mpq_class& q : roots) out.emplace_back(q);
  return out;
}

}  // namespace tdkit::detail
